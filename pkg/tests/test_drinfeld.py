import numpy as np
import pytest
from hypothesis import given, strategies as st

from orbitkit import drinfeld as dr

MSET_SIZES = {"Z2": 4, "Z2^2": 16, "Z2^3": 64, "Z3": 9, "Z4": 16, "S3": 8, "Dih8": 22, "S4": 21, "S5": 39}

# the entries of the S3 matrix in M(S3) order: [1,1], [1,sgn], [1,r], [g2,1], [g2,eps], [g3,1], [g3,th], [g3,th^2]
S3_FOURIER = [
    ["1/6", "1/6", "1/3", "1/2", "1/2", "1/3", "1/3", "1/3"],
    ["1/6", "1/6", "1/3", "-1/2", "-1/2", "1/3", "1/3", "1/3"],
    ["1/3", "1/3", "2/3", "0", "0", "-1/3", "-1/3", "-1/3"],
    ["1/2", "-1/2", "0", "1/2", "-1/2", "0", "0", "0"],
    ["1/2", "-1/2", "0", "-1/2", "1/2", "0", "0", "0"],
    ["1/3", "1/3", "-1/3", "0", "0", "2/3", "-1/3", "-1/3"],
    ["1/3", "1/3", "-1/3", "0", "0", "-1/3", "2/3", "-1/3"],
    ["1/3", "1/3", "-1/3", "0", "0", "-1/3", "-1/3", "2/3"],
]


@pytest.mark.parametrize("name", dr.STANDARD_GROUPS)
def test_fourier_suite(name):
    G = dr.named_group(name)
    F = dr.fourier_matrix(G)
    assert len(F.mset) == MSET_SIZES[name]
    assert dr.is_unitary(F)
    assert dr.is_involution(F)
    assert dr.mellin_check(G, F)


@pytest.mark.parametrize("name", dr.STANDARD_GROUPS)
def test_character_tables(name):
    G = dr.named_group(name)
    T = G.table
    dr.check_orthogonality(T)  # raises on failure
    assert T.n == len(G.classes.reps)


def test_s3_matrix():
    assert dr.fourier_matrix(dr.named_group("S3")).formatted() == S3_FOURIER


def test_z2_matrix():
    F = dr.fourier_matrix(dr.named_group("Z2"))
    assert F.formatted() == [["1/2", "1/2", "1/2", "1/2"], ["1/2", "1/2", "-1/2", "-1/2"],
                             ["1/2", "-1/2", "1/2", "-1/2"], ["1/2", "-1/2", "-1/2", "1/2"]]
    assert F.is_real()


def test_z3_is_not_real():
    F = dr.fourier_matrix(dr.named_group("Z3"))
    assert not F.is_real()
    assert F.K.e == 3


def test_s4_table():
    T = dr.named_group("S4").table
    assert sorted(T.rational_rows()) == sorted([[1, 1, 1, 1, 1], [1, -1, 1, 1, -1], [2, 0, 2, -1, 0],
                                                [3, -1, -1, 0, 1], [3, 1, -1, 0, -1]])


@pytest.mark.parametrize("n", [3, 4, 5])
def test_symmetric_groups_against_murnaghan_nakayama(n):
    assert dr.check_against_mn(dr.named_group(f"S{n}").table, n)


def test_names_case_insensitive_and_errors():
    assert dr.named_group("dih8").order == 8
    assert dr.named_group("s3").order == 6
    with pytest.raises(dr.GroupError):
        dr.named_group("Q1000")


def test_permutation_helpers():
    p = dr.parse_cycles("(0,1,2)(3,4)", 5)
    assert dr.perm_order(p) == 6
    assert dr.cycle_type(p) == (3, 2)
    assert dr.perm_mul(p, dr.perm_inv(p)) == tuple(range(5))


@given(st.sampled_from(["Z4", "S3", "Dih8", "S4"]), st.data())
def test_fourier_pairing_hermitian(name, data):
    # swapping the arguments of the pairing conjugates it
    G = dr.named_group(name)
    F = dr.fourier_matrix(G)
    i = data.draw(st.integers(0, F.n - 1))
    j = data.draw(st.integers(0, F.n - 1))
    assert np.array_equal(F.numer[j, i], F.K.conj(F.numer[i, j]))


@given(st.lists(st.sampled_from([(0, 1, 2), (1, 0, 2), (1, 2, 0), (2, 0, 1)]), min_size=1, max_size=3))
def test_from_elements_closes(gens):
    G = dr.FiniteGroup.from_elements(3, gens)
    assert G.order in (1, 2, 3, 6)
    assert 6 % G.order == 0
