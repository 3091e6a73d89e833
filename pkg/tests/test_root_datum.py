from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from orbitkit.root_datum import (RootDatumError, act, bad_primes, build_root_datum, compose, coroot_lattice_quotient,
                                 coweight_from_spec, datum_from_cartan, element_with_inversions, format_root,
                                 from_word, hermite_normal_form, inverse, inversion_set, is_pretty_good,
                                 isolated_centralizer_subsystem, length, longest_element, parse_cartan_type,
                                 parse_root, rho_permutation, root_lattice_quotient, same_type, smith_normal_form,
                                 weyl_order_of_type)

# (|Phi+|, |W|, highest root, centre of the simply connected group)
KNOWN = {
    "A1": (1, 2, (1,), (2,)),
    "A3": (6, 24, (1, 1, 1), (4,)),
    "B3": (9, 48, (1, 2, 2), (2,)),
    "C3": (9, 48, (2, 2, 1), (2,)),
    "D4": (12, 192, (1, 2, 1, 1), (2, 2)),
    "G2": (6, 12, (3, 2), ()),
    "F4": (24, 1152, (2, 3, 4, 2), ()),
    "E6": (36, 51840, (1, 2, 2, 3, 2, 1), (3,)),
    "E7": (63, 2903040, (2, 2, 3, 4, 3, 2, 1), (2,)),
    "E8": (120, 696729600, (2, 3, 4, 6, 5, 4, 3, 2), ()),
}

SMALL = ["A2", "B2", "G2", "A3", "B3", "C3", "D4", "F4"]


@pytest.mark.parametrize("t", sorted(KNOWN))
def test_root_counts_and_centres(t):
    npos, W, high, centre = KNOWN[t]
    G = build_root_datum(t)
    assert G.roots.N == npos
    assert weyl_order_of_type(parse_cartan_type(t)) == W
    assert G.roots.highest_root == high
    assert root_lattice_quotient(build_root_datum(t, "simply_connected")).torsion == centre
    assert coroot_lattice_quotient(G).torsion == centre


def test_cartan_conventions():
    # cartan[i][j] = <alpha_i^vee, alpha_j>; alpha_1 is long in B2 and short in G2
    assert build_root_datum("B2").cartan == [[2, -1], [-2, 2]]
    assert build_root_datum("G2").cartan == [[2, -3], [-1, 2]]
    assert build_root_datum("F4").cartan[2][1] == -2


def test_parse_and_errors():
    assert parse_cartan_type("2a1+b3") == (("A", 1), ("A", 1), ("B", 3))
    with pytest.raises(RootDatumError):
        parse_cartan_type("E9")
    with pytest.raises(RootDatumError):
        build_root_datum("A2", "weird")
    assert same_type("B2", "C2")
    assert same_type("A1+A3", "A3+A1")


def test_parse_root_tokens():
    G = build_root_datum("F4")
    assert format_root(parse_root(G, "1242")) == "1242"
    assert parse_root(G, "-2") == (0, -1, 0, 0)
    assert parse_root(G, "0") == tuple(-x for x in G.roots.highest_root)


def test_rho_permutations():
    assert rho_permutation(build_root_datum("A4").roots) == [3, 2, 1, 0]
    assert rho_permutation(build_root_datum("E6").roots) == [5, 1, 4, 3, 2, 0]
    assert rho_permutation(build_root_datum("D5").roots) == [0, 1, 2, 4, 3]
    assert rho_permutation(build_root_datum("E7").roots) == list(range(7))


def test_longest_element_length():
    for t in SMALL:
        rs = build_root_datum(t).roots
        assert length(rs, longest_element(rs)) == rs.N


def test_smith_and_hermite():
    q = smith_normal_form([[2, 4], [6, 8]])
    assert q.torsion == (2, 4)
    assert hermite_normal_form([[2, 4], [6, 8]]) == hermite_normal_form([[2, 0], [0, 4]])


def test_bad_primes_and_pretty_good():
    assert bad_primes("A5") == set() and bad_primes("C4") == {2} and bad_primes("E8") == {2, 3, 5}
    # p divides the centre of SL_p: good but not pretty good
    assert not is_pretty_good(build_root_datum("A2", "simply_connected"), 3)
    assert is_pretty_good(build_root_datum("A2", "simply_connected"), 2)
    assert not is_pretty_good(build_root_datum("G2"), 3)


def test_isolated_examples():
    F4 = build_root_datum("F4")
    s = isolated_centralizer_subsystem(F4, coweight_from_spec(F4, "w3:1/4"))
    assert same_type(s.cartan_type, "A3+A1")
    E8 = build_root_datum("E8")
    s = isolated_centralizer_subsystem(E8, coweight_from_spec(E8, "w7:1/3"))
    assert "23465431" in {format_root(v) for v in s.simple_roots}


def test_datum_from_cartan_keeps_order():
    G = datum_from_cartan([[2, -1, 0], [-1, 2, -1], [0, -1, 2]])
    assert G.cartan == build_root_datum("A3").cartan
    assert G.roots.N == 6


# ---- properties --------------------------------------------------------------

def words(rank):
    return st.lists(st.integers(0, rank - 1), max_size=12)


@st.composite
def typed_word(draw):
    t = draw(st.sampled_from(SMALL))
    G = build_root_datum(t)
    return G, draw(words(G.rank))


@given(typed_word())
def test_length_is_inversion_count(gw):
    G, w = gw
    rs = G.roots
    x = from_word(rs, w)
    assert length(rs, x) == len(inversion_set(rs, x)) <= len(w)
    assert length(rs, x) % 2 == len(w) % 2


@given(typed_word(), typed_word())
def test_group_laws(gw, _):
    G, w = gw
    rs = G.roots
    x = from_word(rs, w)
    e = from_word(rs, ())
    assert compose(x, inverse(x)) == e
    assert from_word(rs, list(w) + list(reversed(w))) == e


@given(typed_word())
def test_action_is_isometry(gw):
    G, w = gw
    rs = G.roots
    x = from_word(rs, w)
    for v in rs.positive[:5]:
        image = act(rs, x, v, "root")
        assert tuple(int(c) for c in image) in rs.index
        assert rs.root_length(image) == rs.root_length(v)


@st.composite
def linear_form(draw):
    t = draw(st.sampled_from(SMALL))
    G = build_root_datum(t)
    return G, draw(st.lists(st.integers(-3, 3), min_size=G.rank, max_size=G.rank))


@given(linear_form())
def test_dominance_algorithm(gf):
    G, f = gf
    rs = G.roots
    w, fw = element_with_inversions(rs, f)
    assert all(x >= 0 for x in fw)
    # inversions of w are exactly the positive roots on which f is negative
    neg = sorted(k for k, v in enumerate(rs.positive) if sum(a * b for a, b in zip(v, f)) < 0)
    assert sorted(inversion_set(rs, w)) == neg
    # f o w agrees with f evaluated on w(alpha_j)
    for j in range(G.rank):
        img = rs.all[w.perm[j]]
        assert fw[j] == sum(Fraction(a) * b for a, b in zip(img, f))
