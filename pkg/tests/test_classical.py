import pytest
from hypothesis import given, strategies as st

from orbitkit import classical as cl
from orbitkit.orbits import diagram_set
from orbitkit.root_datum import build_root_datum


def p_eps_oracle(eps, N):
    return [mu for mu in cl.all_partitions(N)
            if all(mu.count(m) % 2 == 0 for m in set(mu) if (-1) ** m == eps)]


def test_small_sets():
    assert cl.P(1, 5) == ((5,), (3, 1, 1), (2, 2, 1), (1, 1, 1, 1, 1))
    assert len(cl.P(-1, 8)) == 14
    assert len(cl.P(1, 8)) == 10  # D4 has 12 classes: two very even partitions


@pytest.mark.parametrize("eps", [1, -1])
@pytest.mark.parametrize("N", range(1, 15))
def test_P_against_filter(eps, N):
    assert sorted(cl.P(eps, N)) == sorted(p_eps_oracle(eps, N))


def test_parse_and_format():
    assert cl.parse_partition("4,2,2") == (4, 2, 2)
    assert cl.format_partition((4, 2, 2, 1, 1)) == "42^21^2"
    with pytest.raises(cl.PartitionError):
        cl.diagram_from_partition((2, 1), "B")


def test_very_even():
    assert cl.is_very_even((4, 4, 2, 2))
    assert not cl.is_very_even((3, 3, 1, 1))
    assert len(cl.diagrams_from_partition((2, 2, 2, 2), "D")) == 2
    assert sorted(cl.diagrams_from_partition((2, 2, 2, 2), "D")) == [(0, 0, 0, 2), (0, 0, 2, 0)]


@pytest.mark.parametrize("fam,n", [("B", 5), ("C", 5), ("D", 5), ("D", 6)])
def test_diagrams_match_orbit_generation(fam, n):
    assert cl.classical_diagram_set(fam, n) == diagram_set(build_root_datum(f"{fam}{n}"))


def test_index_sets_and_ranks():
    ix = cl.index_set((4, 2, 2), -1)
    assert ix.I == (2, 4) and ix.I_odd == (4,) and ix.I_ev == (2,)
    assert cl.component_group_rank((4, 2, 2), -1) == 2
    assert cl.component_group_rank((5, 3, 1), 1) == 2
    assert cl.component_group_rank((7,), 1) == 0


def test_canonical_quotients():
    # the symplectic covering group is all of A(u)
    assert cl.canonical_quotient_spec((8,), -1).abar_rank == 1
    assert cl.canonical_quotient_spec((4, 2, 2), -1).abar_rank == 2
    assert cl.canonical_quotient_spec((5, 3, 1), 1).abar_rank == 1
    with pytest.raises(cl.PartitionError):
        cl.canonical_quotient_spec((2, 2, 1, 1, 1), 1)


def test_specials_in_B3():
    assert [mu for mu in cl.P(1, 7) if cl.is_special(mu, "B")] == [
        (7,), (5, 1, 1), (3, 3, 1), (3, 2, 2), (3, 1, 1, 1, 1), (1,) * 7]


# ---- properties --------------------------------------------------------------

@st.composite
def partition(draw, max_n=14):
    N = draw(st.integers(1, max_n))
    return N, draw(st.sampled_from(cl.all_partitions(N)))


@given(partition(), st.sampled_from(["B", "C", "D"]))
def test_collapse_against_bruteforce(Nmu, fam):
    N, mu = Nmu
    if (fam == "B") != (N % 2 == 1):
        return
    c = cl.collapse(mu, fam)
    assert c == cl.collapse_bruteforce(mu, fam)
    assert cl.in_P(c, cl.FAMILIES[fam][0])
    assert cl.dominance_leq(c, mu)


@given(partition())
def test_transpose_is_involution(Nmu):
    _, mu = Nmu
    assert cl.transpose(cl.transpose(mu)) == mu


@given(st.integers(2, 14), st.sampled_from(["B", "C", "D"]))
def test_duality_on_specials(N, fam):
    if (fam == "B") != (N % 2 == 1):
        return
    eps = cl.FAMILIES[fam][0]
    specials = [mu for mu in cl.P(eps, N) if cl.is_special(mu, fam)]
    # order reversing on specials of type D (self-dual family)
    if fam == "D":
        for mu in specials:
            assert cl.ls_dual(cl.ls_dual(mu, "D"), "D") == mu
    for a in specials:
        for b in specials:
            if cl.dominance_leq(a, b):
                assert cl.dominance_leq(cl.ls_dual(b, fam), cl.ls_dual(a, fam))


@given(st.integers(1, 12).map(lambda k: 2 * k), st.data())
def test_sp_covering_rank_is_component_rank(N, data):
    mu = data.draw(st.sampled_from(cl.P(-1, N)))
    spec = cl.canonical_quotient_spec(mu, -1)
    assert len(spec.generators) == cl.component_group_rank(mu, -1)
