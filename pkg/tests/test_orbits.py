import pytest
from hypothesis import given, strategies as st

from orbitkit import classical as cl
from orbitkit.orbits import (OrbitError, canonical_label, check_diagram, diagram_set, dynkin_cocharacter,
                             generate_all, grading_dim, is_distinguished, orbit_by_diagram, orbit_by_label,
                             orbit_dim)
from orbitkit.root_datum import build_root_datum

# (number of classes, number of distinguished classes)
COUNTS = {"G2": (5, 2), "F4": (16, 4), "E6": (21, 3), "E7": (45, 6), "E8": (70, 11),
          "B3": (7, 1), "C3": (8, 2), "D4": (12, 2), "A4": (7, 1)}


@pytest.mark.parametrize("t", sorted(COUNTS))
def test_class_counts(t):
    G = build_root_datum(t)
    orbs = generate_all(G)
    n, nd = COUNTS[t]
    assert len(orbs) == n
    assert sum(1 for o in orbs if o.even and is_distinguished(G, o.diagram)) == nd
    assert len({o.label for o in orbs}) == n


def test_g2_table():
    G = build_root_datum("G2")
    got = [(o.diagram, o.dim, o.label) for o in generate_all(G)]
    assert got == [((0, 0), 0, "0"), ((0, 1), 6, "A1"), ((1, 0), 8, "~A1"),
                   ((0, 2), 10, "G2(a1)"), ((2, 2), 12, "G2")]


def test_e8_labels():
    E8 = build_root_datum("E8")
    assert orbit_by_label(E8, "E8(a7)").diagram == (0, 0, 0, 0, 2, 0, 0, 0)
    assert orbit_by_label(E8, "E8").diagram == (2,) * 8
    assert orbit_by_label(E8, "0").dim == 0
    assert orbit_by_diagram(E8, (2,) * 8).dim == 240


def test_regular_and_minimal_dims():
    for t in ("E6", "E7", "F4", "B4"):
        G = build_root_datum(t)
        dims = sorted(o.dim for o in generate_all(G))
        assert dims[-1] == 2 * G.roots.N
        # minimal orbit dimension is 2 h^vee - 2
    assert sorted(o.dim for o in generate_all(build_root_datum("E8")))[1] == 58


def test_check_diagram_errors():
    G = build_root_datum("B2")
    with pytest.raises(OrbitError):
        check_diagram(G, (3, 0))
    with pytest.raises(OrbitError):
        check_diagram(G, (0, 0, 0))
    with pytest.raises(OrbitError):
        is_distinguished(G, (0, 1))


def test_canonical_label_is_idempotent():
    for o in generate_all(build_root_datum("F4")):
        assert canonical_label(canonical_label(o.label)) == canonical_label(o.label)


@pytest.mark.parametrize("fam,n", [("A", 4), ("B", 4), ("C", 4), ("D", 5)])
def test_dims_match_partition_formula(fam, n):
    G = build_root_datum(f"{fam}{n}")
    for mu in cl.partition_family(fam, n):
        for d in cl.diagrams_from_partition(mu, fam):
            assert orbit_dim(G, d) == cl.classical_orbit_dim(mu, fam)


@st.composite
def generated_orbit(draw):
    t = draw(st.sampled_from(["A3", "B3", "C3", "D4", "G2", "F4", "B4", "C4"]))
    G = build_root_datum(t)
    return G, draw(st.sampled_from(generate_all(G)))


@given(generated_orbit())
def test_grading_is_symmetric(go):
    G, o = go
    lam = dynkin_cocharacter(G, o.diagram)
    top = 2 * sum(G.roots.highest_root)
    dims = [grading_dim(G, lam, i) for i in range(-top, top + 1)]
    assert dims == dims[::-1]
    assert sum(dims) == 2 * G.roots.N + G.rank


@given(generated_orbit())
def test_dim_is_even_and_parity(go):
    G, o = go
    assert o.dim % 2 == 0
    assert o.even == all(x != 1 for x in o.diagram)
    # sl2 theory: dim g(1) is even, and g(i) -> g(i+2) is injective for i >= 0
    lam = dynkin_cocharacter(G, o.diagram)
    assert grading_dim(G, lam, 1) % 2 == 0
    assert grading_dim(G, lam, 0) >= grading_dim(G, lam, 2) >= grading_dim(G, lam, 4)


def test_diagram_set_matches_generate_all():
    G = build_root_datum("C4")
    assert diagram_set(G) == {o.diagram for o in generate_all(G)}
