import pytest
from hypothesis import given, strategies as st

from orbitkit.fusion import FusionError, fuse, fuse_class_spec, fuse_trace
from orbitkit.orbits import generate_all, orbit_by_diagram
from orbitkit.root_datum import (build_root_datum, same_type, format_root, levi_subsystem, parse_root,
                                 pseudo_levi_from_subset, subsystem_from_roots)


def test_b2_worked_example():
    G = build_root_datum("B2")
    sub = subsystem_from_roots(G, [parse_root(G, "10"), parse_root(G, "-12")])
    tr = fuse_trace(G, sub, (2, 2))
    assert tr.C == [[2, 0], [0, 2]]
    assert tr.A == [[1, 0], [-1, -1]]
    assert tr.D == [[2, -1], [-2, 2]]
    assert list(tr.f_positive) == [2, -2, 0, -2]
    assert tr.w.word == (1, 0)
    assert sorted(format_root(v) for v in tr.inversions) == ["01", "12"]
    assert list(tr.f_w_positive) == [2, 0, 2, 2]
    assert tr.diagram == (2, 0)
    assert orbit_by_diagram(G, tr.diagram).label == "~A1"


def test_e8_signed_subset():
    E8 = build_root_datum("E8")
    d = fuse_class_spec(E8, "0,2,3,-4,5,6,7,8")
    assert orbit_by_diagram(E8, d).label == "E8(a5)"


def test_whole_group_is_identity():
    for t in ("B3", "G2", "F4"):
        G = build_root_datum(t)
        full = levi_subsystem(G, range(G.rank))
        for o in generate_all(G):
            assert fuse(G, full, o.diagram) == o.diagram


def test_bad_diagram_rejected():
    G = build_root_datum("B2")
    sub = levi_subsystem(G, [0])
    with pytest.raises(Exception):
        fuse(G, sub, (3,))


@st.composite
def levi_and_class(draw):
    t = draw(st.sampled_from(["A4", "B3", "C3", "D4", "F4", "E6"]))
    G = build_root_datum(t)
    J = draw(st.lists(st.integers(0, G.rank - 1), min_size=1, max_size=G.rank, unique=True))
    sub = levi_subsystem(G, sorted(J))
    o = draw(st.sampled_from(generate_all(sub.datum)))
    return G, sub, o


@given(levi_and_class())
def test_levi_fusion_preserves_inclusion(gso):
    G, sub, o = gso
    d = fuse(G, sub, o.diagram)
    amb = orbit_by_diagram(G, d)
    assert amb.dim >= o.dim
    assert (o.dim == 0) == (amb.dim == 0)


@given(levi_and_class())
def test_regular_class_of_levi_has_that_levi(gso):
    G, sub, _ = gso
    reg = max(generate_all(sub.datum), key=lambda o: o.dim)
    amb = orbit_by_diagram(G, fuse(G, sub, reg.diagram))
    J, dJ = amb.bala_carter
    assert all(x == 2 for x in dJ)
    assert same_type(levi_subsystem(G, J).cartan_type, sub.cartan_type)
