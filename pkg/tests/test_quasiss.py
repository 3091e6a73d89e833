from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from orbitkit import quasiss as qs
from orbitkit.fusion import fuse
from orbitkit.orbits import generate_all, orbit_by_diagram
from orbitkit.root_datum import build_root_datum, coweight_from_spec, format_root, same_type

E6 = build_root_datum("E6")


@pytest.fixture(scope="module")
def triality():
    return qs.make_action(E6, "2,3,4,5", "triality")


def test_triality_orbits(triality):
    got = [sorted(format_root(v) for v in o.local) for o in triality.orbits]
    assert got == [["0001", "0100", "1000"], ["0010"], ["0011", "0110", "1010"],
                   ["0111", "1011", "1110"], ["1111"], ["1121"]]
    assert triality.order == 3
    assert not any(o.special for o in triality.orbits)


def test_triality_fixed_and_twisted(triality):
    fs = qs.fixed_subsystem(triality)
    assert fs.type_label == "G2"
    assert [o.index for o in fs.simple if fs.is_short(o)] == [1]
    qs.check_root_system(fs)
    assert qs.quasi_central_check(triality)
    assert qs.centralizer_order(triality) == 12
    ts = qs.twisted_subsystem(triality, coweight_from_spec(E6, "w4:1/3"))
    assert ts.indices == [1, 3, 4] and ts.type_label == "A2"
    assert [o.index for o in ts.simple] == [1, 3]
    qs.check_root_system(ts)
    assert qs.non_closed_witnesses(fs, ts) == [(1, 4, 5), (3, 4, 6)]


def test_triality_fusion_into_m_and_g(triality):
    fs = qs.fixed_subsystem(triality)
    got = {}
    for o in generate_all(fs.sub_M.datum):
        dM = fuse(triality.M, fs.sub_M, o.diagram)
        got[o.diagram] = (orbit_by_diagram(triality.M, dM).label, orbit_by_diagram(E6, fuse(E6, fs.sub_G, o.diagram)).label)
    assert got == {(0, 0): ("0", "0"), (0, 1): ("A1", "A1"), (1, 0): ("3A1", "3A1"),
                   (0, 2): ("A2", "A2"), (2, 2): ("D4", "D4")}


def test_not_stabilising_pi():
    with pytest.raises(qs.QuasiError):
        qs.make_action(E6, "2,3,4,5", "word:1")


def test_special_orbit_needs_sign():
    E8 = build_root_datum("E8")
    pi = "1,3,4,2,5,6 | 8,23465431"
    t0 = coweight_from_spec(E8, "w3:1/2,w5:1/2")
    with pytest.raises(qs.QuasiError):
        qs.make_action(E8, pi, "longest", torus_part=t0).orbits
    a = qs.make_action(E8, pi, "longest", torus_part=t0, signs="8:1")
    assert [o.index for o in a.orbits if o.special] == [5]
    fs = qs.fixed_subsystem(a)
    assert same_type(fs.cartan_type, "F4+A1")
    ts = qs.twisted_subsystem(a, coweight_from_spec(E8, "w2:1/2,w7:1/2"))
    assert same_type(ts.cartan_type, "C4+A1")
    assert [o.index for o in ts.simple] == [1, 2, 3, 5, 11]


def test_twist_must_be_fixed(triality):
    with pytest.raises(qs.QuasiError):
        qs.twisted_subsystem(triality, coweight_from_spec(E6, "w2:1/3"))


def test_parse_helpers():
    assert qs.parse_pi(E6, "2,3 | 4") == [(0, 1, 0, 0, 0, 0), (0, 0, 1, 0, 0, 0), (0, 0, 0, 1, 0, 0)]
    assert qs.parse_signs(E6, "2:1") == {(0, 1, 0, 0, 0, 0): 1}
    assert qs.parse_signs(E6, None) == {}


# ---- properties --------------------------------------------------------------

# every triality-fixed twist with denominator 6 has this shape
fixed_twists = st.tuples(st.integers(0, 5), st.integers(0, 5), st.integers(0, 2)).map(
    lambda abc: f"w1:{abc[0]}/6,w6:{abc[0]}/6,w2:{abc[1]}/6,w3:{abc[1]}/6,w5:{abc[1]}/6,"
                f"w4:{(abc[0] + 2 * abc[2]) % 6}/6")


@given(fixed_twists)
def test_twisted_systems_are_root_systems(spec):
    a = qs.make_action(E6, "2,3,4,5", "triality")
    t = coweight_from_spec(E6, spec)
    assert a.w_fixes(t)
    ts = qs.twisted_subsystem(a, t)
    qs.check_root_system(ts)
    for o in generate_all(ts.sub_M.datum) if ts.indices else []:
        d = fuse(a.M, ts.sub_M, o.diagram)
        # the image diagram is stable under the triality of M: outer nodes agree
        assert d[0] == d[1] == d[3]


@pytest.mark.parametrize("t,pi,w", [("E6", "1,3,4,5,6", "longest"), ("D4", "1,3,4", "longest"),
                                    ("E8", "2,3,4,5", "triality"), ("F4", "1,2,1242,4", "longest")])
def test_orbits_partition_the_positive_roots(t, pi, w):
    G = build_root_datum(t)
    a = qs.make_action(G, pi, w)
    roots = [v for o in a.orbits for v in o.local]
    assert len(roots) == len(set(roots)) == len(a.positive)
    for o in a.orbits:
        assert a.order % o.size == 0
        assert {a.apply(v) for v in o.roots} <= set(o.roots) | {tuple(-x for x in v) for v in o.roots}
