"""Embedded family tables and affine diagrams, with their verification harness.

Rows are loaded from ``data/tables/table{1,2,3}.json``; the directory can be
redirected with the ``ORBITKIT_DATA`` environment variable.  Checks:

* ``verify_fusion_rows``: the class of the distinguished element of L_J
  encoded by the signed subset J fuses to the labelled class O_F;
* ``verify_center_orders``: torsion of X / Z Psi_J (nontrivial for the first
  table, exactly 4 for the second);
* ``verify_duality_pairs``: O_F -> O_F* is an involution on the listed rows.

The worked constructions for the non-abelian quotients are the
``scenario_*`` functions.
"""
from __future__ import annotations

import json
import os
import re
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path

from . import quasiss as qs
from .classical import diagrams_from_partition, parse_partition
from .fusion import FusionError, fuse, fuse_class_spec
from .orbits import (OrbitError, canonical_label, generate_all, is_distinguished, orbit_by_diagram,
                     orbit_by_label)
from .root_datum import (build_root_datum, coweight_from_spec, extended_diagram, format_root,
                         isolated_centralizer_subsystem, parse_root, parse_signed_subset,
                         pseudo_levi_from_subset, root_lattice_quotient, same_type)

KINDS = {"involution", "order4", "S3_distinguished", "S3_D4a1", "S3_D4a1A1", "S4", "S5", "classical"}


class TableError(ValueError):
    pass


def data_dir() -> Path:
    env = os.environ.get("ORBITKIT_DATA")
    if env:
        return Path(env)
    return Path(str(resources.files("orbitkit") / "data"))


def _load(rel: str) -> dict:
    path = data_dir() / rel
    try:
        with open(path) as f:
            return json.load(f)
    except FileNotFoundError as exc:
        raise TableError(f"missing data file {path}") from exc


@dataclass(frozen=True)
class FamilyRow:
    table: int
    group: str
    special_character: str
    class_OF: str
    class_OFstar: str
    J: str | None
    covering_kind: str
    class_in_LJ: str | None = None
    quotient: str | None = None


@lru_cache(maxsize=None)
def _aliases(d: str) -> dict:
    return _load("bala_carter_aliases.json").get("aliases", {})


def load_table(k: int) -> list[FamilyRow]:
    raw = _load(f"tables/table{k}.json")
    cols = raw["columns"]
    rows = []
    for r in raw["rows"]:
        rec = dict(zip(cols, r))
        kind = rec.get("covering_kind", raw.get("covering_kind"))
        if kind not in KINDS:
            raise TableError(f"unknown covering kind {kind!r}")
        rows.append(FamilyRow(k, rec["group"], rec["special_character"], rec["class_OF"],
                              rec["class_OFstar"], rec.get("J"), kind, rec.get("class_in_LJ"),
                              rec.get("quotient")))
    return rows


def all_rows() -> list[FamilyRow]:
    return load_table(1) + load_table(2) + load_table(3)


def load_affine() -> dict:
    return _load("affine_diagrams.json")["diagrams"]


def _is_partition_label(label: str) -> bool:
    return bool(re.fullmatch(r"[\d^,\s]+", label))


def resolve_label(group: str, label: str) -> tuple[int, ...]:
    """Diagram of the class with this label (Bala-Carter name or partition)."""
    datum = build_root_datum(group)
    if _is_partition_label(label):
        fam = group[0]
        ds = diagrams_from_partition(parse_partition(label), fam)
        if len(ds) != 1:
            raise TableError(f"partition label {label!r} names {len(ds)} classes")
        return tuple(ds[0])
    label = _aliases(str(data_dir())).get(group, {}).get(label, label)
    return orbit_by_label(datum, label).diagram


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------

@dataclass
class RowResult:
    row: FamilyRow
    ok: bool
    detail: str = ""
    data: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"row": asdict(self.row), "ok": self.ok, "detail": self.detail, "data": self.data}


@dataclass
class Report:
    name: str
    results: list[RowResult]

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    @property
    def passed(self) -> int:
        return sum(r.ok for r in self.results)

    def summary(self) -> str:
        return f"{self.name}: {self.passed}/{len(self.results)} rows pass"

    def to_json(self) -> dict:
        return {"name": self.name, "ok": self.ok, "results": [r.to_json() for r in self.results]}


def _strip_class(label: str) -> str:
    """Underlying subsystem type of a class name such as ``D8(a3)`` or ``D4(a1)+A3``."""
    return re.sub(r"\([ab]\d+\)", "", label)


def _rows(tables) -> list[FamilyRow]:
    return [r for k in tables for r in load_table(k)]


def verify_fusion_rows(tables=(1, 2)) -> Report:
    out = []
    for row in _rows(tables):
        if not row.J:
            continue
        G = build_root_datum(row.group)
        try:
            got = fuse_class_spec(G, row.J)
            want = resolve_label(row.group, row.class_OF)
        except (FusionError, OrbitError, TableError) as exc:
            out.append(RowResult(row, False, str(exc)))
            continue
        sub = pseudo_levi_from_subset(G, parse_signed_subset(row.J))
        levi_type = sub.type_label()
        type_match = (row.class_in_LJ is None
                      or canonical_label(_strip_class(row.class_in_LJ)) == canonical_label(levi_type))
        label = orbit_by_diagram(G, got).label
        out.append(RowResult(row, got == want, "" if got == want else f"fused to {label}",
                             {"diagram": list(got), "label": label, "L_J type": levi_type,
                              "L_J type matches column": type_match}))
    return Report("fusion rows", out)


def center_order(group: str, J: str) -> tuple[int, ...]:
    """Torsion invariants of X / Z Psi_J for the adjoint datum."""
    G = build_root_datum(group)
    roots = [extended_diagram(G).roots[j] for j in parse_signed_subset(J)]
    return root_lattice_quotient(G, roots).torsion


def verify_center_orders(tables=(1, 2)) -> Report:
    out = []
    for row in _rows(tables):
        if not row.J:
            continue
        tors = center_order(row.group, row.J)
        order = 1
        for x in tors:
            order *= x
        ok = order == 4 if row.table == 2 else order > 1
        out.append(RowResult(row, ok, "" if ok else f"torsion {tors}", {"torsion": list(tors), "order": order}))
    return Report("centre orders", out)


def verify_duality_pairs(tables=(1, 2, 3)) -> Report:
    rows = _rows(tables)
    norm = lambda lab: lab if _is_partition_label(lab) else canonical_label(lab)
    pairs = {(r.group, norm(r.class_OF), norm(r.class_OFstar)) for r in rows}
    out = []
    for r in rows:
        ok = (r.group, norm(r.class_OFstar), norm(r.class_OF)) in pairs
        out.append(RowResult(r, ok, "" if ok else "dual row missing"))
    return Report("duality pairs", out)


def verify_labels() -> Report:
    """Every label used in the tables resolves to exactly one generated class."""
    out = []
    for r in all_rows():
        try:
            for lab in (r.class_OF, r.class_OFstar):
                resolve_label(r.group, lab)
            out.append(RowResult(r, True))
        except (OrbitError, TableError) as exc:
            out.append(RowResult(r, False, str(exc)))
    return Report("labels", out)


def verify_distinguished() -> Report:
    """Rows with a distinguished class O_F are exactly those of the distinguished kinds."""
    out = []
    for r in load_table(3):
        G = build_root_datum(r.group)
        d = resolve_label(r.group, r.class_OF)
        want = r.covering_kind in ("S3_distinguished", "S4", "S5")
        got = all(x % 2 == 0 for x in d) and is_distinguished(G, d)
        out.append(RowResult(r, got == want, "" if got == want else f"distinguished = {got}"))
    return Report("distinguished rows", out)


def verify_affine() -> Report:
    """Stored affine diagrams: extended-diagram edges and isolated involutions at red nodes."""
    out = []
    for typ, data in load_affine().items():
        if typ == "D":
            continue
        G = build_root_datum(typ)
        ext = extended_diagram(G)
        want = {(frozenset((a, b)), m) for a, b, m in data["edges"]}
        got = {(frozenset((a, b)), m) for a, b, m in ext.edges}
        problems = [] if want == got else [f"edges differ: {sorted(map(str, want ^ got))}"]
        for red in data["red"]:
            sub = isolated_centralizer_subsystem(G, coweight_from_spec(G, f"w{red}:1/2"))
            rest = pseudo_levi_from_subset(G, [k for k in range(G.rank + 1) if k != red])
            if not same_type(sub.cartan_type, rest.cartan_type):
                problems.append(f"red node {red}: {sub.type_label()} vs {rest.type_label()}")
        row = FamilyRow(0, typ, "", "", "", None, "classical")
        out.append(RowResult(row, not problems, "; ".join(problems)))
    return Report("affine diagrams", out)


# ---------------------------------------------------------------------------
# Scenarios for the non-abelian quotients
# ---------------------------------------------------------------------------

@dataclass
class Scenario:
    name: str
    checks: list[tuple[str, bool, str]]

    @property
    def ok(self) -> bool:
        return all(c[1] for c in self.checks)

    def to_json(self) -> dict:
        return {"name": self.name, "ok": self.ok,
                "checks": [{"claim": c, "ok": ok, "value": v} for c, ok, v in self.checks]}


def _regular(sub) -> tuple[int, ...]:
    return max(generate_all(sub.datum), key=lambda o: o.dim).diagram


def _label_in(datum, sub, d) -> str:
    return orbit_by_diagram(datum, fuse(datum, sub, d)).label


def _check(checks, claim, value, expected):
    ok = value == expected if not callable(expected) else expected(value)
    checks.append((claim, bool(ok), str(value)))


def _word(G, pi, toks):
    from .root_datum import compose, longest_element
    rs = G.roots
    w = longest_element(rs, [])
    for t in toks:
        w = compose(w, qs.s_pi(G, pi, parse_root(G, t)))
    return w


def scenario_triality_e6() -> Scenario:
    from .root_datum import compose, longest_element
    G = build_root_datum("E6")
    a = qs.make_action(G, "2,3,4,5", "triality")
    fs = qs.fixed_subsystem(a)
    ts = qs.twisted_subsystem(a, coweight_from_spec(G, "w4:1/3"))
    c = []
    _check(c, "w has order 3", a.order, 3)
    _check(c, "C_M(sigma) type", fs.type_label, "G2")
    _check(c, "C_M(t sigma) type", ts.type_label, "A2")
    _check(c, "sigma quasi-central", qs.quasi_central_check(a), True)
    reg = _regular(ts.sub_M)
    _check(c, "regular class of K is subregular in M", _label_in(a.M, ts.sub_M, reg), "D4(a1)")
    _check(c, "regular class of K in G", _label_in(G, ts.sub_G, reg), "D4(a1)")
    rs = G.roots
    wp = compose(longest_element(rs), longest_element(rs, [1, 2, 4]))
    neg = lambda o: sorted(tuple(-x for x in v) for v in o.roots)
    _check(c, "w' maps O3 to -O4", qs.image_orbit(a, wp, a.orbit(3)), neg(a.orbit(4)))
    _check(c, "w' maps O4 to -O3", qs.image_orbit(a, wp, a.orbit(4)), neg(a.orbit(3)))
    _check(c, "w' fixes O1", qs.image_orbit(a, wp, a.orbit(1)), sorted(a.orbit(1).roots))
    return Scenario("E6 D4(a1): triality on D4", c)


def scenario_e8_d4a1a1() -> Scenario:
    from .root_datum import compose, longest_element
    G = build_root_datum("E8")
    a = qs.make_action(G, "2,3,4,5 | 8", "spi:6,1", numbering="component")
    fs = qs.fixed_subsystem(a)
    ts = qs.twisted_subsystem(a, coweight_from_spec(G, "w1:2/3,w4:1/3,w6:2/3"))
    c = []
    perm = {format_root(p): format_root(a.apply(p)) for p in a.pi}
    _check(c, "w: a2 -> a5 -> a3 -> a2", (perm["01000000"], perm["00001000"], perm["00100000"]),
           ("00001000", "00100000", "01000000"))
    _check(c, "O7 = {a8}", [format_root(v) for v in a.orbit(7).roots], ["00000001"])
    _check(c, "seven orbits", len(a.orbits), 7)
    _check(c, "C_M(sigma) type", fs.type_label, "G2+A1")
    _check(c, "C_M(t sigma) type", ts.type_label, "A2+A1")
    _check(c, "Sigma_{t sigma}", ts.indices, [1, 3, 4, 7])
    reg = _regular(ts.sub_G)
    _check(c, "regular class of K in G", _label_in(G, ts.sub_G, reg), "D4(a1)+A1")
    rs = G.roots
    wp = compose(longest_element(rs), longest_element(rs, [1, 2, 4, 7]))
    # s~1 = s_{Pi,a6}, s~2 = s_{Pi,a1}, s~3 = s_{Pi,a6+a7}; w' = w_Delta w_J s~3 s~2 s~1 s~3 s~2 s~3
    wp = compose(wp, _word(G, a.pi, ["00000110", "1", "6", "00000110", "1", "00000110"]))
    neg = lambda o: sorted(tuple(-x for x in v) for v in o.roots)
    _check(c, "w' maps O3 to -O4", qs.image_orbit(a, wp, a.orbit(3)), neg(a.orbit(4)))
    _check(c, "w' fixes O7", qs.image_orbit(a, wp, a.orbit(7)), sorted(a.orbit(7).roots))
    return Scenario("E8 D4(a1)+A1: triality on D4A1", c)


def scenario_f4_s4() -> Scenario:
    G = build_root_datum("F4")
    iso = isolated_centralizer_subsystem(G, coweight_from_spec(G, "w3:1/4"))
    a = qs.make_action(G, "1,2,1242,4", "longest")
    fs = qs.fixed_subsystem(a)
    c = []
    _check(c, "C_G(w3(1/4)) type A3+A1", same_type(iso.cartan_type, "A3+A1"), True)
    _check(c, "alpha0 = 1242 in the simple system", (1, 2, 4, 2) in iso.simple_roots, True)
    _check(c, "orbits on Pi", [[format_root(v) for v in a.orbit(k).roots] for k in (1, 2, 3)],
           [["1000", "1242"], ["0100"], ["0001"]])
    _check(c, "C_M(sigma) type C2+A1", same_type(fs.cartan_type, "C2+A1"), True)
    _check(c, "beta_O1 short", [o.index for o in fs.simple if fs.is_short(o)], [1])
    _check(c, "sigma quasi-central", qs.quasi_central_check(a), True)
    reg = _regular(fs.sub_G)
    _check(c, "regular class of C_M(sigma) in M", _label_in(a.M, fs.sub_M, reg), "A3+A1")
    _check(c, "regular class of C_M(sigma) in G", _label_in(G, fs.sub_G, reg), "F4(a3)")
    return Scenario("F4 F4(a3): S4 dihedral case", c)


def scenario_e8_dih8() -> Scenario:
    G = build_root_datum("E8")
    iso = isolated_centralizer_subsystem(G, coweight_from_spec(G, "w6:1/4"))
    a = qs.make_action(G, "1,3,4,2,5 | 8,7,23465421", "longest")
    fs = qs.fixed_subsystem(a)
    ts = qs.twisted_subsystem(a, coweight_from_spec(G, "w4:1/2,w6:1/4"))
    c = []
    _check(c, "C_G(w6(1/4)) type", iso.type_label(), "D5+A3")
    _check(c, "alpha0 = 23465421 in the simple system", (2, 3, 4, 6, 5, 4, 2, 1) in iso.simple_roots, True)
    _check(c, "orbits on Pi", [sorted(format_root(v) for v in a.orbit(k).roots) for k in range(1, 7)],
           [["10000000"], ["00100000"], ["00010000"], ["00001000", "01000000"],
            ["00000001", "23465421"], ["00000010"]])
    _check(c, "C_M(sigma) type B4+C2", same_type(fs.cartan_type, "B4+C2"), True)
    _check(c, "C_M(t sigma) type B1+B3+C2", same_type(ts.cartan_type, "A1+B3+C2"), True)
    _check(c, "simple roots from O4 | O1, O2 | O5, O6", {1, 2, 4, 5, 6} <= {o.index for o in ts.simple}, True)
    _check(c, "sigma quasi-central", qs.quasi_central_check(a), True)
    reg = _regular(ts.sub_G)
    _check(c, "regular class of K in M", _label_in(a.M, ts.sub_M, reg), "D5(a1)+A3")
    _check(c, "regular class of K in G", _label_in(G, ts.sub_G, reg), "E8(a7)")
    return Scenario("E8 E8(a7): Dih8 case", c)


def scenario_e8_dih12() -> Scenario:
    G = build_root_datum("E8")
    iso = isolated_centralizer_subsystem(G, coweight_from_spec(G, "w7:1/3"))
    a = qs.make_action(G, "1,3,4,2,5,6 | 8,23465431", "longest",
                       torus_part=coweight_from_spec(G, "w3:1/2,w5:1/2"), signs="8:1")
    fs = qs.fixed_subsystem(a)
    ts = qs.twisted_subsystem(a, coweight_from_spec(G, "w2:1/2,w7:1/2"))
    o0 = a.orbit_of(parse_root(G, "01110000"))
    c = []
    _check(c, "C_G(w7(1/3)) type", iso.type_label(), "E6+A2")
    _check(c, "alpha0 = 23465431 in the simple system", (2, 3, 4, 6, 5, 4, 3, 1) in iso.simple_roots, True)
    _check(c, "orbits on Pi", [sorted(format_root(v) for v in a.orbit(k).roots) for k in range(1, 6)],
           [["00000100", "10000000"], ["00001000", "00100000"], ["00010000"], ["01000000"],
            ["00000001", "23465431"]])
    _check(c, "O5 special with C = 1", (a.orbit(5).special, a.orbit(5).sign), (True, 1))
    _check(c, "O0 = {01110000, 01011000}", sorted(format_root(v) for v in o0.roots),
           ["01011000", "01110000"])
    _check(c, "C_M(sigma) type F4+A1", same_type(fs.cartan_type, "F4+A1"), True)
    _check(c, "C_M(t sigma) type C4+A1", same_type(ts.cartan_type, "C4+A1"), True)
    _check(c, "simple system O0, O1, O2, O3 | O5", sorted(o.index for o in ts.simple), sorted([o0.index, 1, 2, 3, 5]))
    _check(c, "sigma quasi-central", qs.quasi_central_check(a), True)
    u = next(o.diagram for o in generate_all(ts.sub_G.datum) if canonical_label(o.label) == "C4(a1)+A1")
    _check(c, "C4(a1)+A1 in M", _label_in(a.M, ts.sub_M, u), "E6(a3)+A2")
    _check(c, "C4(a1)+A1 in G", _label_in(G, ts.sub_G, u), "E8(a7)")
    return Scenario("E8 E8(a7): Dih12 case", c)


SCENARIOS = [scenario_triality_e6, scenario_e8_d4a1a1, scenario_f4_s4, scenario_e8_dih8, scenario_e8_dih12]


def run_scenarios() -> list[Scenario]:
    return [f() for f in SCENARIOS]
