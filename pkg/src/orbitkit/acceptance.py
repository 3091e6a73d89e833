"""The acceptance suite: nine exact checks, shared by ``orbitkit selftest`` and pytest."""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import classical as cl
from . import drinfeld as dr
from . import matrix_model as mm
from . import quasiss as qs
from . import tables
from .fusion import fuse, fuse_trace
from .orbits import diagram_set, generate_all, negative_conjugate_check, orbit_by_diagram, rho_symmetric
from .root_datum import (all_types_up_to_rank, bad_primes, build_root_datum, coweight_from_spec,
                         format_root, is_pretty_good, is_pretty_good_bruteforce, isolated_centralizer_subsystem,
                         parse_root, same_type, subsystem_from_roots)


@dataclass
class Criterion:
    number: int
    name: str
    ok: bool
    details: list[str] = field(default_factory=list)
    seconds: float = 0.0

    def line(self) -> str:
        return f"[{'PASS' if self.ok else 'FAIL'}] {self.number}. {self.name} ({self.seconds:.1f}s)"

    def to_json(self) -> dict:
        return {"number": self.number, "name": self.name, "ok": self.ok, "details": self.details,
                "seconds": round(self.seconds, 3)}


class _Collector:
    def __init__(self):
        self.failures: list[str] = []

    def eq(self, what: str, got, want):
        if got != want:
            self.failures.append(f"{what}: got {got!r}, want {want!r}")

    def true(self, what: str, cond):
        if not cond:
            self.failures.append(what)


# 1 -----------------------------------------------------------------------

def criterion_b2_fusion(c: _Collector) -> None:
    G = build_root_datum("B2")
    sub = subsystem_from_roots(G, [parse_root(G, "10"), parse_root(G, "-12")])
    tr = fuse_trace(G, sub, (2, 2))
    c.eq("C", tr.C, [[2, 0], [0, 2]])
    c.eq("A", [[int(x) for x in r] for r in tr.A], [[1, 0], [-1, -1]])
    c.eq("D", tr.D, [[2, -1], [-2, 2]])
    c.eq("f on positive roots", [int(x) for x in tr.f_positive], [2, -2, 0, -2])
    c.eq("w = s2 s1", tr.w.word, (1, 0))
    c.eq("inversion set", sorted(format_root(v) for v in tr.inversions), ["01", "12"])
    c.eq("f o w on positive roots", [int(x) for x in tr.f_w_positive], [2, 0, 2, 2])
    c.eq("diagram", tr.diagram, (2, 0))


# 2 -----------------------------------------------------------------------

TRIALITY_ORBITS = [{"1000", "0100", "0001"}, {"0010"}, {"1010", "0110", "0011"},
                   {"1110", "1011", "0111"}, {"1111"}, {"1121"}]


def criterion_triality(c: _Collector) -> None:
    G = build_root_datum("E6")
    a = qs.make_action(G, "2,3,4,5", "triality")
    c.eq("orbits", [{format_root(v) for v in o.local} for o in a.orbits], TRIALITY_ORBITS)
    fs = qs.fixed_subsystem(a)
    c.eq("Sigma_sigma type", fs.type_label, "G2")
    c.eq("Pi_sigma", [o.index for o in fs.simple], [1, 2])
    c.eq("short root of Pi_sigma", [o.index for o in fs.simple if fs.is_short(o)], [1])
    ts = qs.twisted_subsystem(a, coweight_from_spec(G, "w4:1/3"))
    c.eq("Sigma_t sigma^+", ts.indices, [1, 3, 4])
    c.eq("Sigma_t sigma type", ts.type_label, "A2")
    c.true("beta1 + beta4 = beta5 witnesses non-closedness", (1, 4, 5) in qs.non_closed_witnesses(fs, ts))
    b1, b2, b4 = (a.orbit(k).beta_local for k in (1, 2, 4))
    c.eq("beta1 + beta4 = 3 beta1 + beta2", tuple(x + y for x, y in zip(b1, b4)),
         tuple(3 * x + y for x, y in zip(b1, b2)))
    M = a.M
    outer = [0, 1, 3]  # Pi = (a2, a3, a4, a5): a4 is the central node
    for o in generate_all(fs.sub_M.datum):
        img = fuse(M, fs.sub_M, o.diagram)
        aa, bb = o.diagram
        c.eq(f"G2 {o.diagram} -> D4", ([img[i] for i in outer], img[2]), ([aa] * 3, bb))
    for o in generate_all(ts.sub_M.datum):
        img = fuse(M, ts.sub_M, o.diagram)
        aa, bb = o.diagram
        c.eq(f"A2 {o.diagram} is (a,a)", aa, bb)
        c.eq(f"A2 {o.diagram} -> D4", ([img[i] for i in outer], img[2]), ([aa] * 3, 0))


# 3 -----------------------------------------------------------------------

def criterion_tables(c: _Collector) -> None:
    rep = tables.verify_fusion_rows((1, 2))
    c.eq("fusion rows", (rep.passed, len(rep.results)), (len(rep.results), 32))
    for r in rep.results:
        c.true(f"fusion {r.row.group} {r.row.class_OF}: {r.detail}", r.ok)
    for r in tables.verify_center_orders((1, 2)).results:
        c.true(f"centre {r.row.group} {r.row.J}: {r.detail}", r.ok)
    c.eq("table 2 centre orders", [r.data["order"] for r in tables.verify_center_orders((2,)).results], [4] * 4)


# 4 -----------------------------------------------------------------------

def _partitions_bruteforce(N: int, largest: int | None = None):
    largest = N if largest is None else largest
    if N == 0:
        yield ()
        return
    for k in range(min(N, largest), 0, -1):
        for rest in _partitions_bruteforce(N - k, k):
            yield (k,) + rest


def _p_eps_bruteforce(eps: int, N: int) -> list[tuple]:
    out = []
    for mu in _partitions_bruteforce(N):
        if all(mu.count(m) % 2 == 0 for m in set(mu) if (-1) ** m == eps):
            out.append(mu)
    return out


def _swap_last(d):
    return d[:-2] + (d[-1], d[-2])


def criterion_classical(c: _Collector) -> None:
    for fam in "ABCD":
        for n in range(1, 7):
            if (fam in "BC" and n < 2) or (fam == "D" and n < 4):
                continue
            G = build_root_datum(f"{fam}{n}")
            got = diagram_set(G)
            c.eq(f"{fam}{n} diagram set", got, cl.classical_diagram_set(fam, n))
            if fam == "A":
                want = len(list(_partitions_bruteforce(n + 1)))
                c.eq(f"A{n} count", len(got), want)
                continue
            N = {"B": 2 * n + 1, "C": 2 * n, "D": 2 * n}[fam]
            eps = {"B": 1, "C": -1, "D": 1}[fam]
            want = len(_p_eps_bruteforce(eps, N))
            if fam == "D":
                # SO(2n)-classes: very even partitions label two classes swapped by the graph symmetry
                classes = {min(d, _swap_last(d)) for d in got}
                c.eq(f"D{n} count up to the very even swap", len(classes), want)
                very_even = sum(1 for mu in _p_eps_bruteforce(eps, N) if cl.is_very_even(mu))
                c.eq(f"D{n} raw count", len(got), want + very_even)
            else:
                c.eq(f"{fam}{n} count", len(got), want)


# 5 -----------------------------------------------------------------------

def criterion_rho_w0(c: _Collector) -> None:
    for t in all_types_up_to_rank(8):
        G = build_root_datum(t)
        for o in generate_all(G):
            c.true(f"{t} {o.label}: d o rho = d", rho_symmetric(G, o.diagram))
            c.true(f"{t} {o.label}: w0 lambda = -lambda", negative_conjugate_check(G, o.diagram))


# 6 -----------------------------------------------------------------------

def criterion_matrix_model(c: _Collector) -> None:
    from collections import Counter
    for N in range(1, 13):
        for eps in (1, -1):
            if eps == -1 and N % 2:
                continue
            fam = "C" if eps == -1 else ("B" if N % 2 else "D")
            for mu in cl.P(eps, N):
                model = mm.build_model(mu, eps)  # raises on any violated invariant
                c.eq(f"{mu} eps={eps} Jordan type", mm.jordan_type(model), tuple(mu))
                levi = mm.centralizer_levi_factor(model)
                want = [("O" if (-1) ** m == -eps else "Sp", m, r) for m, r in sorted(Counter(mu).items(), reverse=True)]
                c.eq(f"{mu} eps={eps} Levi factor", [(f.kind, f.m, f.dim) for f in levi], want)
                if eps == -1 or cl.is_special(mu, fam):
                    rep = mm.verify_admissible(model, cl.canonical_quotient_spec(mu, eps))
                    c.true(f"{mu} eps={eps} admissible: {rep.failed()}", rep.ok)
    model = mm.build_model((5, 3, 1), 1)
    naive = mm.verify_admissible(model, cl.canonical_quotient_spec((5, 3, 1), 1, naive=True))
    c.eq("(5,3,1) naive generators fail exactly K2", naive.failed(), ["K2 disjoint (-1)-eigenspaces on V(0)"])
    good = mm.verify_admissible(model, cl.canonical_quotient_spec((5, 3, 1), 1))
    c.true("(5,3,1) corrected generators pass", good.ok)


# 7 -----------------------------------------------------------------------

def criterion_fourier(c: _Collector) -> None:
    for name in dr.STANDARD_GROUPS:
        G = dr.named_group(name)
        F = dr.fourier_matrix(G)
        c.true(f"{name}: unitary", dr.is_unitary(F))
        c.true(f"{name}: involution", dr.is_involution(F))
        c.true(f"{name}: Mellin identity", dr.mellin_check(G, F))
    c.eq("|M(S3)|", len(dr.mset(dr.named_group("S3")).pairs), 8)


# 8 -----------------------------------------------------------------------

def criterion_primes(c: _Collector) -> None:
    for n in range(1, 9):
        c.eq(f"bad(A{n})", bad_primes(f"A{n}"), set())
    for fam, lo in (("B", 2), ("C", 2), ("D", 4)):
        for n in range(lo, 9):
            c.eq(f"bad({fam}{n})", bad_primes(f"{fam}{n}"), {2})
    for t in ("G2", "F4", "E6", "E7"):
        c.eq(f"bad({t})", bad_primes(t), {2, 3})
    c.eq("bad(E8)", bad_primes("E8"), {2, 3, 5})
    for t in all_types_up_to_rank(4):
        for iso in ("adjoint", "simply_connected"):
            G = build_root_datum(t, iso)
            for p in (2, 3, 5, 7, 11, 13):
                c.eq(f"pretty good {t} {iso} p={p}", is_pretty_good_bruteforce(G, p), is_pretty_good(G, p))


# 9 -----------------------------------------------------------------------

def criterion_isolated(c: _Collector) -> None:
    F4 = build_root_datum("F4")
    s = isolated_centralizer_subsystem(F4, coweight_from_spec(F4, "w3:1/4"))
    c.true("F4 w3(1/4) -> A3A1", same_type(s.cartan_type, "A3+A1"))
    c.eq("F4 simple system", sorted(format_root(v) for v in s.simple_roots), ["0001", "0100", "1000", "1242"])
    E8 = build_root_datum("E8")
    s = isolated_centralizer_subsystem(E8, coweight_from_spec(E8, "w7:1/3"))
    c.eq("E8 w7(1/3) -> E6A2", s.type_label(), "E6+A2")
    c.eq("E8 simple system", sorted(format_root(v) for v in s.simple_roots),
         sorted(["10000000", "01000000", "00100000", "00010000", "00001000", "00000100", "00000001",
                 "23465431"]))


CRITERIA: list[tuple[str, Callable]] = [
    ("B2 fusion example", criterion_b2_fusion),
    ("triality examples", criterion_triality),
    ("Tables 1-2 fusion rows and centre orders", criterion_tables),
    ("classical oracle equivalence", criterion_classical),
    ("rho-symmetry and w0 property", criterion_rho_w0),
    ("matrix model and admissible coverings", criterion_matrix_model),
    ("Fourier suite", criterion_fourier),
    ("prime predicates", criterion_primes),
    ("isolated elements", criterion_isolated),
]


def run_criterion(k: int) -> Criterion:
    name, fn = CRITERIA[k - 1]
    col = _Collector()
    t = time.perf_counter()
    try:
        fn(col)
    except Exception as exc:  # a crash is a failure, reported with its message
        col.failures.append(f"{type(exc).__name__}: {exc}")
    return Criterion(k, name, not col.failures, col.failures, time.perf_counter() - t)


def run_all(verbose: bool = False, stream=None) -> list[Criterion]:
    out = []
    for k in range(1, len(CRITERIA) + 1):
        res = run_criterion(k)
        out.append(res)
        if stream is not None:
            print(res.line(), file=stream)
            if verbose or not res.ok:
                for d in res.details[:20]:
                    print(f"    {d}", file=stream)
    return out
