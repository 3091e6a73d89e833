"""Weighted Dynkin diagrams, grading dimensions and the set of all nilpotent orbits.

The full set of diagrams of a root system is produced by the Bala-Carter
bootstrap: every subset J of the simple roots gives a standard Levi; the even
distinguished diagrams of that Levi are pushed into the ambient system with
the fusion algorithm, and the images are deduplicated.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from typing import Sequence

import numpy as np

from . import _kernels
from . import _linalg as la
from .root_datum import (RootDatum, RootSystem, act, build_root_datum, classify_cartan,
                         join_label_parts, levi_subsystem, longest_element, rho_permutation,
                         _normalise_family)

Diagram = tuple[int, ...]


class OrbitError(ValueError):
    pass


@dataclass(frozen=True)
class WeightedDynkinDiagram:
    weights: Diagram
    datum_ref: str = ""

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.weights)) + ")"


@dataclass(frozen=True)
class Orbit:
    diagram: Diagram
    dim: int
    bala_carter: tuple[tuple[int, ...], Diagram]  # (Levi subset J, distinguished diagram on J)
    even: bool
    label: str

    def to_json(self) -> dict:
        return {"diagram": list(self.diagram), "dim": self.dim, "label": self.label,
                "even": self.even, "levi": list(self.bala_carter[0]),
                "levi_diagram": list(self.bala_carter[1])}


def format_diagram(d: Sequence[int]) -> str:
    return "(" + ",".join(str(x) for x in d) + ")"


def check_diagram(datum: RootDatum, d: Sequence[int]) -> Diagram:
    d = tuple(int(x) for x in d)
    if len(d) != datum.rank:
        raise OrbitError(f"diagram has {len(d)} weights, expected {datum.rank}")
    if any(x not in (0, 1, 2) for x in d):
        raise OrbitError("diagram weights must lie in {0,1,2}")
    return d


def dynkin_cocharacter(datum: RootDatum, d: Sequence[int]) -> list[Fraction]:
    """``lambda_d`` over the fundamental coweights; asserts it lies in the coroot lattice."""
    lam = [Fraction(x) for x in d]
    coeffs = la.solve_left(lam, datum.cartan)
    if coeffs is None or any(c.denominator != 1 for c in coeffs):
        raise OrbitError("lambda_d is not in the coroot lattice")
    return lam


def _root_array(rs: RootSystem, positive_only: bool = False) -> np.ndarray:
    rows = rs.positive if positive_only else rs.all
    return np.array(rows, dtype=np.int64).reshape(len(rows), rs.rank)


def grading_dim(datum: RootDatum, lam: Sequence, i: int) -> int:
    """``dim g(lam, i)``: roots with ``<alpha, lam> = i``, plus the torus when i = 0."""
    rs = datum.roots
    lam = [Fraction(x) for x in lam]
    if all(x.denominator == 1 for x in lam):
        h = _kernels.grading_histogram(_root_array(rs), np.array([[int(x) for x in lam]]), i, i)
        count = int(h[0, 0])
    else:
        count = sum(1 for v in rs.all if sum(a * b for a, b in zip(v, lam)) == i)
    return count + (datum.rank_X if i == 0 else 0)


def is_distinguished(datum: RootDatum, d: Sequence[int]) -> bool:
    d = check_diagram(datum, d)
    if any(x == 1 for x in d):
        raise OrbitError("distinguished test needs an even diagram")
    return grading_dim(datum, d, 0) == grading_dim(datum, d, 2)


def orbit_dim(datum: RootDatum, d: Sequence[int]) -> int:
    d = check_diagram(datum, d)
    rs = datum.roots
    return 2 * rs.N + datum.rank_X - grading_dim(datum, d, 0) - grading_dim(datum, d, 1)


def negative_conjugate_check(datum: RootDatum, d: Sequence[int]) -> bool:
    rs = datum.roots
    w0 = longest_element(rs)
    return act(rs, w0, list(d), "coweight") == [-Fraction(x) for x in d]


def rho_symmetric(datum: RootDatum, d: Sequence[int]) -> bool:
    rho = rho_permutation(datum.roots)
    return all(d[rho[i]] == d[i] for i in range(datum.rank))


# ---------------------------------------------------------------------------
# Distinguished diagrams and Bala-Carter names
# ---------------------------------------------------------------------------

def _levi_distinguished(rs: RootSystem, J: Sequence[int]) -> list[Diagram]:
    """Even diagrams supported on J that are distinguished in the Levi of J."""
    n = rs.rank
    Jset = set(J)
    roots = [v for v in rs.positive if all(v[k] == 0 for k in range(n) if k not in Jset)]
    if not J:
        return [tuple([0] * n)]
    diagrams = []
    for bits in product((0, 2), repeat=len(J)):
        d = [0] * n
        for j, b in zip(J, bits):
            d[j] = b
        diagrams.append(d)
    lams = np.array(diagrams, dtype=np.int64)
    roots_arr = np.array(roots, dtype=np.int64).reshape(len(roots), n)
    h = _kernels.grading_histogram(roots_arr, lams, 0, 2)
    g0 = 2 * h[:, 0] + len(J)
    g2 = h[:, 2]
    return [tuple(diagrams[k]) for k in range(len(diagrams)) if g0[k] == g2[k]]


@lru_cache(maxsize=None)
def _distinguished_catalogue(family: str, rank: int) -> dict[tuple[int, int], str]:
    """Map (number of zeros, dimension) of distinguished diagrams to suffixes.

    The suffix counts the zero weights; diagrams sharing that count are
    lettered a, b, ... by decreasing dimension.
    """
    datum = build_root_datum(f"{family}{rank}")
    rs = datum.roots
    found = []
    for d in _levi_distinguished(rs, list(range(rank))):
        zeros = d.count(0)
        found.append((zeros, _even_dim(rs, d)))
    out = {}
    by_zero: dict[int, list[int]] = {}
    for z, dim in found:
        by_zero.setdefault(z, []).append(dim)
    for z, dims in by_zero.items():
        for k, dim in enumerate(sorted(set(dims), reverse=True)):
            out[(z, dim)] = "" if z == 0 else f"({'abcdefgh'[k]}{z})"
    return out


def _even_dim(rs: RootSystem, d: Sequence[int], roots=None) -> int:
    roots = rs.positive if roots is None else roots
    zeros = sum(1 for v in roots if sum(a * b for a, b in zip(v, d)) == 0)
    return 2 * (len(roots) - zeros)


def bala_carter_label(datum: RootDatum, J: Sequence[int], d: Sequence[int]) -> str:
    """Display label of the orbit attached to a distinguished diagram d of the Levi of J."""
    if not J:
        return "0"
    sub = levi_subsystem(datum, J)
    rs = datum.roots
    parts = []
    for comp in classify_cartan(sub.cartan):
        nodes = [J[k] for k in comp.nodes]
        dd = [d[j] for j in nodes]
        tilde = "~" if sub.component_is_short(comp) else ""
        names = _normalise_family(comp.family, comp.rank)
        if all(x == 2 for x in dd):
            parts.extend(tilde + f"{f}{r}" for f, r in names)
            continue
        support = set(nodes)
        roots = [v for v in rs.positive if all(v[k] == 0 for k in range(rs.rank) if k not in support)]
        key = (dd.count(0), _even_dim(rs, d, roots))
        fam, r = names[0] if len(names) == 1 else (comp.family, comp.rank)
        suffix = _distinguished_catalogue(comp.family, comp.rank).get(key)
        if suffix is None:
            raise OrbitError("distinguished diagram missing from catalogue")
        parts.append(tilde + f"{fam}{r}{suffix}")
    return join_label_parts(parts)


# ---------------------------------------------------------------------------
# Generation
# ---------------------------------------------------------------------------

def _datum_key(datum: RootDatum):
    return (tuple(map(tuple, datum.cartan)), datum.rank_X)


_CACHE: dict = {}


def generate_all(datum: RootDatum) -> list[Orbit]:
    key = _datum_key(datum)
    if key not in _CACHE:
        _CACHE[key] = _generate_all(datum)
    return list(_CACHE[key])


def _generate_all(datum: RootDatum) -> list[Orbit]:
    from .fusion import fuse_raw

    rs = datum.roots
    n = datum.rank
    witnesses: dict[Diagram, tuple[tuple[int, ...], Diagram]] = {}
    for size in range(n + 1):
        for J in combinations(range(n), size):
            sub = levi_subsystem(datum, J) if J else None
            for d in _levi_distinguished(rs, J):
                if sub is None:
                    image = tuple([0] * n)
                else:
                    image = tuple(int(x) for x in fuse_raw(datum, sub, [d[j] for j in J])[1])
                if image not in witnesses:
                    witnesses[image] = (J, d)
    orbits = []
    for diag, (J, d) in witnesses.items():
        if any(x not in (0, 1, 2) for x in diag):
            raise OrbitError(f"generated diagram {diag} has weights outside {{0,1,2}}")
        label = bala_carter_label(datum, J, d)
        orbits.append(Orbit(diag, orbit_dim(datum, diag), (J, tuple(d[j] for j in J)),
                            all(x % 2 == 0 for x in diag), label))
    # disambiguate labels shared by non-conjugate Levis: larger orbit gets a single prime
    by_label: dict[str, list[Orbit]] = {}
    for o in orbits:
        by_label.setdefault(o.label, []).append(o)
    final = []
    for label, group in by_label.items():
        if len(group) == 1:
            final.extend(group)
            continue
        group.sort(key=lambda o: (-o.dim, o.diagram))
        for k, o in enumerate(group):
            primed = f"({label})" + "'" * (k + 1) if "+" in label else label + "'" * (k + 1)
            final.append(Orbit(o.diagram, o.dim, o.bala_carter, o.even, primed))
    final.sort(key=lambda o: (o.dim, o.diagram))
    return final


def diagram_set(datum: RootDatum) -> set[Diagram]:
    return {o.diagram for o in generate_all(datum)}


def orbit_by_diagram(datum: RootDatum, d: Sequence[int]) -> Orbit:
    d = tuple(d)
    for o in generate_all(datum):
        if o.diagram == d:
            return o
    raise OrbitError(f"diagram {format_diagram(d)} is not a nilpotent orbit of {datum}")


def orbit_by_label(datum: RootDatum, label: str) -> Orbit:
    key = canonical_label(label)
    hits = [o for o in generate_all(datum) if canonical_label(o.label) == key]
    if len(hits) != 1:
        raise OrbitError(f"label {label!r} matches {len(hits)} orbits of {datum}")
    return hits[0]


def canonical_label(label: str) -> str:
    """Normalise a Bala-Carter label: order of summands, multiplicities, tildes."""
    import re
    text = label.replace(" ", "").replace("Ã", "~A").replace("̃", "").replace("_", "")
    text = text.replace("{", "").replace("}", "")
    if text in ("0", "1", ""):
        return "0"
    primes = ""
    m = re.fullmatch(r"\((.*)\)('+)", text)
    if m:
        text, primes = m.group(1), m.group(2)
    elif re.fullmatch(r".*[^']('+)", text) and "+" not in text:
        m = re.fullmatch(r"(.*?)('+)", text)
        text, primes = m.group(1), m.group(2)
    parts = []
    for tok in text.split("+"):
        m = re.fullmatch(r"(\d*)(~?[A-G]\d+(?:\([ab]\d+\))?)", tok)
        if not m:
            raise OrbitError(f"cannot parse label component {tok!r}")
        parts.extend([m.group(2)] * int(m.group(1) or 1))
    out = join_label_parts(parts)
    if primes:
        out = f"({out}){primes}" if "+" in out else out + primes
    return out
