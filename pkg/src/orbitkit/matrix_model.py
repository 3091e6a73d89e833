"""Explicit model of a nilpotent element of sp(V) or so(V) with prescribed Jordan type.

The basis is ``v_{s,i}^{(m)}`` with m running over the parts of mu, s over
the copies of each part and i along the Jordan block.  The form pairs
``v_{s,i}^{(m)}`` with its bar-partner, the nilpotent ``e`` walks down each
block, and the involutions ``a_s^{(k)}`` negate a single block.  Everything
is exact integer arithmetic.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import _linalg as la
from .classical import (CoveringSpec, EpsilonPartition, Generator, format_generator, index_set)

Index = tuple[int, int, int]  # (m, s, i), 1-based s and i


class ModelError(RuntimeError):
    pass


def _bar(idx: Index, r: dict, eps: int) -> Index:
    m, s, i = idx
    if (-1) ** m == -eps:
        return (m, s, m + 1 - i)
    return (m, r[m] + 1 - s, m + 1 - i)


@dataclass
class Model:
    mu: tuple[int, ...]
    epsilon: int
    basis: list[Index]
    position: dict
    bar: list[int]
    B: np.ndarray
    e: np.ndarray
    grading: list[int]
    involutions: dict = field(default_factory=dict)  # (k, s) -> matrix

    @property
    def N(self) -> int:
        return len(self.basis)

    def generator_matrix(self, g: Generator) -> np.ndarray:
        out = np.eye(self.N, dtype=np.int64)
        for s, k in g:
            if (k, s) not in self.involutions:
                raise ModelError(f"a_{s}^({k}) does not exist for mu = {self.mu}")
            out = out @ self.involutions[(k, s)]
        return out

    def V(self, i: int) -> list[int]:
        return [p for p, g in enumerate(self.grading) if g == i]

    def lambda_weights(self) -> list[int]:
        return list(self.grading)


def build_model(mu: Sequence[int], eps: int, check: bool = True) -> Model:
    mu = EpsilonPartition(tuple(mu), eps).parts
    r = Counter(mu)
    basis = [(m, s, i) for m in sorted(r, reverse=True) for s in range(1, r[m] + 1) for i in range(1, m + 1)]
    pos = {b: k for k, b in enumerate(basis)}
    n = len(basis)
    bar = [pos[_bar(b, r, eps)] for b in basis]
    B = np.zeros((n, n), dtype=np.int64)
    for k, (m, s, i) in enumerate(basis):
        if (-1) ** m == -eps or 2 * s <= r[m]:
            val = (-1) ** (i + 1)
            B[k, bar[k]] = val
            B[bar[k], k] = eps * val
    e = np.zeros((n, n), dtype=np.int64)
    for k, (m, s, i) in enumerate(basis):
        if i < m:
            e[pos[(m, s, i + 1)], k] = 1
    grading = [2 * i - 1 - m for (m, s, i) in basis]
    model = Model(mu, eps, basis, pos, bar, B, e, grading)
    for k in index_set(mu, eps).I:
        for s in range(1, r[k] + 1):
            a = np.eye(n, dtype=np.int64)
            for i in range(1, k + 1):
                a[pos[(k, s, i)], pos[(k, s, i)]] = -1
            model.involutions[(k, s)] = a
    if check:
        problems = model_invariants(model)
        if problems:
            raise ModelError("; ".join(problems))
    return model


def _grade_preserving(model: Model, g: np.ndarray, shift: int = 0) -> bool:
    rows, cols = np.nonzero(g)
    return all(model.grading[a] == model.grading[b] + shift for a, b in zip(rows, cols))


def model_invariants(model: Model) -> list[str]:
    """Return a list of violated invariants (empty when everything holds)."""
    B, e, eps, n = model.B, model.e, model.epsilon, model.N
    bad = []
    if any(model.bar[model.bar[k]] != k for k in range(n)):
        bad.append("bar is not an involution")
    if any(model.basis[model.bar[k]][0] != model.basis[k][0] for k in range(n)):
        bad.append("bar does not respect m")
    if n != sum(model.mu):
        bad.append("basis size differs from N")
    if not np.array_equal(B.T, eps * B):
        bad.append("B is not eps-symmetric")
    r = Counter(model.mu)
    for k, (m, s, i) in enumerate(model.basis):
        # blocks paired with a partner block: the second half is fixed by eps-symmetry
        sign = 1 if (-1) ** m == -eps or 2 * s <= r[m] else -1
        if B[k, model.bar[k]] != sign * (-1) ** (i + 1):
            bad.append(f"B(v, vbar) wrong at {(m, s, i)}")
            break
    if np.count_nonzero(B) != n:
        bad.append("B is not monomial")
    if not np.array_equal(e.T @ B + B @ e, np.zeros_like(B)):
        bad.append("e is not in the Lie algebra of B")
    if not _grade_preserving(model, e, 2):
        bad.append("e does not raise degree by 2")
    if Counter(model.grading) != Counter(-g for g in model.grading):
        bad.append("grading is not symmetric")
    if jordan_type(model) != tuple(model.mu):
        bad.append("Jordan type of e differs from mu")
    for (k, s), a in model.involutions.items():
        if not np.array_equal(a @ a, np.eye(n, dtype=np.int64)):
            bad.append(f"a_{s}^({k}) is not an involution")
        if not np.array_equal(a.T @ B @ a, B):
            bad.append(f"a_{s}^({k}) does not preserve B")
        if not np.array_equal(a @ e, e @ a):
            bad.append(f"a_{s}^({k}) does not commute with e")
        if not _grade_preserving(model, a):
            bad.append(f"a_{s}^({k}) does not preserve the grading")
        if round(np.linalg.det(a)) != (-1) ** k:
            bad.append(f"det a_{s}^({k}) is not (-1)^k")
    return bad


def jordan_type(model: Model) -> tuple[int, ...]:
    """Block sizes of e from the ranks of its powers."""
    n = model.N
    ranks = [n]
    p = np.eye(n, dtype=np.int64)
    while ranks[-1] > 0:
        p = p @ model.e
        ranks.append(la.rank(p.tolist()))
    at_least = [ranks[j - 1] - ranks[j] for j in range(1, len(ranks))]  # blocks of size >= j
    sizes = []
    for j in range(len(at_least)):
        exact = at_least[j] - (at_least[j + 1] if j + 1 < len(at_least) else 0)
        sizes.extend([j + 1] * exact)
    return tuple(sorted(sizes, reverse=True))


@dataclass(frozen=True)
class LeviFactor:
    m: int
    dim: int
    kind: str  # "O" for a symmetric B_m, "Sp" for an alternating one


def centralizer_levi_factor(model: Model) -> list[LeviFactor]:
    out = []
    em = {}
    for m in sorted(set(model.mu), reverse=True):
        if m not in em:
            em[m] = np.linalg.matrix_power(model.e, m - 1)
        idx = [model.position[(m, s, 1)] for s in range(1, model.mu.count(m) + 1)]
        Bm = (model.B @ em[m])[np.ix_(idx, idx)]
        if la.rank(Bm.tolist()) != len(idx):
            raise ModelError(f"B_{m} is degenerate")
        symmetric = np.array_equal(Bm, Bm.T)
        alternating = np.array_equal(Bm, -Bm.T) and not np.any(np.diag(Bm))
        expect_sym = (-1) ** m == -model.epsilon
        if expect_sym and not symmetric or not expect_sym and not alternating:
            raise ModelError(f"B_{m} has the wrong symmetry")
        out.append(LeviFactor(m, len(idx), "O" if expect_sym else "Sp"))
    return out


def model_grading_dims(model: Model) -> dict[int, int]:
    """``dim g(i)`` by solving ``X^T B + B X = 0`` inside each graded piece of gl(V)."""
    n, B, gr = model.N, model.B, model.grading
    out = {}
    for i in sorted({a - b for a in gr for b in gr}):
        vars_ = [(a, b) for a in range(n) for b in range(n) if gr[a] - gr[b] == i]
        col = {v: k for k, v in enumerate(vars_)}
        rows = []
        for p in range(n):
            for q in range(n):
                # (X^T B + B X)[p, q] = sum_c X[c, p] B[c, q] + B[p, c] X[c, q]
                row = [0] * len(vars_)
                for c in range(n):
                    if B[c, q] and (c, p) in col:
                        row[col[(c, p)]] += int(B[c, q])
                    if B[p, c] and (c, q) in col:
                        row[col[(c, q)]] += int(B[p, c])
                if any(row):
                    rows.append(row)
        dim = len(vars_) - (la.rank(rows) if rows else 0)
        if dim:
            out[i] = dim
    return out


# ---------------------------------------------------------------------------
# Admissibility checks
# ---------------------------------------------------------------------------

@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""


@dataclass
class AdmissibilityReport:
    mu: tuple[int, ...]
    epsilon: int
    generators: list[str]
    checks: list[Check]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def failed(self) -> list[str]:
        return [c.name for c in self.checks if not c.ok]

    def to_json(self) -> dict:
        return {"mu": list(self.mu), "epsilon": self.epsilon, "generators": self.generators,
                "ok": self.ok, "checks": [{"name": c.name, "ok": c.ok, "detail": c.detail} for c in self.checks]}


def _eigenspace(g: np.ndarray, value: int) -> list[list[Fraction]]:
    return la.nullspace((g - value * np.eye(len(g), dtype=np.int64)).tolist())


def _intersection_dim(U: list, W: list) -> int:
    if not U or not W:
        return 0
    return len(U) + len(W) - la.rank(U + W)


def verify_admissible(model: Model, spec: CoveringSpec) -> AdmissibilityReport:
    n = model.N
    mats = [model.generator_matrix(g) for g in spec.generators]
    names = [format_generator(g) for g in spec.generators]
    checks = []
    eye = np.eye(n, dtype=np.int64)

    checks.append(Check("K0 grading preserved", all(_grade_preserving(model, a) for a in mats)))
    checks.append(Check("K0 centralises e", all(np.array_equal(a @ model.e, model.e @ a) for a in mats)))
    checks.append(Check("preserves B", all(np.array_equal(a.T @ model.B @ a, model.B) for a in mats)))
    checks.append(Check("in SL(V|B)", all(round(np.linalg.det(a)) == 1 for a in mats)))
    diag = all(np.count_nonzero(a - np.diag(np.diag(a))) == 0 for a in mats)
    checks.append(Check("K1 semisimple involutions", diag and all(np.array_equal(a @ a, eye) for a in mats)))

    v0 = model.V(0)
    restricted = [a[np.ix_(v0, v0)] for a in mats]
    if model.epsilon == -1:
        ok = all(np.array_equal(a, np.eye(len(v0), dtype=np.int64)) for a in restricted)
        checks.append(Check("K2 identity on V(0)", ok))
    else:
        bad = []
        spaces = [_eigenspace(a, -1) if len(v0) else [] for a in restricted]
        for x in range(len(mats)):
            for y in range(x + 1, len(mats)):
                d = _intersection_dim(spaces[x], spaces[y])
                if d:
                    bad.append(f"{names[x]} & {names[y]} share {d}")
        checks.append(Check("K2 disjoint (-1)-eigenspaces on V(0)", not bad, "; ".join(bad)))

    commute = all(np.array_equal(a @ b, b @ a) for a in mats for b in mats)
    checks.append(Check("K3 elementary abelian, trivial commutator", commute and diag))
    return AdmissibilityReport(model.mu, model.epsilon, names, checks)


def to_fraction_pairs(mat: np.ndarray) -> list[list[list[int]]]:
    """JSON form of an integer matrix as ``[num, den]`` pairs."""
    return [[[int(x), 1] for x in row] for row in mat]


def dump_model(model: Model) -> dict:
    return {"mu": list(model.mu), "epsilon": model.epsilon,
            "basis": [list(b) for b in model.basis], "grading": model.grading,
            "B": to_fraction_pairs(model.B), "e": to_fraction_pairs(model.e),
            "involutions": {f"a_{s}^({k})": to_fraction_pairs(a) for (k, s), a in model.involutions.items()}}
