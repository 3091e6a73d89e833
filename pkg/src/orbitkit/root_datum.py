"""Based root data, root systems, Weyl group elements and lattice arithmetic.

Conventions (Bourbaki numbering throughout):

* ``cartan[i][j] = <alpha_i^vee, alpha_j>``.  This is the matrix ``D`` of the
  fusion algorithm; e.g. B2 gives ``[[2, -1], [-2, 2]]``.
* Roots are integer vectors of coordinates over the simple roots.
* Coroots are integer vectors of coordinates over the simple coroots.
* Coweights are rational vectors over the fundamental coweights, so that
  ``<alpha_i, lam> = lam[i]``; weights are rational vectors over the
  fundamental weights.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations
from typing import Iterable, Sequence

from sympy import Matrix, isprime
from sympy.matrices.normalforms import smith_normal_decomp

from . import _linalg as la

FAMILIES = "ABCDEFG"
_MIN_RANK = {"A": 1, "B": 1, "C": 1, "D": 2, "E": 6, "F": 4, "G": 2}
_MAX_RANK = {"E": 8, "F": 4, "G": 2}

CartanType = tuple[tuple[str, int], ...]


class RootDatumError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Cartan types
# ---------------------------------------------------------------------------

def parse_cartan_type(spec: str | Sequence) -> CartanType:
    """Parse ``"E7"``, ``"B3+A1"``, ``"2A1"`` or a list of (family, rank)."""
    if not isinstance(spec, str):
        comps = tuple((str(f).upper(), int(r)) for f, r in spec)
    else:
        comps = []
        for tok in spec.replace(" ", "").split("+"):
            m = re.fullmatch(r"(\d*)([A-Ga-g])(\d+)", tok)
            if not m:
                raise RootDatumError(f"cannot parse Cartan type component {tok!r}")
            mult = int(m.group(1) or 1)
            comps.extend([(m.group(2).upper(), int(m.group(3)))] * mult)
        comps = tuple(comps)
    if not comps:
        raise RootDatumError("empty Cartan type")
    for fam, r in comps:
        if fam not in FAMILIES:
            raise RootDatumError(f"unknown family {fam!r}")
        if r < _MIN_RANK[fam] or r > _MAX_RANK.get(fam, 10**6):
            raise RootDatumError(f"rank {r} out of range for family {fam}")
    return comps


def type_string(ct: CartanType) -> str:
    return "+".join(f"{f}{r}" for f, r in ct)


def _simple_cartan(fam: str, n: int) -> tuple[list[list[int]], list[Fraction]]:
    """Cartan matrix (``<alpha_i^vee, alpha_j>``) and squared lengths."""
    c = [[2 * (i == j) for j in range(n)] for i in range(n)]
    lengths = [Fraction(2)] * n

    def link(i, j, a=-1, b=-1):
        c[i][j], c[j][i] = a, b

    if fam in "ABC":
        for i in range(n - 1):
            link(i, i + 1)
        if fam == "B" and n >= 2:
            link(n - 2, n - 1, -1, -2)
            lengths[n - 1] = Fraction(1)
        if fam == "C" and n >= 2:
            link(n - 2, n - 1, -2, -1)
            lengths = [Fraction(1)] * (n - 1) + [Fraction(2)]
    elif fam == "D":
        if n == 2:
            pass
        elif n == 3:
            link(0, 1)
            link(0, 2)
        else:
            for i in range(n - 2):
                link(i, i + 1)
            link(n - 3, n - 1)
    elif fam == "E":
        link(0, 2)
        link(1, 3)
        for i in range(2, n - 1):
            link(i, i + 1)
    elif fam == "F":
        link(0, 1)
        link(1, 2, -1, -2)
        link(2, 3)
        lengths = [Fraction(2), Fraction(2), Fraction(1), Fraction(1)]
    elif fam == "G":
        link(0, 1, -3, -1)
        lengths = [Fraction(1), Fraction(3)]
    return c, lengths


def cartan_of_type(ct: CartanType) -> tuple[list[list[int]], list[Fraction]]:
    n = sum(r for _, r in ct)
    c = [[0] * n for _ in range(n)]
    lengths: list[Fraction] = []
    off = 0
    for fam, r in ct:
        sub, ls = _simple_cartan(fam, r)
        for i in range(r):
            for j in range(r):
                c[off + i][off + j] = sub[i][j]
        lengths.extend(ls)
        off += r
    return c, lengths


def symmetrizer(cartan: Sequence[Sequence[int]]) -> list[Fraction]:
    """Squared root lengths making ``(a_i, a_j) = cartan[i][j] * l_i / 2`` symmetric."""
    n = len(cartan)
    lengths: list[Fraction | None] = [None] * n
    for start in range(n):
        if lengths[start] is not None:
            continue
        lengths[start] = Fraction(1)
        comp, stack = [start], [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if j != i and cartan[i][j] != 0 and lengths[j] is None:
                    lengths[j] = lengths[i] * Fraction(cartan[i][j], cartan[j][i])
                    comp.append(j)
                    stack.append(j)
        top = max(lengths[i] for i in comp)
        for i in comp:
            lengths[i] = lengths[i] * 2 / top
    return lengths  # type: ignore[return-value]


def check_cartan(cartan: Sequence[Sequence[int]]) -> None:
    n = len(cartan)
    for i in range(n):
        if cartan[i][i] != 2:
            raise RootDatumError("Cartan diagonal must be 2")
        for j in range(n):
            if i == j:
                continue
            if cartan[i][j] > 0 or (cartan[i][j] == 0) != (cartan[j][i] == 0):
                raise RootDatumError("invalid off-diagonal Cartan entries")
            if cartan[i][j] * cartan[j][i] not in (0, 1, 2, 3):
                raise RootDatumError("non-crystallographic Cartan entries")


def weyl_order_of_type(ct: CartanType) -> int:
    out = 1
    for fam, n in ct:
        if fam == "A":
            out *= math.factorial(n + 1)
        elif fam in "BC":
            out *= 2**n * math.factorial(n)
        elif fam == "D":
            out *= 2 ** (n - 1) * math.factorial(n)
        else:
            out *= {("E", 6): 51840, ("E", 7): 2903040, ("E", 8): 696729600,
                    ("F", 4): 1152, ("G", 2): 12}[(fam, n)]
    return out


# ---------------------------------------------------------------------------
# Cartan matrix classification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Component:
    family: str
    rank: int
    nodes: tuple[int, ...]  # indices into the classified matrix, in Bourbaki order

    @property
    def name(self) -> str:
        return f"{self.family}{self.rank}"


def _components(cartan) -> list[list[int]]:
    n = len(cartan)
    seen, comps = set(), []
    for s in range(n):
        if s in seen:
            continue
        comp, stack = [], [s]
        seen.add(s)
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in range(n):
                if j not in seen and cartan[i][j] != 0:
                    seen.add(j)
                    stack.append(j)
        comps.append(sorted(comp))
    return comps


def _path_from(start, adj):
    path, prev = [start], None
    while True:
        nxt = [j for j in adj[path[-1]] if j != prev]
        if not nxt:
            return path
        prev = path[-1]
        path.append(nxt[0])


def classify_cartan(cartan: Sequence[Sequence[int]]) -> list[Component]:
    """Identify the connected components of a Cartan matrix with Bourbaki types.

    Each component records its nodes listed in Bourbaki order, so that
    ``cartan`` restricted and permuted by ``nodes`` equals the standard matrix.
    B2 and C2 are both reported as B2 (long root first); D3 as A3, D2 as 2A1.
    """
    check_cartan(cartan)
    out = []
    for comp in _components(cartan):
        adj = {i: [j for j in comp if j != i and cartan[i][j] != 0] for i in comp}
        n = len(comp)
        edges = [(i, j) for i in comp for j in adj[i] if i < j]
        if len(edges) != n - 1:
            raise RootDatumError("Dynkin diagram contains a cycle")
        bonds = {(i, j): cartan[i][j] * cartan[j][i] for i, j in edges}
        leaves = [i for i in comp if len(adj[i]) <= 1]
        branch = [i for i in comp if len(adj[i]) >= 3]
        if n == 1:
            out.append(Component("A", 1, (comp[0],)))
            continue
        multi = [(e, b) for e, b in bonds.items() if b > 1]
        if not multi:
            if not branch:
                path = _path_from(min(leaves), adj)
                out.append(Component("A", n, tuple(path)))
                continue
            if len(branch) != 1 or len(adj[branch[0]]) != 3:
                raise RootDatumError("not a finite-type diagram")
            b = branch[0]
            arms = []
            for nb in adj[b]:
                arm, prev = [nb], b
                while True:
                    nxt = [j for j in adj[arm[-1]] if j != prev]
                    if not nxt:
                        break
                    prev = arm[-1]
                    arm.append(nxt[0])
                arms.append(arm)
            arms.sort(key=lambda a: (len(a), a[-1]))
            lens = tuple(len(a) for a in arms)
            if lens == (1, 1, 1):
                nodes = [arms[0][0], b, arms[1][0], arms[2][0]]
                out.append(Component("D", 4, tuple(nodes)))
            elif lens[0] == 1 and lens[1] == 1:
                long_arm = arms[2]
                nodes = list(reversed(long_arm)) + [b, arms[0][0], arms[1][0]]
                out.append(Component("D", n, tuple(nodes)))
            elif lens in ((1, 2, 2), (1, 2, 3), (1, 2, 4)):
                short, a2, a3 = arms
                nodes = [a2[1], short[0], a2[0], b] + a3
                out.append(Component("E", n, tuple(nodes)))
            else:
                raise RootDatumError("not a finite-type diagram")
            continue
        if len(multi) != 1 or branch:
            raise RootDatumError("not a finite-type diagram")
        (i, j), m = multi[0]
        short = i if cartan[i][j] < -1 else j
        long_ = j if short == i else i
        if m == 3:
            if n != 2:
                raise RootDatumError("not a finite-type diagram")
            out.append(Component("G", 2, (short, long_)))
            continue
        if n == 2:
            out.append(Component("B", 2, (long_, short)))
            continue
        if len(adj[short]) == 1 and len(adj[long_]) == 2:
            path = list(reversed(_path_from(short, adj)))
            out.append(Component("B", n, tuple(path)))
        elif len(adj[long_]) == 1 and len(adj[short]) == 2:
            path = list(reversed(_path_from(long_, adj)))
            out.append(Component("C", n, tuple(path)))
        elif n == 4:
            start = next(x for x in adj[long_] if x != short)
            out.append(Component("F", 4, tuple(_path_from(start, adj))))
        else:
            raise RootDatumError("not a finite-type diagram")
    return out


def canonical_components(comps: Iterable[Component]) -> CartanType:
    order = {f: k for k, f in enumerate("EDCBAFG")}
    norm = []
    for c in comps:
        norm.append(_normalise_family(c.family, c.rank))
    flat = [x for group in norm for x in group]
    return tuple(sorted(flat, key=lambda fr: (-fr[1], order[fr[0]])))


def _normalise_family(fam: str, r: int) -> list[tuple[str, int]]:
    if fam in "BC" and r == 1:
        return [("A", 1)]
    if fam == "C" and r == 2:
        return [("B", 2)]
    if fam == "D" and r == 3:
        return [("A", 3)]
    if fam == "D" and r == 2:
        return [("A", 1), ("A", 1)]
    return [(fam, r)]


def same_type(a, b) -> bool:
    """Compare Cartan types up to order and the small-rank coincidences."""
    def norm(x):
        if isinstance(x, str):
            x = parse_cartan_type(x)
        flat = []
        for c in x:
            fam, r = (c.family, c.rank) if isinstance(c, Component) else c
            flat.extend(_normalise_family(fam, r))
        return sorted(flat)
    return norm(a) == norm(b)


# ---------------------------------------------------------------------------
# Root data
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class RootDatum:
    rank_X: int
    simple_roots: tuple[tuple[int, ...], ...]
    simple_coroots: tuple[tuple[int, ...], ...]
    pairing: tuple[tuple[int, ...], ...]
    cartan_type: CartanType
    isogeny_tag: str
    lengths: tuple[Fraction, ...] = field(repr=False)
    name: str = ""

    def __post_init__(self):
        c = self.cartan
        check_cartan(c)

    @property
    def rank(self) -> int:
        return len(self.simple_roots)

    @cached_property
    def cartan(self) -> list[list[int]]:
        """``cartan[i][j] = <alpha_i^vee, alpha_j>`` through the pairing."""
        n = self.rank
        out = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                out[i][j] = sum(self.simple_roots[j][a] * self.pairing[a][b] * self.simple_coroots[i][b]
                                for a in range(self.rank_X) for b in range(self.rank_X))
        return out

    @cached_property
    def form(self) -> list[list[Fraction]]:
        """Invariant form on the root lattice: ``(alpha_i, alpha_j)``."""
        c = self.cartan
        return [[c[i][j] * self.lengths[i] / 2 for j in range(self.rank)] for i in range(self.rank)]

    @cached_property
    def roots(self) -> "RootSystem":
        return RootSystem(self)

    def __repr__(self) -> str:
        return f"RootDatum({self.name or type_string(self.cartan_type)}, {self.isogeny_tag})"

    def to_json(self) -> dict:
        return {"cartan_type": type_string(self.cartan_type), "isogeny": self.isogeny_tag,
                "simple_roots": [list(r) for r in self.simple_roots],
                "simple_coroots": [list(r) for r in self.simple_coroots],
                "cartan": self.cartan}


def build_root_datum(cartan_type: str | Sequence, isogeny_tag: str = "adjoint") -> RootDatum:
    ct = parse_cartan_type(cartan_type)
    c, lengths = cartan_of_type(ct)
    n = len(c)
    ident = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    if isogeny_tag == "adjoint":
        # X has basis the simple roots, X^vee the fundamental coweights.
        roots = ident
        coroots = tuple(tuple(c[i]) for i in range(n))
    elif isogeny_tag == "simply_connected":
        roots = tuple(tuple(c[j][i] for j in range(n)) for i in range(n))
        coroots = ident
    else:
        raise RootDatumError(f"unknown isogeny tag {isogeny_tag!r}")
    return RootDatum(n, roots, coroots, ident, ct, isogeny_tag, tuple(lengths), type_string(ct))


def datum_from_cartan(cartan: Sequence[Sequence[int]], name: str = "") -> RootDatum:
    """Adjoint-style datum for an arbitrary Cartan matrix, keeping its node order."""
    check_cartan(cartan)
    n = len(cartan)
    comps = classify_cartan(cartan)
    ct = tuple((comp.family, comp.rank) for comp in comps)
    ident = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    coroots = tuple(tuple(int(x) for x in cartan[i]) for i in range(n))
    return RootDatum(n, ident, coroots, ident, ct, "custom", tuple(symmetrizer(cartan)),
                     name or type_string(ct))


# ---------------------------------------------------------------------------
# Root systems and the Weyl group
# ---------------------------------------------------------------------------

def _height_key(v):
    return (sum(v), tuple(-x for x in v))


class RootSystem:
    """Positive roots (by height, then Bourbaki-lexicographic) and signed-root tables.

    Signed roots are indexed ``0..N-1`` (positive) and ``N..2N-1`` (their negatives).
    """

    def __init__(self, datum: RootDatum):
        self.datum = datum
        c = datum.cartan
        n = datum.rank
        self.rank = n
        simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
        found = set(simple)
        frontier = list(simple)
        while frontier:
            new = []
            for v in frontier:
                for i in range(n):
                    p = sum(v[j] * c[i][j] for j in range(n))
                    w = tuple(v[j] - p * (j == i) for j in range(n))
                    if any(x > 0 for x in w) and w not in found:
                        found.add(w)
                        new.append(w)
            frontier = new
        self.positive = sorted(found, key=_height_key)
        N = len(self.positive)
        self.N = N
        self.all = self.positive + [tuple(-x for x in v) for v in self.positive]
        self.index = {v: k for k, v in enumerate(self.all)}
        self.heights = [sum(v) for v in self.positive]
        self.coroots_all = [self._coroot(v) for v in self.all]
        self.coroots = self.coroots_all[:N]
        self.simple_perm = [self._reflection_perm(i) for i in range(n)]

    def _coroot(self, v) -> tuple[int, ...]:
        form, ls = self.datum.form, self.datum.lengths
        n = self.rank
        norm = sum(v[i] * v[j] * form[i][j] for i in range(n) for j in range(n))
        out = []
        for i in range(n):
            x = v[i] * ls[i] / norm
            if x.denominator != 1:
                raise RootDatumError("non-integral coroot")
            out.append(int(x))
        return tuple(out)

    def pair(self, root, coroot) -> int:
        """``<alpha, beta^vee>`` for a root and a coroot in simple (co)root coordinates."""
        c = self.datum.cartan
        n = self.rank
        return sum(coroot[i] * c[i][j] * root[j] for i in range(n) for j in range(n) if coroot[i] and root[j])

    def reflect(self, k: int, v: Sequence) -> list:
        """``s_beta(v)`` for the signed root index k acting on a root-coordinate vector."""
        beta, cb = self.all[k], self.coroots_all[k]
        p = self.pair(v, cb)
        return [v[j] - p * beta[j] for j in range(self.rank)]

    def _reflection_perm(self, i: int) -> tuple[int, ...]:
        k = i
        return tuple(self.index[tuple(self.reflect(k, v))] for v in self.all)

    def reflection_perm(self, k: int) -> tuple[int, ...]:
        return tuple(self.index[tuple(self.reflect(k, v))] for v in self.all)

    @property
    def highest_root(self) -> tuple[int, ...]:
        if len(_components(self.datum.cartan)) != 1:
            raise RootDatumError("highest root needs an irreducible system")
        return self.positive[-1]

    @property
    def highest_index(self) -> int:
        return self.N - 1

    def is_positive(self, k: int) -> bool:
        return k < self.N

    def negate(self, k: int) -> int:
        return k + self.N if k < self.N else k - self.N

    def root_length(self, v) -> Fraction:
        form = self.datum.form
        n = self.rank
        return sum(v[i] * v[j] * form[i][j] for i in range(n) for j in range(n))

    def __len__(self):
        return 2 * self.N


def generate_roots(datum: RootDatum) -> RootSystem:
    return datum.roots


@dataclass(frozen=True)
class WeylElement:
    perm: tuple[int, ...]
    word: tuple[int, ...] | None = field(default=(), compare=False)

    def __hash__(self):
        return hash(self.perm)

    def __call__(self, k: int) -> int:
        return self.perm[k]


def identity_element(rs: RootSystem) -> WeylElement:
    return WeylElement(tuple(range(2 * rs.N)), ())


def simple_reflection(rs: RootSystem, i: int) -> WeylElement:
    return WeylElement(rs.simple_perm[i], (i,))


def reflection(rs: RootSystem, k: int) -> WeylElement:
    return WeylElement(rs.reflection_perm(k), None)


def compose(a: WeylElement, b: WeylElement) -> WeylElement:
    """The product ``a b`` (apply b first)."""
    word = a.word + b.word if a.word is not None and b.word is not None else None
    return WeylElement(tuple(a.perm[x] for x in b.perm), word)


def inverse(a: WeylElement) -> WeylElement:
    inv = [0] * len(a.perm)
    for i, x in enumerate(a.perm):
        inv[x] = i
    word = tuple(reversed(a.word)) if a.word is not None else None
    return WeylElement(tuple(inv), word)


def from_word(rs: RootSystem, word: Iterable[int]) -> WeylElement:
    w = identity_element(rs)
    for i in word:
        w = compose(w, simple_reflection(rs, i))
    return w


def inversion_set(rs: RootSystem, w: WeylElement) -> list[int]:
    """``{alpha > 0 : w^{-1} alpha < 0}`` as positive root indices."""
    winv = inverse(w)
    return [k for k in range(rs.N) if not rs.is_positive(winv.perm[k])]


def length(rs: RootSystem, w: WeylElement) -> int:
    return sum(1 for k in range(rs.N) if not rs.is_positive(w.perm[k]))


def root_matrix(rs: RootSystem, w: WeylElement) -> list[list[int]]:
    """Columns are ``w(alpha_j)`` in simple-root coordinates."""
    cols = [rs.all[w.perm[j]] for j in range(rs.rank)]
    return [[cols[j][i] for j in range(rs.rank)] for i in range(rs.rank)]


def act(rs: RootSystem, w: WeylElement, v: Sequence, side: str = "coweight") -> list[Fraction]:
    """Linear action of w on a root, weight or coweight vector.

    ``side`` is ``"root"`` (simple-root coordinates), ``"weight"``
    (fundamental weights) or ``"coweight"`` (fundamental coweights).
    """
    n = rs.rank
    if len(v) != n:
        raise RootDatumError("dimension mismatch")
    v = [Fraction(x) for x in v]
    if side == "root":
        m = root_matrix(rs, w)
        return [sum(m[i][j] * v[j] for j in range(n)) for i in range(n)]
    winv = inverse(w)
    if side == "coweight":
        # <alpha_i, w lam> = <w^{-1} alpha_i, lam>
        return [sum(rs.all[winv.perm[i]][j] * v[j] for j in range(n)) for i in range(n)]
    if side == "weight":
        return [sum(rs.coroots_all[winv.perm[i]][j] * v[j] for j in range(n)) for i in range(n)]
    raise RootDatumError(f"unknown side {side!r}")


def pair_root_coweight(root: Sequence, lam: Sequence):
    return sum(a * b for a, b in zip(root, lam))


def element_with_inversions(rs: RootSystem, f: Sequence) -> tuple[WeylElement, list]:
    """Dominance algorithm.

    ``f`` gives the values of a linear form on the simple roots.  Returns
    ``(w, f_w)`` where the inversion set of w is ``{alpha > 0 : f(alpha) < 0}``
    and ``f_w = f o w`` is non-negative on the positive roots.
    """
    g = [Fraction(x) for x in f]
    c = rs.datum.cartan
    w = identity_element(rs)
    while True:
        i = next((i for i in range(rs.rank) if g[i] < 0), None)
        if i is None:
            return w, g
        # (g o s_i)(alpha_j) = g(alpha_j) - <alpha_j, alpha_i^vee> g(alpha_i)
        gi = g[i]
        g = [g[j] - c[i][j] * gi for j in range(rs.rank)]
        w = compose(w, simple_reflection(rs, i))


def longest_element(rs: RootSystem, J: Iterable[int] | None = None) -> WeylElement:
    """Longest element of the parabolic subgroup W_J (J = simple root indices)."""
    J = list(range(rs.rank)) if J is None else sorted(J)
    w = identity_element(rs)
    changed = True
    while changed:
        changed = False
        for j in J:
            if rs.is_positive(w.perm[j]):
                w = compose(w, simple_reflection(rs, j))
                changed = True
    return w


def longest_in_subsystem(rs: RootSystem, simple: Sequence[int]) -> WeylElement:
    """Longest element of the reflection group generated by the given simple system.

    ``simple`` are signed root indices forming a simple system whose positive
    roots are positive in the ambient system.
    """
    refl = {k: reflection(rs, k) for k in simple}
    w = identity_element(rs)
    changed = True
    while changed:
        changed = False
        for k in simple:
            if rs.is_positive(w.perm[k]):
                w = compose(w, refl[k])
                changed = True
    return w


def rho_permutation(rs: RootSystem) -> list[int]:
    """``rho(alpha_i) = -w0(alpha_i)`` as a permutation of simple root indices."""
    w0 = longest_element(rs)
    out = []
    for i in range(rs.rank):
        k = rs.negate(w0.perm[i])
        if k >= rs.rank:
            raise RootDatumError("w0 does not map simple roots to negative simple roots")
        out.append(k)
    return out


# ---------------------------------------------------------------------------
# Lattices
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LatticeQuotient:
    ambient_rank: int
    sublattice_gens: tuple[tuple[int, ...], ...]
    elementary_divisors: tuple[int, ...]
    U: tuple[tuple[int, ...], ...] = field(repr=False, default=())
    V: tuple[tuple[int, ...], ...] = field(repr=False, default=())

    @property
    def torsion(self) -> tuple[int, ...]:
        return tuple(d for d in self.elementary_divisors if d > 1)

    @property
    def torsion_order(self) -> int:
        return math.prod(self.torsion)

    @property
    def free_rank(self) -> int:
        return self.ambient_rank - sum(1 for d in self.elementary_divisors if d != 0)

    def has_p_torsion(self, p: int) -> bool:
        return any(d % p == 0 for d in self.torsion)


def smith_normal_form(M: Sequence[Sequence[int]], ambient_rank: int | None = None) -> LatticeQuotient:
    """Elementary divisors of the row lattice of M, with U M V = diag recorded."""
    rows = [list(map(int, r)) for r in M]
    n = ambient_rank if ambient_rank is not None else (len(rows[0]) if rows else 0)
    if not rows:
        return LatticeQuotient(n, (), ())
    mat = Matrix(rows)
    d, u, v = smith_normal_decomp(mat)
    k = min(mat.shape)
    divs = [abs(int(d[i, i])) for i in range(k)]
    if u * mat * v != d:
        raise ArithmeticError("Smith normal form check failed")
    if abs(u.det()) != 1 or abs(v.det()) != 1:
        raise ArithmeticError("Smith transforms not unimodular")
    nonzero = sorted(x for x in divs if x != 0)
    divs = tuple(nonzero + [0] * (len(divs) - len(nonzero)))
    return LatticeQuotient(n, tuple(tuple(r) for r in rows), divs,
                           tuple(tuple(int(x) for x in u.row(i)) for i in range(u.rows)),
                           tuple(tuple(int(x) for x in v.row(i)) for i in range(v.rows)))


def root_vector_in_X(datum: RootDatum, root: Sequence[int]) -> tuple[int, ...]:
    return tuple(sum(root[i] * datum.simple_roots[i][a] for i in range(datum.rank)) for a in range(datum.rank_X))


def coroot_vector_in_Xv(datum: RootDatum, coroot: Sequence[int]) -> tuple[int, ...]:
    return tuple(sum(coroot[i] * datum.simple_coroots[i][a] for i in range(datum.rank)) for a in range(datum.rank_X))


def root_lattice_quotient(datum: RootDatum, roots: Iterable[Sequence[int]] | None = None) -> LatticeQuotient:
    """``X / Z Psi`` for a set of roots (all simple roots by default)."""
    roots = [tuple(r) for r in (roots if roots is not None else datum.roots.positive[:datum.rank])]
    return smith_normal_form([root_vector_in_X(datum, r) for r in roots], datum.rank_X)


def coroot_lattice_quotient(datum: RootDatum, coroots: Iterable[Sequence[int]] | None = None) -> LatticeQuotient:
    coroots = [tuple(r) for r in (coroots if coroots is not None else datum.roots.positive[:datum.rank])]
    return smith_normal_form([coroot_vector_in_Xv(datum, r) for r in coroots], datum.rank_X)


def hermite_normal_form(rows: Iterable[Sequence[int]]) -> tuple[tuple[int, ...], ...]:
    """Row-style Hermite normal form (canonical basis of the row lattice)."""
    a = [list(r) for r in rows if any(r)]
    if not a:
        return ()
    ncols = len(a[0])
    out = []
    col = 0
    while a and col < ncols:
        nz = [r for r in a if r[col] != 0]
        if not nz:
            col += 1
            continue
        while len([r for r in a if r[col] != 0]) > 1:
            nz = sorted((r for r in a if r[col] != 0), key=lambda r: abs(r[col]))
            piv = nz[0]
            for r in nz[1:]:
                q = r[col] // piv[col]
                for t in range(ncols):
                    r[t] -= q * piv[t]
            a = [r for r in a if any(r)]
        piv = next(r for r in a if r[col] != 0)
        a.remove(piv)
        if piv[col] < 0:
            piv = [-x for x in piv]
        for r in out:
            q = r[col] // piv[col]
            if q:
                for t in range(ncols):
                    r[t] -= q * piv[t]
        out.append(piv)
        col += 1
    return tuple(tuple(r) for r in out)


# ---------------------------------------------------------------------------
# Primes
# ---------------------------------------------------------------------------

def bad_primes(cartan_type: str | Sequence) -> set[int]:
    out: set[int] = set()
    for fam, r in parse_cartan_type(cartan_type):
        if fam in "BCD" and not (fam in "BC" and r == 1) and not (fam == "D" and r <= 3):
            out.add(2)
        elif fam in "EFG":
            out |= {2, 3}
            if fam == "E" and r == 8:
                out.add(5)
    return out


def good_primes(cartan_type: str | Sequence, bound: int = 100) -> set[int]:
    bad = bad_primes(cartan_type)
    return {p for p in range(2, bound + 1) if isprime(p) and p not in bad}


def _require_prime(p: int) -> None:
    if not isprime(p):
        raise RootDatumError(f"{p} is not prime")


def is_pretty_good(datum: RootDatum, p: int) -> bool:
    """p good, and no p-torsion in ``X/ZPhi`` or ``X^vee/ZPhi^vee``."""
    _require_prime(p)
    if p in bad_primes(datum.cartan_type):
        return False
    return not (root_lattice_quotient(datum).has_p_torsion(p) or
                coroot_lattice_quotient(datum).has_p_torsion(p))


def _all_spanned_lattices(vectors: Sequence[tuple[int, ...]]) -> set:
    """Every lattice spanned by a subset of ``vectors`` (as Hermite bases)."""
    seen = {()}
    frontier = [()]
    while frontier:
        new = []
        for lat in frontier:
            for v in vectors:
                nxt = hermite_normal_form(list(lat) + [v])
                if nxt not in seen:
                    seen.add(nxt)
                    new.append(nxt)
        frontier = new
    return seen


@lru_cache(maxsize=None)
def _subset_torsion_primes(datum: RootDatum) -> frozenset[int]:
    rs = datum.roots
    out: set[int] = set()
    for vecs, rank in (([root_vector_in_X(datum, r) for r in rs.positive], datum.rank_X),
                       ([coroot_vector_in_Xv(datum, r) for r in rs.coroots], datum.rank_X)):
        for lat in _all_spanned_lattices(vecs):
            if not lat:
                continue
            for d in smith_normal_form(lat, rank).torsion:
                out |= {q for q in range(2, d + 1) if d % q == 0 and isprime(q)}
    return frozenset(out)


def is_pretty_good_bruteforce(datum: RootDatum, p: int) -> bool:
    """Literal definition: no p-torsion in X/ZPsi or X^vee/ZPsi^vee for any Psi in Phi.

    The subsets are explored through the lattices they span, which is
    exhaustive because each span is reached by adding its roots one at a time.
    """
    _require_prime(p)
    if datum.rank > 4:
        raise RootDatumError("brute-force oracle limited to rank <= 4")
    return p not in _subset_torsion_primes(datum)


# ---------------------------------------------------------------------------
# Subsystems, the extended diagram and pseudo-Levis
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class EmbeddedSubsystem:
    """A root subsystem given by simple roots and coroots inside an ambient datum.

    ``simple_roots`` are (possibly rational) vectors over the ambient simple
    roots, ``simple_coroots`` vectors over the ambient simple coroots.  The
    matrix ``A`` of the fusion algorithm is ``simple_coroots`` itself.
    """
    ambient: RootDatum
    simple_roots: tuple[tuple, ...]
    simple_coroots: tuple[tuple, ...]
    labels: tuple = ()

    @cached_property
    def cartan(self) -> list[list[int]]:
        """``C[a][b] = <beta_a^vee, beta_b>``."""
        d = self.ambient.cartan
        n = self.ambient.rank
        out = []
        for cv in self.simple_coroots:
            row = []
            for r in self.simple_roots:
                x = sum(Fraction(cv[i]) * d[i][j] * Fraction(r[j]) for i in range(n) for j in range(n))
                if x.denominator != 1:
                    raise RootDatumError("non-integral subsystem Cartan entry")
                row.append(int(x))
            out.append(row)
        check_cartan(out)
        return out

    @cached_property
    def fusion_matrix(self) -> list[list[Fraction]]:
        """``C^{-1} A D``: sends a sub-diagram to the ambient values on simple roots."""
        cinv = la.inverse(self.cartan)
        return la.matmul(la.matmul(cinv, self.A), self.ambient.cartan)

    @property
    def A(self) -> list[list[Fraction]]:
        return [[Fraction(x) for x in cv] for cv in self.simple_coroots]

    @property
    def rank(self) -> int:
        return len(self.simple_roots)

    @cached_property
    def components(self) -> list[Component]:
        return classify_cartan(self.cartan)

    @cached_property
    def datum(self) -> RootDatum:
        return datum_from_cartan(self.cartan)

    def component_is_short(self, comp: Component) -> bool:
        """True if the component consists of short roots of a two-length ambient."""
        lens = [root_length_rational(self.ambient, self.simple_roots[i]) for i in comp.nodes]
        amb = _ambient_lengths_near(self.ambient, self.simple_roots[comp.nodes[0]])
        return len(amb) > 1 and max(lens) < max(amb)

    def type_label(self) -> str:
        parts = []
        for comp in self.components:
            for fam, r in _normalise_family(comp.family, comp.rank):
                tilde = "~" if (comp.rank == r and self.component_is_short(comp)) else ""
                parts.append((tilde, fam, r))
        return join_label_parts([(t + f"{f}{r}") for t, f, r in parts])

    @property
    def cartan_type(self) -> CartanType:
        return canonical_components(self.components)


def root_length_rational(datum: RootDatum, v: Sequence) -> Fraction:
    form = datum.form
    n = datum.rank
    return sum(Fraction(v[i]) * Fraction(v[j]) * form[i][j] for i in range(n) for j in range(n))


def _ambient_lengths_near(datum: RootDatum, v: Sequence) -> set:
    """Root lengths present in the ambient component supporting v."""
    comps = _components(datum.cartan)
    support = {i for i, x in enumerate(v) if x != 0}
    nodes = next((c for c in comps if support & set(c)), [])
    return {datum.lengths[i] for i in nodes}


def join_label_parts(parts: Sequence[str]) -> str:
    from collections import Counter
    order = {f: k for k, f in enumerate("EDCBAFG")}

    def key(p):
        m = re.match(r"(~?)([A-G])(\d+)(.*)", p)
        return (-int(m.group(3)), order[m.group(2)], m.group(1), m.group(4))

    cnt = Counter(parts)
    out = []
    for p in sorted(cnt, key=key):
        out.append(p if cnt[p] == 1 else f"{cnt[p]}{p}")
    return "+".join(out)


@dataclass(frozen=True)
class ExtendedDiagram:
    nodes: tuple[int, ...]                 # 0, 1, ..., n
    roots: tuple[tuple[int, ...], ...]     # node k -> root (node 0 = -highest root)
    coroots: tuple[tuple[int, ...], ...]
    edges: tuple[tuple[int, int, int], ...]  # (i, j, bond multiplicity)
    coefficients: tuple[int, ...]          # highest-root coefficients, node 0 -> 1


def extended_diagram(datum: RootDatum) -> ExtendedDiagram:
    rs = datum.roots
    hi = rs.highest_root
    n = datum.rank
    roots = [tuple(-x for x in hi)] + [rs.positive[i] for i in range(n)]
    coroots = [rs.coroots_all[rs.index[roots[0]]]] + [rs.coroots[i] for i in range(n)]
    edges = []
    for i in range(n + 1):
        for j in range(i + 1, n + 1):
            a = rs.pair(roots[j], coroots[i])
            b = rs.pair(roots[i], coroots[j])
            if a * b:
                edges.append((i, j, a * b))
    return ExtendedDiagram(tuple(range(n + 1)), tuple(roots), tuple(coroots), tuple(edges), (1,) + tuple(hi))


def parse_signed_subset(text: str | Sequence) -> list[int]:
    """Node indices of ``"{0,2,3,-4,5}"`` or ``"{2 | 0,1,3 | 5,6,7}"``; bars are separators."""
    return [abs(x) for x, _ in parse_signed_subset_signs(text)]


def parse_signed_subset_signs(text: str | Sequence) -> list[tuple[int, bool]]:
    if not isinstance(text, str):
        return [(abs(int(x)), int(x) >= 0) for x in text]
    body = text.strip().strip("{}").replace("|", ",")
    out = []
    for tok in body.split(","):
        tok = tok.strip()
        if not tok:
            continue
        neg = tok.startswith("-")
        out.append((int(tok.lstrip("+-")), not neg))
    return out


def pseudo_levi_from_subset(datum: RootDatum, J: Iterable[int]) -> EmbeddedSubsystem:
    ext = extended_diagram(datum)
    J = [abs(int(j)) for j in J]
    for j in J:
        if j < 0 or j > datum.rank:
            raise RootDatumError(f"invalid extended-diagram node {j}")
    if len(set(J)) != len(J):
        raise RootDatumError("repeated node in J")
    return EmbeddedSubsystem(datum, tuple(ext.roots[j] for j in J), tuple(ext.coroots[j] for j in J), tuple(J))


def levi_subsystem(datum: RootDatum, J: Iterable[int]) -> EmbeddedSubsystem:
    """Standard Levi for a subset of simple root indices (0-based)."""
    rs = datum.roots
    J = list(J)
    return EmbeddedSubsystem(datum, tuple(rs.positive[j] for j in J), tuple(rs.coroots[j] for j in J), tuple(J))


def subsystem_from_roots(datum: RootDatum, roots: Sequence[Sequence[int]], labels=()) -> EmbeddedSubsystem:
    rs = datum.roots
    roots = [tuple(int(x) for x in r) for r in roots]
    cor = [rs.coroots_all[rs.index[r]] for r in roots]
    return EmbeddedSubsystem(datum, tuple(roots), tuple(cor), tuple(labels))


def indecomposable(vectors: Sequence[tuple]) -> list[int]:
    """Indices of vectors that are not a sum of two vectors of the list."""
    s = set(vectors)
    out = []
    for k, v in enumerate(vectors):
        if not any(tuple(a - b for a, b in zip(v, u)) in s for u in vectors if u != v):
            out.append(k)
    return out


def isolated_centralizer_subsystem(datum: RootDatum, t: Sequence) -> EmbeddedSubsystem:
    """Root system ``{beta : <beta, t> in Z}`` of the centraliser of ``t in X^vee (x) Q/Z``.

    ``t`` is given over the fundamental coweights.  The simple system is the
    set of indecomposable roots in ``Sigma cap Phi^+``: simple roots of the
    ambient first (by index), then the remaining ones by height.
    """
    rs = datum.roots
    t = [Fraction(x) for x in t]
    pos = [v for v in rs.positive if pair_root_coweight(v, t).denominator == 1]
    simple = [pos[k] for k in indecomposable(pos)]
    simple.sort(key=lambda v: (sum(v) != 1, _height_key(v)))
    return subsystem_from_roots(datum, simple)


def coweight_from_spec(datum: RootDatum, spec: str) -> list[Fraction]:
    """Parse ``"w4:1/3"`` or ``"w1:2/3,w4:1/3,w6:2/3"`` into a coweight."""
    t = [Fraction(0)] * datum.rank
    for tok in spec.replace(" ", "").split(","):
        if not tok:
            continue
        m = re.fullmatch(r"w(\d+):(-?\d+(?:/\d+)?)", tok)
        if not m:
            raise RootDatumError(f"cannot parse coweight term {tok!r}")
        i = int(m.group(1))
        if not 1 <= i <= datum.rank:
            raise RootDatumError(f"coweight index {i} out of range")
        t[i - 1] += Fraction(m.group(2))
    return t


def parse_root(datum: RootDatum, tok: str) -> tuple[int, ...]:
    """A root from a node index (``"3"``; ``"0"`` = lowest root) or digit string (``"1242"``, ``"-12"``)."""
    tok = tok.strip()
    neg = tok.startswith("-")
    body = tok.lstrip("+-")
    n = datum.rank
    rs = datum.roots
    if n > 1 and len(body) == n and body.isdigit():
        v = tuple(int(c) for c in body)
    elif body.isdigit():
        k = int(body)
        if k == 0:
            v = tuple(-x for x in rs.highest_root)
        elif 1 <= k <= n:
            v = rs.positive[k - 1]
        else:
            raise RootDatumError(f"node index {k} out of range")
    else:
        raise RootDatumError(f"cannot parse root {tok!r}")
    if neg:
        v = tuple(-x for x in v)
    if v not in rs.index:
        raise RootDatumError(f"{tok!r} is not a root")
    return v


def format_root(v: Sequence[int]) -> str:
    if all(x >= 0 for x in v) and all(x < 10 for x in v):
        return "".join(str(x) for x in v)
    if all(x <= 0 for x in v) and all(x > -10 for x in v):
        return "-" + "".join(str(-x) for x in v)
    return "(" + ",".join(str(x) for x in v) + ")"


def all_types_up_to_rank(max_rank: int, irreducible: bool = True) -> list[str]:
    out = []
    for r in range(1, max_rank + 1):
        out.append(f"A{r}")
        if r >= 2:
            out.append(f"B{r}")
        if r >= 3:
            out.append(f"C{r}")
        if r >= 4:
            out.append(f"D{r}")
    for fam, r in (("G", 2), ("F", 4), ("E", 6), ("E", 7), ("E", 8)):
        if r <= max_rank:
            out.append(f"{fam}{r}")
    if not irreducible:
        simple = list(out)
        for a, b in combinations(simple + simple, 2):
            ra = sum(x for _, x in parse_cartan_type(a))
            rb = sum(x for _, x in parse_cartan_type(b))
            if ra + rb <= max_rank:
                name = f"{a}+{b}"
                if name not in out and f"{b}+{a}" not in out:
                    out.append(name)
    return out
