"""Finite permutation groups, exact character tables and the Fourier matrix on M(G).

Character tables are computed by the Dixon-Schneider method: the class
multiplication matrices are diagonalised simultaneously over a prime field
``F_p`` with ``p = 1 mod e``, and the values are lifted to ``Z[zeta_e]``
through the eigenvalue multiplicities of each element.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, reduce
from typing import Sequence

import numpy as np
from sympy import isprime, primitive_root

from . import _kernels
from . import _linalg as la
from .cyclotomic import CyclotomicField, field as cyclotomic_field

Perm = tuple[int, ...]
MAX_ORDER = 5000


class GroupError(ValueError):
    pass


def perm_mul(p: Perm, q: Perm) -> Perm:
    """``(pq)(i) = p(q(i))``."""
    return tuple(p[i] for i in q)


def perm_inv(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def perm_order(p: Perm) -> int:
    seen, out = set(), 1
    for i in range(len(p)):
        if i in seen:
            continue
        k, j = 0, i
        while j not in seen:
            seen.add(j)
            j = p[j]
            k += 1
        out = math.lcm(out, k)
    return out


def cycle_type(p: Perm) -> tuple[int, ...]:
    seen, out = set(), []
    for i in range(len(p)):
        if i in seen:
            continue
        k, j = 0, i
        while j not in seen:
            seen.add(j)
            j = p[j]
            k += 1
        out.append(k)
    return tuple(sorted(out, reverse=True))


def parse_cycles(text: str, degree: int) -> Perm:
    """``"(0,1)(2,3)"`` or ``"(0 1 2)"`` into an image tuple."""
    import re
    img = list(range(degree))
    for cyc in re.findall(r"\(([^)]*)\)", text):
        pts = [int(x) for x in re.split(r"[,\s]+", cyc.strip()) if x]
        for a, b in zip(pts, pts[1:] + pts[:1]):
            img[a] = b
    return tuple(img)


@dataclass
class FiniteGroup:
    degree: int
    generators: tuple[Perm, ...]
    name: str = ""
    _elements: list | None = field(default=None, repr=False)

    def __post_init__(self):
        self.generators = tuple(tuple(g) for g in self.generators)
        if self._elements is None:
            self._elements = self._closure()
        self.index = {g: k for k, g in enumerate(self._elements)}

    @classmethod
    def from_elements(cls, degree: int, elements: Sequence[Perm], name: str = "") -> "FiniteGroup":
        elements = sorted(set(tuple(e) for e in elements))
        return cls(degree, tuple(elements), name, list(elements))

    def _closure(self) -> list[Perm]:
        e = tuple(range(self.degree))
        seen = {e}
        frontier = [e]
        while frontier:
            nxt = []
            for x in frontier:
                for g in self.generators:
                    y = perm_mul(g, x)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
                        if len(seen) > MAX_ORDER:
                            raise GroupError(f"group order exceeds {MAX_ORDER}")
            frontier = nxt
        return sorted(seen)

    @property
    def elements(self) -> list[Perm]:
        return self._elements

    @property
    def order(self) -> int:
        return len(self._elements)

    @property
    def identity(self) -> Perm:
        return tuple(range(self.degree))

    @cached_property
    def mult(self) -> np.ndarray:
        n = self.order
        idx = self.index
        t = np.empty((n, n), dtype=np.int64)
        for i, p in enumerate(self._elements):
            for j, q in enumerate(self._elements):
                t[i, j] = idx[perm_mul(p, q)]
        return t

    @cached_property
    def inv(self) -> np.ndarray:
        return np.array([self.index[perm_inv(p)] for p in self._elements], dtype=np.int64)

    @cached_property
    def exponent(self) -> int:
        return reduce(math.lcm, (perm_order(g) for g in self._elements), 1)

    def conj(self, x: Perm, a: Perm) -> Perm:
        """``x a x^{-1}``."""
        return perm_mul(perm_mul(x, a), perm_inv(x))

    @cached_property
    def classes(self) -> "ClassData":
        return _conjugacy_classes(self)

    @cached_property
    def table(self) -> "CharacterTable":
        return character_table(self)

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name or self.degree}, order={self.order})"


@dataclass
class ClassData:
    reps: list[Perm]              # lexicographically least element of each class
    sizes: list[int]
    orders: list[int]
    class_of: np.ndarray          # element index -> class index
    conjugator: list[Perm]        # element index -> g with g rep g^-1 = element
    power_map: list[list[int]]    # power_map[s][k] = class of rep_s^k


def _conjugacy_classes(G: FiniteGroup) -> ClassData:
    n = G.order
    seen = [-1] * n
    raw = []
    conj_of: list[Perm | None] = [None] * n
    for k, a in enumerate(G.elements):
        if seen[k] >= 0:
            continue
        members = {}
        for x in G.elements:
            y = G.conj(x, a)
            if y not in members:
                members[y] = x
        raw.append(members)
        for y in members:
            seen[G.index[y]] = len(raw) - 1
    # order by (element order, least element); re-anchor conjugators on the least element
    keyed = []
    for members in raw:
        rep = min(members)
        keyed.append((perm_order(rep), rep, members))
    keyed.sort(key=lambda t: (t[0], t[1]))
    class_of = np.empty(n, dtype=np.int64)
    reps, sizes, orders = [], [], []
    for c, (o, rep, members) in enumerate(keyed):
        reps.append(rep)
        sizes.append(len(members))
        orders.append(o)
        # members[y] = x with x a0 x^-1 = y; rep = x_r a0 x_r^-1, so y = (x x_r^-1) rep (..)^-1
        xr_inv = perm_inv(members[rep])
        for y, x in members.items():
            i = G.index[y]
            class_of[i] = c
            conj_of[i] = perm_mul(x, xr_inv)
    power_map = []
    for rep, o in zip(reps, orders):
        row, p = [], G.identity
        for _ in range(o):
            row.append(int(class_of[G.index[p]]))
            p = perm_mul(p, rep)
        power_map.append(row)
    return ClassData(reps, sizes, orders, class_of, conj_of, power_map)


def conjugacy_classes(G: FiniteGroup) -> ClassData:
    return G.classes


def centralizer(G: FiniteGroup, a: Perm) -> FiniteGroup:
    a = tuple(a)
    elems = [x for x in G.elements if perm_mul(x, a) == perm_mul(a, x)]
    return FiniteGroup.from_elements(G.degree, elems, f"C({a})")


# ---------------------------------------------------------------------------
# Character tables
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PrimeData:
    e: int
    p: int
    z: int  # primitive e-th root of unity mod p, the image of zeta_e


def choose_prime(e: int, order: int) -> PrimeData:
    p = e + 1
    while not (isprime(p) and p > 2 * math.isqrt(order) + 2):
        p += e
    g = int(primitive_root(p))
    return PrimeData(e, p, pow(g, (p - 1) // e, p))


@dataclass
class CharacterTable:
    group: FiniteGroup
    K: CyclotomicField
    values: np.ndarray        # [irr, class, phi(e)]
    degrees: list[int]
    prime: PrimeData

    @property
    def classes(self) -> ClassData:
        return self.group.classes

    @property
    def n(self) -> int:
        return len(self.degrees)

    def value(self, chi: int, g: Perm) -> np.ndarray:
        return self.values[chi, self.group.classes.class_of[self.group.index[tuple(g)]]]

    def rational_rows(self) -> list[list[int]] | None:
        if np.any(self.values[:, :, 1:]):
            return None
        return self.values[:, :, 0].tolist()

    def formatted(self) -> list[list[str]]:
        return [[self.K.format(v) for v in row] for row in self.values]


def _common_eigenspaces(mats: list[np.ndarray], p: int) -> list[list[int]]:
    """Split F_p^k into simultaneous eigenlines of commuting diagonalisable matrices."""
    k = mats[0].shape[0]
    spaces = [[[int(i == j) for j in range(k)] for i in range(k)]]  # list of bases (row vectors)
    for M in mats:
        if all(len(s) == 1 for s in spaces):
            break
        new = []
        for basis in spaces:
            if len(basis) == 1:
                new.append(basis)
                continue
            Bm = np.array(basis, dtype=np.int64)          # rows span U
            img = (Bm @ M.T) % p                          # rows M u
            found = 0
            for lam in range(p):
                # coefficients c with sum c_i (M u_i - lam u_i) = 0
                rel = ((img - lam * Bm) % p).T.tolist()
                null = la.nullspace_mod(rel, p, len(basis))
                if null:
                    sub = (np.array(null, dtype=np.int64) @ Bm) % p
                    new.append(sub.tolist())
                    found += len(null)
                if found == len(basis):
                    break
            if found != len(basis):
                raise ArithmeticError("class matrix not diagonalisable mod p")
        spaces = new
    if not all(len(s) == 1 for s in spaces):
        raise ArithmeticError("class algebra did not split")
    return [s[0] for s in spaces]


def character_table(G: FiniteGroup, prime: PrimeData | None = None) -> CharacterTable:
    if G.order > 1000:
        raise GroupError("character tables are limited to order 1000")
    cd = G.classes
    k = len(cd.reps)
    prime = prime or choose_prime(G.exponent, G.order)
    if prime.e % G.exponent:
        raise GroupError("prime data conductor must be a multiple of the exponent")
    p, e, z = prime.p, prime.e, prime.z
    K = cyclotomic_field(e)
    reps_idx = np.array([G.index[r] for r in cd.reps], dtype=np.int64)
    a = _kernels.class_constants(G.mult, G.inv, cd.class_of, reps_idx)  # a[j, r, s]
    mats = [a[j] % p for j in range(k)]
    lines = _common_eigenspaces(mats[1:] if k > 1 else mats, p)
    inv_class = [int(cd.class_of[G.inv[G.index[r]]]) for r in cd.reps]
    values = np.zeros((k, k, K.phi), dtype=np.int64)
    degrees = []
    for row, w in enumerate(lines):
        w0 = w[0] % p
        w = [(x * pow(w0, p - 2, p)) % p for x in w]
        s = sum(w[t] * w[inv_class[t]] * pow(cd.sizes[t], p - 2, p) for t in range(k)) % p
        d2 = (G.order * pow(s, p - 2, p)) % p
        deg = next(d for d in range(1, math.isqrt(G.order) + 1) if (d * d - d2) % p == 0)
        chi_mod = [(deg * w[t] * pow(cd.sizes[t], p - 2, p)) % p for t in range(k)]
        degrees.append(deg)
        for t in range(k):
            o = cd.orders[t]
            zo = pow(z, e // o, p)  # primitive o-th root mod p, image of zeta_o
            inv_o = pow(o, p - 2, p)
            mults = {}
            for j in range(o):
                m = sum(chi_mod[cd.power_map[t][kk]] * pow(zo, (-j * kk) % o, p) for kk in range(o)) % p
                m = (m * inv_o) % p
                if m > deg:
                    raise ArithmeticError("eigenvalue multiplicity out of range")
                if m:
                    mults[j * (e // o)] = m
            values[row, t] = K.from_exponents(mults)
    order = sorted(range(k), key=lambda r: (0 if not np.any(values[r, :, 1:]) and np.all(values[r, :, 0] == 1) else 1,
                                            degrees[r], [tuple(v) for v in values[r]]))
    table = CharacterTable(G, K, values[order], [degrees[r] for r in order], prime)
    check_orthogonality(table)
    return table


def check_orthogonality(T: CharacterTable) -> None:
    cd = T.classes
    K = T.K
    k = T.n
    inv_class = [int(cd.class_of[T.group.inv[T.group.index[r]]]) for r in cd.reps]
    sizes = np.array(cd.sizes, dtype=np.int64)
    weighted = T.values * sizes[None, :, None]
    conj = T.values[:, inv_class, :]  # chi(g^-1) = conj chi(g)
    gram = K.matmul(weighted, np.transpose(conj, (1, 0, 2)))
    if not np.array_equal(gram, K.identity(k, T.group.order)):
        raise ArithmeticError("row orthogonality failed")
    col = K.matmul(np.transpose(K.conj_matrix(T.values), (1, 0, 2)), T.values)
    expect = np.zeros_like(col)
    for t in range(k):
        expect[t, t, 0] = T.group.order // cd.sizes[t]
    if not np.array_equal(col, expect):
        raise ArithmeticError("column orthogonality failed")


# ---------------------------------------------------------------------------
# Murnaghan-Nakayama oracle for symmetric groups
# ---------------------------------------------------------------------------

def _border_strips(lam: tuple[int, ...], r: int):
    """Yield (height, partition) for every border strip of size r removable from lam."""
    beta = [lam[i] + (len(lam) - 1 - i) for i in range(len(lam))]
    bs = set(beta)
    for b in beta:
        if b - r >= 0 and b - r not in bs:
            height = sum(1 for c in beta if b - r < c < b)
            nb = sorted([c for c in beta if c != b] + [b - r], reverse=True)
            L = len(nb)
            new = tuple(x for x in (nb[i] - (L - 1 - i) for i in range(L)) if x > 0)
            yield height, new


def mn_character(lam: Sequence[int], mu: Sequence[int]) -> int:
    lam = tuple(x for x in lam if x)
    if not mu:
        return 1 if not lam else 0
    r, rest = mu[0], tuple(mu[1:])
    return sum((-1) ** h * mn_character(new, rest) for h, new in _border_strips(lam, r))


def symmetric_group_table_mn(n: int) -> dict[tuple[int, ...], dict[tuple[int, ...], int]]:
    from .classical import all_partitions
    parts = all_partitions(n)
    return {lam: {mu: mn_character(lam, mu) for mu in parts} for lam in parts}


def check_against_mn(T: CharacterTable, n: int) -> bool:
    rows = T.rational_rows()
    if rows is None:
        return False
    types = [cycle_type(r) for r in T.classes.reps]
    oracle = symmetric_group_table_mn(n)
    expect = sorted(tuple(tab[ct] for ct in types) for tab in oracle.values())
    return sorted(tuple(r) for r in rows) == expect


# ---------------------------------------------------------------------------
# Named groups
# ---------------------------------------------------------------------------

def _sym(n):
    if n <= 1:
        return [tuple(range(max(n, 1)))]
    return [parse_cycles("(0,1)", n), tuple(list(range(1, n)) + [0])]


NAMED_GROUPS = {
    "1": (1, ["()"]),
    "Z2": (2, ["(0,1)"]),
    "Z2^2": (4, ["(0,1)", "(2,3)"]),
    "Z2^3": (6, ["(0,1)", "(2,3)", "(4,5)"]),
    "Z3": (3, ["(0,1,2)"]),
    "Z4": (4, ["(0,1,2,3)"]),
    "Z5": (5, ["(0,1,2,3,4)"]),
    "S3": (3, ["(0,1)", "(0,1,2)"]),
    "S4": (4, ["(0,1)", "(0,1,2,3)"]),
    "S5": (5, ["(0,1)", "(0,1,2,3,4)"]),
    "Dih8": (4, ["(0,1,2,3)", "(0,2)"]),
}
ALIASES = {"TRIVIAL": "1", "Z1": "1", "Z2XZ2": "Z2^2", "Z2²": "Z2^2", "Z2³": "Z2^3", "D8": "Dih8",
           "DIH8": "Dih8", "Z2^2": "Z2^2", "Z2^3": "Z2^3", "Z22": "Z2^2", "Z23": "Z2^3"}


def named_group(name: str) -> FiniteGroup:
    key = name.strip()
    up = key.upper()
    key = ALIASES.get(up, key)
    for k in NAMED_GROUPS:
        if k.upper() == key.upper():
            key = k
            break
    if key not in NAMED_GROUPS:
        raise GroupError(f"unknown group {name!r}; choose from {', '.join(NAMED_GROUPS)}")
    deg, gens = NAMED_GROUPS[key]
    return FiniteGroup(deg, tuple(parse_cycles(g, deg) for g in gens), key)


# ---------------------------------------------------------------------------
# M(G) and the Fourier matrix
# ---------------------------------------------------------------------------

@dataclass
class MSetEntry:
    cls: int          # class index of a in G
    a: Perm
    psi: int          # row of the character table of C_G(a)


@dataclass
class MSet:
    group: FiniteGroup
    pairs: list[MSetEntry]
    centralizers: list[FiniteGroup]
    tables: list[CharacterTable]

    def __len__(self) -> int:
        return len(self.pairs)

    def index(self, cls: int, psi: int) -> int:
        for k, pr in enumerate(self.pairs):
            if pr.cls == cls and pr.psi == psi:
                return k
        raise GroupError("pair not in M(G)")

    def label(self, k: int) -> str:
        pr = self.pairs[k]
        return f"[c{pr.cls},psi{pr.psi}]"


def mset(G: FiniteGroup) -> MSet:
    prime = choose_prime(G.exponent, G.order)
    cents, tabs, pairs = [], [], []
    for c, a in enumerate(G.classes.reps):
        C = centralizer(G, a)
        T = character_table(C, prime)
        cents.append(C)
        tabs.append(T)
        for psi in range(T.n):
            pairs.append(MSetEntry(c, a, psi))
    return MSet(G, pairs, cents, tabs)


@dataclass
class FourierMatrix:
    mset: MSet
    K: CyclotomicField
    numer: np.ndarray   # [n, n, phi]
    denom: int

    @property
    def n(self) -> int:
        return len(self.mset)

    def entry(self, i: int, j: int) -> tuple[np.ndarray, int]:
        return self.numer[i, j], self.denom

    def is_real(self) -> bool:
        return np.array_equal(self.K.conj_matrix(self.numer), self.numer)

    def formatted(self) -> list[list[str]]:
        out = []
        for row in self.numer:
            r = []
            for v in row:
                if self.K.is_rational(v):
                    r.append(str(Fraction(int(v[0]), self.denom)))
                else:
                    r.append(self.K.format(v, self.denom))
            out.append(r)
        return out

    def to_json(self) -> dict:
        return {"labels": [self.mset.label(k) for k in range(self.n)], "conductor": self.K.e,
                "denominator": self.denom, "numerators": self.numer.tolist()}


def _pair_counts(G: FiniteGroup, b: Perm, a: Perm, Cb: FiniteGroup, Ca: FiniteGroup) -> np.ndarray:
    """``n[cb, ca]`` counts x with ``x a x^-1 in C(b)`` by the classes of ``x a x^-1`` and ``x^-1 b x``."""
    cb, ca = Cb.classes, Ca.classes
    out = np.zeros((len(cb.reps), len(ca.reps)), dtype=np.int64)
    for x in G.elements:
        y = G.conj(x, a)
        if y not in Cb.index:
            continue
        zz = G.conj(perm_inv(x), b)
        out[cb.class_of[Cb.index[y]], ca.class_of[Ca.index[zz]]] += 1
    return out


def fourier_matrix(G: FiniteGroup, M: MSet | None = None) -> FourierMatrix:
    M = M or mset(G)
    K = cyclotomic_field(M.tables[0].prime.e)
    reps = G.classes.reps
    nclass = len(reps)
    blocks: dict = {}
    dens = []
    for bi in range(nclass):
        for ai in range(nclass):
            Cb, Ca = M.centralizers[bi], M.centralizers[ai]
            N = _pair_counts(G, reps[bi], reps[ai], Cb, Ca)
            numer = K.matmul(K.matmul(M.tables[bi].values, N[..., None].astype(np.int64)),
                             np.transpose(K.conj_matrix(M.tables[ai].values), (1, 0, 2)))
            blocks[(bi, ai)] = (numer, Ca.order * Cb.order)
            dens.append(Ca.order * Cb.order)
    L = reduce(math.lcm, dens, 1)
    n = len(M)
    out = np.zeros((n, n, K.phi), dtype=np.int64)
    starts = {}
    pos = 0
    for c in range(nclass):
        starts[c] = pos
        pos += M.tables[c].n
    for (bi, ai), (numer, den) in blocks.items():
        rb, ra = starts[bi], starts[ai]
        out[rb:rb + numer.shape[0], ra:ra + numer.shape[1]] = numer * (L // den)
    g = math.gcd(L, *[int(x) for x in np.unique(np.abs(out))])
    return FourierMatrix(M, K, out // g, L // g)


def fourier_pairing(G: FiniteGroup, left: tuple[int, int], right: tuple[int, int],
                    F: FourierMatrix | None = None) -> tuple[np.ndarray, int]:
    """``{[b, phi], [a, psi]}`` for pairs given as (class index, character row)."""
    F = F or fourier_matrix(G)
    i = F.mset.index(*left)
    j = F.mset.index(*right)
    return F.entry(i, j)


def is_unitary(F: FourierMatrix) -> bool:
    K = F.K
    prod = K.matmul(F.numer, np.transpose(K.conj_matrix(F.numer), (1, 0, 2)))
    return np.array_equal(prod, K.identity(F.n, F.denom * F.denom))


def is_involution(F: FourierMatrix) -> bool:
    K = F.K
    return np.array_equal(K.matmul(F.numer, F.numer), K.identity(F.n, F.denom * F.denom))


def mellin_check(G: FiniteGroup, F: FourierMatrix | None = None) -> bool:
    """Compare the Fourier rows with the Kawanaka-symbol expansions.

    For b = 1 the row ``F_{[1,phi]}`` must equal ``(1/|G|) sum_a phi(a) Gamma_{u_a}``
    with ``Gamma_{u_a} = sum_psi psi(1) K_{[a,psi]}``.  For every b the row must
    also equal the expansion summed over ``x in G`` and ``a in C(b)``.
    """
    F = F or fourier_matrix(G)
    M, K = F.mset, F.K
    cd = G.classes
    n = len(M)
    # Mellin transform at b = 1
    T = M.tables[0]
    for phi in range(T.n):
        rhs = np.zeros((n, K.phi), dtype=np.int64)
        for a in G.elements:
            ia = G.index[a]
            c = int(cd.class_of[ia])
            for psi in range(M.tables[c].n):
                k = M.index(c, psi)
                rhs[k] += T.value(phi, a) * M.tables[c].degrees[psi]
        lhs = F.numer[M.index(0, phi)]
        if not np.array_equal(lhs * G.order, rhs * F.denom):
            return False
    # general b: (1/|G|) sum_x sum_{a in C(b)} sum_psi phi(a) conj(psi(b^x)) / |C(b)| K_{(a^x, psi)}
    for bi, b in enumerate(cd.reps):
        Cb, Tb = M.centralizers[bi], M.tables[bi]
        counts: dict = {}
        for x in G.elements:
            xi = perm_inv(x)
            bx = G.conj(xi, b)
            for a in Cb.elements:
                ax = G.conj(xi, a)
                i_ax = G.index[ax]
                c0 = int(cd.class_of[i_ax])
                g = cd.conjugator[i_ax]  # g a0 g^-1 = a^x
                z = G.conj(perm_inv(g), bx)  # lies in C(a0)
                C0 = M.centralizers[c0]
                key = (int(Cb.classes.class_of[Cb.index[a]]), c0, int(C0.classes.class_of[C0.index[z]]))
                counts[key] = counts.get(key, 0) + 1
        for phi in range(Tb.n):
            rhs = np.zeros((n, K.phi), dtype=np.int64)
            for (ca, c0, cz), cnt in counts.items():
                T0 = M.tables[c0]
                for psi in range(T0.n):
                    term = K.mul(Tb.values[phi, ca], K.conj(T0.values[psi, cz]))
                    rhs[M.index(c0, psi)] += cnt * term
            lhs = F.numer[M.index(bi, phi)]
            if not np.array_equal(lhs * G.order * Cb.order, rhs * F.denom):
                return False
    return True


STANDARD_GROUPS = ["Z2", "Z2^2", "Z2^3", "Z3", "Z4", "S3", "Dih8", "S4", "S5"]
