"""Root systems of centralisers of quasi-semisimple elements.

A Weyl element w stabilising a simple system Pi of a subsystem Sigma plays
the role of sigma = n_w.  Orbits O of <w> on Sigma^+ give

    beta*_O = sum of O,   beta_O = beta*_O / |O|,   coroot s(O) * sum of coroots

with s(O) = 2 for special orbits (two members summing to a root).  The sign
C_{sigma,O} is 1 on non-special orbits (times beta*_O(t0) for a torus part
t0) and must be supplied for special ones; the cospecial partner carries the
opposite sign.  Sigma_sigma keeps the orbits with C = 1, Sigma_{t sigma} those
with beta*_O(t) = C.

Vectors are kept in two coordinate systems: over the ambient simple roots
(for fusion into G) and over Pi (for fusion into the subsystem group M).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Mapping, Sequence

from . import _linalg as la
from .root_datum import (EmbeddedSubsystem, RootDatum, WeylElement, act, classify_cartan, compose,
                         datum_from_cartan, format_root, indecomposable, inverse, join_label_parts,
                         longest_element, longest_in_subsystem, parse_root, root_length_rational,
                         weyl_order_of_type, canonical_components, _normalise_family)

MAX_WEYL_ORDER = 10**6


class QuasiError(ValueError):
    pass


def _perm_order(w: WeylElement) -> int:
    k, p = 1, w.perm
    ident = tuple(range(len(p)))
    while p != ident:
        p = tuple(w.perm[x] for x in p)
        k += 1
    return k


@dataclass(frozen=True)
class SigmaOrbit:
    index: int                      # 1-based label O_index
    roots: tuple[tuple, ...]        # ambient coordinates
    local: tuple[tuple, ...]        # coordinates over Pi
    beta_star: tuple
    beta: tuple
    beta_local: tuple
    coroot_star: tuple              # over ambient simple coroots
    coroot_star_local: tuple        # over the coroots of Pi
    s: int
    C: Fraction                     # phase: the sign is exp(2 pi i C), C in [0, 1)
    simple: bool
    partner: int | None = None      # cospecial partner of a special orbit (or vice versa)

    @property
    def special(self) -> bool:
        return self.s == 2

    @property
    def sign(self) -> int | str:
        if self.C == 0:
            return 1
        if self.C == Fraction(1, 2):
            return -1
        return f"exp(2pi i {self.C})"

    @property
    def size(self) -> int:
        return len(self.roots)

    @property
    def coroot(self) -> tuple:
        return tuple(self.s * x for x in self.coroot_star)

    @property
    def coroot_local(self) -> tuple:
        return tuple(self.s * x for x in self.coroot_star_local)

    def to_json(self) -> dict:
        return {"index": self.index, "roots": [format_root(r) for r in self.local],
                "ambient_roots": [format_root(r) for r in self.roots],
                "beta": [str(x) for x in self.beta_local], "s": self.s, "sign": str(self.sign),
                "special": self.special, "simple": self.simple}


@dataclass
class SigmaAction:
    ambient: RootDatum
    pi: tuple[tuple[int, ...], ...]      # simple system of Sigma, ambient coordinates
    w: WeylElement
    torus_part: tuple | None = None      # coweight t0 with sigma = t0 n_w
    signs: Mapping[tuple, int] = field(default_factory=dict)  # ambient root in a special/cospecial orbit -> C
    numbering: str = "simple_first"      # or "component": finish each w-stable component before the next

    def __post_init__(self):
        rs = self.ambient.roots
        self.pi = tuple(tuple(int(x) for x in p) for p in self.pi)
        if self.numbering not in ("simple_first", "component"):
            raise QuasiError(f"unknown numbering {self.numbering!r}")
        for p in self.pi:
            if p not in rs.index:
                raise QuasiError(f"{p} is not a root of {self.ambient}")
        idx = [rs.index[p] for p in self.pi]
        if sorted(self.w.perm[k] for k in idx) != sorted(idx):
            raise QuasiError("w does not stabilise Pi")
        self._sigma()

    @property
    def order(self) -> int:
        return _perm_order(self.w)

    # Sigma and the subsystem datum M -------------------------------------
    def _sigma(self):
        rs = self.ambient.roots
        n = len(self.pi)
        pi_cor = [rs.coroots_all[rs.index[p]] for p in self.pi]
        cartan = [[rs.pair(self.pi[j], pi_cor[i]) for j in range(n)] for i in range(n)]
        self.M = datum_from_cartan(cartan)
        mrs = self.M.roots
        # local coordinates -> ambient vectors
        self.local_of = {}
        amb_of = {}
        for loc in mrs.all:
            v = tuple(sum(loc[i] * self.pi[i][j] for i in range(n)) for j in range(self.ambient.rank))
            if v not in rs.index:
                raise QuasiError("Pi does not span a root subsystem")
            amb_of[loc] = v
            self.local_of[v] = loc
        self.amb_of = amb_of

    @cached_property
    def positive(self) -> list[tuple]:
        """Sigma^+ in ambient coordinates, ordered as the positive roots of M."""
        return [self.amb_of[loc] for loc in self.M.roots.positive]

    def apply(self, v: tuple) -> tuple:
        rs = self.ambient.roots
        return rs.all[self.w.perm[rs.index[v]]]

    @cached_property
    def component_groups(self) -> list[list[int]]:
        """Indices of Pi grouped into <w>-stable unions of components, by first appearance."""
        comps = [set(c.nodes) for c in classify_cartan(self.M.cartan)]
        pos = {p: i for i, p in enumerate(self.pi)}
        groups: list[set] = []
        for c in comps:
            img = {pos[self.apply(self.pi[i])] for i in c}
            merged = [g for g in groups if g & (c | img)]
            new = set(c) | img
            for g in merged:
                new |= g
                groups.remove(g)
            groups.append(new)
        # close under w
        changed = True
        while changed:
            changed = False
            for g in groups:
                img = {pos[self.apply(self.pi[i])] for i in g}
                if not img <= g:
                    other = [h for h in groups if h is not g and h & img]
                    for h in other:
                        g |= h
                        groups.remove(h)
                    changed = True
                    break
        return sorted((sorted(g) for g in groups), key=min)

    # orbits ---------------------------------------------------------------
    @cached_property
    def orbits(self) -> list[SigmaOrbit]:
        rs = self.ambient.roots
        mrs = self.M.roots
        n = len(self.pi)
        seen = set()
        raw = []
        for v in self.positive:
            if v in seen:
                continue
            orb = [v]
            u = self.apply(v)
            while u != v:
                orb.append(u)
                u = self.apply(u)
            seen.update(orb)
            raw.append(orb)
        groups = self.component_groups

        def group_of(orb):
            loc = self.local_of[orb[0]]
            support = min(i for i, x in enumerate(loc) if x)
            return next(k for k, g in enumerate(groups) if support in g)

        def key(orb):
            locs = [self.local_of[v] for v in orb]
            first = min(next(i for i, x in enumerate(l) if x) for l in locs) if sum(locs[0]) == 1 else n
            rest = (sum(locs[0]) != 1, first, sum(locs[0]), tuple(-x for x in max(locs)))
            return (group_of(orb),) + rest if self.numbering == "component" else rest

        raw.sort(key=key)
        sigma_set = set(mrs.all)
        specials: dict[int, tuple] = {}
        for k, orb in enumerate(raw):
            locs = [self.local_of[v] for v in orb]
            for a in range(len(locs)):
                for b in range(a + 1, len(locs)):
                    tot = tuple(x + y for x, y in zip(locs[a], locs[b]))
                    if tot in sigma_set:
                        specials[k] = tot
                        break
                if k in specials:
                    break
        partner = {}
        for k, tot in specials.items():
            if len(raw[k]) % 2:
                raise QuasiError("a special orbit must have even size")
            j = next(j for j, orb in enumerate(raw) if self.amb_of[tot] in orb)
            partner[k] = j
            partner[j] = k
        # phases
        t0 = [Fraction(x) for x in self.torus_part] if self.torus_part is not None else None
        given = {}
        for root, c in self.signs.items():
            root = tuple(root)
            if root not in rs.index:
                raise QuasiError(f"{root} is not a root")
            neg = root not in self.local_of or self.local_of[root] not in mrs.positive
            if neg:
                root = tuple(-x for x in root)
            if root not in self.local_of:
                raise QuasiError(f"{format_root(root)} is not in Sigma")
            k = next(k for k, orb in enumerate(raw) if root in orb)
            if c not in (1, -1):
                raise QuasiError("explicit signs must be +1 or -1")
            given[k] = Fraction(0) if c == 1 else Fraction(1, 2)
        phases = {}
        for k, orb in enumerate(raw):
            if k in specials or (k in partner and partner[k] in specials):
                continue
            ph = Fraction(0)
            if t0 is not None:
                ph = sum((sum(a * b for a, b in zip(v, t0)) for v in orb), Fraction(0)) % 1
            if k in given and given[k] != ph:
                raise QuasiError(f"sign of O_{k + 1} contradicts the non-special rule")
            phases[k] = ph
        for k in specials:
            j = partner[k]
            if k in given:
                phases[k] = given[k]
            elif j in given:
                phases[k] = (given[j] + Fraction(1, 2)) % 1
            else:
                raise QuasiError(f"orbit O_{k + 1} is special: sigma is not certified quasi-central "
                                 "without explicit sign data")
            phases[j] = (phases[k] + Fraction(1, 2)) % 1
            if j in given and given[j] != phases[j]:
                raise QuasiError("cospecial sign must be opposite to the special sign")
        out = []
        for k, orb in enumerate(raw):
            locs = [self.local_of[v] for v in orb]
            bstar = tuple(sum(v[i] for v in orb) for i in range(self.ambient.rank))
            bstar_loc = tuple(sum(l[i] for l in locs) for i in range(n))
            cstar = tuple(sum(rs.coroots_all[rs.index[v]][i] for v in orb) for i in range(self.ambient.rank))
            cstar_loc = tuple(sum(mrs.coroots_all[mrs.index[l]][i] for l in locs) for i in range(n))
            m = len(orb)
            out.append(SigmaOrbit(
                k + 1, tuple(orb), tuple(locs), bstar, tuple(Fraction(x, m) for x in bstar),
                tuple(Fraction(x, m) for x in bstar_loc), cstar, cstar_loc,
                2 if k in specials else 1, phases[k], sum(locs[0]) == 1,
                partner[k] + 1 if k in partner else None))
        # the order of w bounds orbit sizes
        for o in out:
            if self.order % o.size:
                raise QuasiError("orbit size does not divide the order of w")
        return out

    def orbit(self, k: int) -> SigmaOrbit:
        return self.orbits[k - 1]

    def orbit_of(self, root: Sequence[int], local: bool = False) -> SigmaOrbit:
        root = tuple(root)
        for o in self.orbits:
            if root in (o.local if local else o.roots):
                return o
        raise QuasiError(f"{format_root(root)} is not a positive root of Sigma")

    def w_fixes(self, t: Sequence) -> bool:
        wt = act(self.ambient.roots, self.w, t, "coweight")
        diff = [a - Fraction(b) for a, b in zip(wt, t)]
        return self._in_coweight_lattice(diff)

    def _in_coweight_lattice(self, v) -> bool:
        if self.ambient.isogeny_tag in ("adjoint", "custom"):
            return all(x.denominator == 1 for x in v)
        # simply connected: X^vee is the coroot lattice, rows of the Cartan matrix
        sol = la.solve_left(v, self.ambient.cartan)
        return sol is not None and all(x.denominator == 1 for x in sol)


# ---------------------------------------------------------------------------
# Fixed-point systems
# ---------------------------------------------------------------------------

@dataclass
class FixedSystem:
    action: SigmaAction
    members: list[SigmaOrbit]       # orbits whose beta lies in the system (positive part)
    simple: list[SigmaOrbit]
    twist: tuple | None = None

    @cached_property
    def sub_M(self) -> EmbeddedSubsystem:
        """Embedding into the subsystem group M (coordinates over Pi)."""
        return EmbeddedSubsystem(self.action.M, tuple(o.beta_local for o in self.simple),
                                 tuple(o.coroot_local for o in self.simple),
                                 tuple(o.index for o in self.simple))

    @cached_property
    def sub_G(self) -> EmbeddedSubsystem:
        return EmbeddedSubsystem(self.action.ambient, tuple(o.beta for o in self.simple),
                                 tuple(o.coroot for o in self.simple),
                                 tuple(o.index for o in self.simple))

    @property
    def cartan(self) -> list[list[int]]:
        return self.sub_M.cartan if self.simple else []

    @property
    def cartan_type(self):
        return canonical_components(classify_cartan(self.cartan)) if self.simple else ()

    @property
    def type_label(self) -> str:
        if not self.simple:
            return "1"
        parts = []
        for comp in classify_cartan(self.cartan):
            for fam, r in _normalise_family(comp.family, comp.rank):
                parts.append(f"{fam}{r}")
        return join_label_parts(parts)

    @property
    def indices(self) -> list[int]:
        return [o.index for o in self.members]

    def is_short(self, o: SigmaOrbit) -> bool:
        M = self.action.M
        lens = {root_length_rational(M, m.beta_local) for m in self.members}
        return len(lens) > 1 and root_length_rational(M, o.beta_local) == min(lens)

    def contains(self, v_local: Sequence) -> bool:
        v = tuple(Fraction(x) for x in v_local)
        return any(o.beta_local == v or tuple(-x for x in o.beta_local) == v for o in self.members)

    def to_json(self) -> dict:
        return {"type": self.type_label, "positive": self.indices,
                "simple": [o.index for o in self.simple],
                "short": [o.index for o in self.simple if self.is_short(o)],
                "cartan": self.cartan}


def _build(action: SigmaAction, members: list[SigmaOrbit], twist=None) -> FixedSystem:
    vecs = [o.beta_local for o in members]
    simple = [members[k] for k in indecomposable(vecs)]
    fs = FixedSystem(action, members, simple, twist)
    check_root_system(fs)
    return fs


def fixed_subsystem(action: SigmaAction) -> FixedSystem:
    """Sigma_sigma: the orbits with C = 1."""
    return _build(action, [o for o in action.orbits if o.C == 0])


def twisted_subsystem(action: SigmaAction, t: Sequence) -> FixedSystem:
    """Sigma_{t sigma}: the orbits with beta*_O(t) = C_{sigma,O}."""
    t = tuple(Fraction(x) for x in t)
    if not action.w_fixes(t):
        raise QuasiError("t is not fixed by w")
    members = []
    for o in action.orbits:
        val = sum(a * b for a, b in zip(o.beta_star, t)) % 1
        if val == o.C:  # plus or minus coincide for signs
            members.append(o)
        elif (-val) % 1 == o.C:
            members.append(o)
    return _build(action, members, t)


def _pair_local(action: SigmaAction, root_loc, coroot_loc) -> Fraction:
    c = action.M.cartan
    n = len(c)
    return sum(Fraction(coroot_loc[i]) * c[i][j] * Fraction(root_loc[j]) for i in range(n) for j in range(n))


def check_root_system(fs: FixedSystem) -> None:
    """Closure of the produced roots under their declared reflections."""
    act_ = fs.action
    roots = [(o.beta_local, o.coroot_local) for o in fs.members]
    roots += [(tuple(-x for x in b), tuple(-x for x in c)) for b, c in roots]
    rset = {b for b, _ in roots}
    for b, c in roots:
        if _pair_local(act_, b, c) != 2:
            raise QuasiError("declared coroot does not pair to 2 with its root")
        for g, _ in roots:
            p = _pair_local(act_, g, c)
            if p.denominator != 1:
                raise QuasiError("non-integral pairing in the fixed-point system")
            if tuple(x - p * y for x, y in zip(g, b)) not in rset:
                raise QuasiError("fixed-point system is not closed under its reflections")


def non_closed_witnesses(big: FixedSystem, small: FixedSystem) -> list[tuple[int, int, int]]:
    """Triples (i, j, k) with beta_i + beta_j = beta_k, i, j in small and k in big but not small."""
    out = []
    small_idx = set(small.indices)
    by_vec = {o.beta_local: o.index for o in big.members}
    for a in small.members:
        for b in small.members:
            if a.index >= b.index:
                continue
            tot = tuple(x + y for x, y in zip(a.beta_local, b.beta_local))
            k = by_vec.get(tot)
            if k is not None and k not in small_idx:
                out.append((a.index, b.index, k))
    return out


# ---------------------------------------------------------------------------
# Quasi-centrality
# ---------------------------------------------------------------------------

def sigma_weyl_order(action: SigmaAction) -> int:
    return weyl_order_of_type(canonical_components(classify_cartan(action.M.cartan)))


def centralizer_order(action: SigmaAction) -> int:
    """|C_{W_Sigma}(w)| as |W_Sigma| over the size of the W_Sigma-conjugacy orbit of w."""
    order = sigma_weyl_order(action)
    if order > MAX_WEYL_ORDER:
        raise QuasiError("Weyl group of Sigma is too large to enumerate")
    rs = action.ambient.roots
    refl = [rs.reflection_perm(rs.index[p]) for p in action.pi]
    start = action.w.perm
    seen = {start}
    frontier = [start]
    while frontier:
        new = []
        for p in frontier:
            for s in refl:
                q = tuple(s[p[s[x]]] for x in range(len(p)))
                if q not in seen:
                    seen.add(q)
                    new.append(q)
        frontier = new
    return order // len(seen)


def quasi_central_check(action: SigmaAction) -> bool:
    """The reflection group of Sigma_sigma is the whole centraliser of w in W_Sigma."""
    fs = fixed_subsystem(action)
    return weyl_order_of_type(fs.cartan_type) == centralizer_order(action)


# ---------------------------------------------------------------------------
# Constructing w
# ---------------------------------------------------------------------------

def s_pi(datum: RootDatum, pi: Sequence[tuple], beta: tuple) -> WeylElement:
    """``w_{Pi u {beta}} w_Pi``."""
    rs = datum.roots
    idx = [rs.index[p] for p in pi]
    big = longest_in_subsystem(rs, idx + [rs.index[beta]])
    return compose(big, longest_in_subsystem(rs, idx))


def parse_w(datum: RootDatum, pi: Sequence[tuple], text: str) -> WeylElement:
    """``longest`` (w_Delta w_Pi), ``spi:6,1`` (s_{Pi,a6} s_{Pi,a1}), ``word:1,2,3`` or ``triality``."""
    rs = datum.roots
    text = text.strip().lower()
    if text == "longest":
        return compose(longest_element(rs), longest_in_subsystem(rs, [rs.index[p] for p in pi]))
    if text == "triality":
        w = parse_w(datum, pi, "spi:6,1")
        if _perm_order(w) != 3:
            raise QuasiError("triality needs s_{Pi,a6} s_{Pi,a1} of order 3")
        return w
    if text.startswith("spi:"):
        w = longest_element(rs, [])
        for tok in text[4:].split(","):
            w = compose(w, s_pi(datum, pi, parse_root(datum, tok)))
        return w
    if text.startswith("word:"):
        from .root_datum import from_word
        word = [int(x) - 1 for x in text[5:].split(",") if x.strip()]
        if any(not 0 <= i < datum.rank for i in word):
            raise QuasiError("word letters must be simple root indices")
        return from_word(rs, word)
    raise QuasiError(f"cannot parse w from {text!r}")


def parse_pi(datum: RootDatum, text: str | Sequence) -> list[tuple]:
    """Pi from tokens like ``"2,3,4,5"``, ``"1,2,1242,4"`` or ``"{1,3,4,2,5 | 8,0}"``.

    Node ``0`` is the lowest root, as in the extended diagram.
    """
    if isinstance(text, str):
        toks = [t for t in text.strip().strip("{}").replace("|", ",").split(",") if t.strip()]
    else:
        toks = [str(t) for t in text]
    return [parse_root(datum, t) for t in toks]


def parse_signs(datum: RootDatum, text: str | None) -> dict[tuple, int]:
    """``"8:1"`` or ``"8:1,12:-1"`` (root token, sign)."""
    out = {}
    if not text:
        return out
    for tok in text.split(","):
        if not tok.strip():
            continue
        root, _, c = tok.rpartition(":")
        out[parse_root(datum, root)] = int(c)
    return out


def make_action(datum: RootDatum, pi, w: str | WeylElement, torus_part=None, signs=None,
                numbering: str = "simple_first") -> SigmaAction:
    pi = parse_pi(datum, pi) if isinstance(pi, str) else [tuple(p) for p in pi]
    if isinstance(w, str):
        w = parse_w(datum, pi, w)
    if isinstance(signs, str) or signs is None:
        signs = parse_signs(datum, signs)
    return SigmaAction(datum, tuple(pi), w, tuple(torus_part) if torus_part is not None else None, signs,
                       numbering)


def image_orbit(action: SigmaAction, w2: WeylElement, o: SigmaOrbit) -> list[tuple]:
    """Ambient roots of ``w2(O)``."""
    rs = action.ambient.roots
    return sorted(rs.all[w2.perm[rs.index[v]]] for v in o.roots)


__all__ = ["QuasiError", "SigmaAction", "SigmaOrbit", "FixedSystem", "fixed_subsystem",
           "twisted_subsystem", "check_root_system", "non_closed_witnesses", "quasi_central_check",
           "centralizer_order", "s_pi", "parse_w", "parse_pi", "parse_signs", "make_action",
           "image_orbit", "inverse"]
