"""Partition combinatorics for symplectic and orthogonal unipotent classes."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from sympy.utilities.iterables import partitions as _sympy_partitions

Partition = tuple[int, ...]

# family -> (epsilon, N as a function of rank)
FAMILIES = {"B": (1, lambda n: 2 * n + 1), "C": (-1, lambda n: 2 * n), "D": (1, lambda n: 2 * n)}


class PartitionError(ValueError):
    pass


def normalise(parts: Iterable[int]) -> Partition:
    parts = tuple(sorted((int(p) for p in parts if int(p) != 0), reverse=True))
    if any(p < 0 for p in parts):
        raise PartitionError("parts must be positive")
    return parts


def parse_partition(text: str) -> Partition:
    """Accept ``"4,2"``, ``"3^2 1^2"`` or ``"3^21^2"`` style input."""
    import re
    text = text.strip()
    if "," in text:
        return normalise(int(x) for x in text.split(",") if x.strip())
    parts = []
    for base, mult in re.findall(r"(\d)(?:\^(\d))?", text.replace(" ", "")):
        parts.extend([int(base)] * int(mult or 1))
    return normalise(parts)


def format_partition(mu: Sequence[int]) -> str:
    counts = Counter(mu)
    out = []
    for m in sorted(counts, reverse=True):
        out.append(f"{m}^{counts[m]}" if counts[m] > 1 else f"{m}")
    return "".join(out) if all(m < 10 for m in counts) else ",".join(map(str, mu))


def all_partitions(N: int) -> list[Partition]:
    out = []
    for p in _sympy_partitions(N):
        out.append(normalise(m for m, k in p.items() for _ in range(k)))
    return sorted(out, reverse=True)


def multiplicities(mu: Sequence[int]) -> dict[int, int]:
    return dict(Counter(mu))


def in_P(mu: Sequence[int], eps: int) -> bool:
    """``r_m`` is even for every m with ``(-1)^m = eps``."""
    return all(r % 2 == 0 for m, r in Counter(mu).items() if (-1) ** m == eps)


@dataclass(frozen=True)
class EpsilonPartition:
    parts: Partition
    epsilon: int
    N: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "parts", normalise(self.parts))
        object.__setattr__(self, "N", sum(self.parts))
        if self.epsilon not in (1, -1):
            raise PartitionError("epsilon must be +1 or -1")
        if not in_P(self.parts, self.epsilon):
            raise PartitionError(f"{self.parts} is not in P_{self.epsilon}({self.N})")

    def r(self, m: int) -> int:
        return self.parts.count(m)


@lru_cache(maxsize=None)
def P(eps: int, N: int) -> tuple[Partition, ...]:
    return tuple(mu for mu in all_partitions(N) if in_P(mu, eps))


def is_very_even(mu: Sequence[int]) -> bool:
    return len(mu) > 0 and all(m % 2 == 0 and r % 2 == 0 for m, r in Counter(mu).items())


def dominance_leq(mu: Sequence[int], nu: Sequence[int]) -> bool:
    if sum(mu) != sum(nu):
        raise PartitionError("dominance needs partitions of the same size")
    a = b = 0
    for k in range(max(len(mu), len(nu))):
        a += mu[k] if k < len(mu) else 0
        b += nu[k] if k < len(nu) else 0
        if a > b:
            return False
    return True


def transpose(mu: Sequence[int]) -> Partition:
    mu = normalise(mu)
    if not mu:
        return ()
    return tuple(sum(1 for m in mu if m > k) for k in range(mu[0]))


def _eps(family: str | int) -> int:
    if family in (1, -1):
        return family
    try:
        return FAMILIES[str(family).upper()][0]
    except KeyError:
        raise PartitionError(f"unknown classical family {family!r}") from None


def collapse(mu: Sequence[int], family: str | int) -> Partition:
    """Largest member of ``P_eps(N)`` dominated by mu."""
    eps = _eps(family)
    parts = list(normalise(mu))
    if eps == -1 and sum(parts) % 2:
        raise PartitionError("symplectic partitions have even size")
    while True:
        counts = Counter(parts)
        bad = [m for m, r in counts.items() if (-1) ** m == eps and r % 2 == 1]
        if not bad:
            return tuple(parts)
        q = max(bad)
        last = max(i for i, m in enumerate(parts) if m == q)
        parts[last] -= 1
        for j in range(last + 1, len(parts)):
            if parts[j] < q - 1:
                parts[j] += 1
                break
        else:
            parts.append(1)
        parts = sorted((p for p in parts if p), reverse=True)


def collapse_bruteforce(mu: Sequence[int], family: str | int) -> Partition:
    eps = _eps(family)
    mu = normalise(mu)
    below = [nu for nu in P(eps, sum(mu)) if dominance_leq(nu, mu)]
    top = [nu for nu in below if all(dominance_leq(x, nu) for x in below)]
    assert len(top) == 1
    return top[0]


def ls_dual(mu: Sequence[int], family: str | int) -> Partition:
    return collapse(transpose(mu), family)


def is_special(mu: Sequence[int], family: str) -> bool:
    """Transpose criterion: C and D need ``mu^t`` symplectic, B needs it orthogonal."""
    fam = str(family).upper()
    target = {"B": 1, "C": -1, "D": -1}[fam]
    return in_P(transpose(mu), target)


# ---------------------------------------------------------------------------
# Weighted diagrams
# ---------------------------------------------------------------------------

def h_values(mu: Sequence[int]) -> list[int]:
    out = []
    for m in mu:
        out.extend(range(m - 1, -m, -2))
    return sorted(out, reverse=True)


def diagram_from_partition(mu: Sequence[int], family: str, rank: int | None = None,
                           very_even_variant: int = 0) -> tuple[int, ...]:
    mu = normalise(mu)
    fam = family.upper()
    N = sum(mu)
    h = h_values(mu)
    if fam == "A":
        return tuple(h[i] - h[i + 1] for i in range(N - 1))
    eps, size = FAMILIES[fam]
    if not in_P(mu, eps):
        raise PartitionError(f"{mu} does not label a class of type {fam}")
    n = N // 2
    if rank is not None and size(rank) != N:
        raise PartitionError(f"{mu} has size {N}, type {fam}{rank} needs {size(rank)}")
    top = h[:n]
    d = [top[i] - top[i + 1] for i in range(n - 1)]
    if fam == "C":
        d.append(2 * top[-1])
    elif fam == "B":
        d.append(top[-1])
    else:
        if very_even_variant and is_very_even(mu):
            top = top[:-1] + [-top[-1]]
            d = [top[i] - top[i + 1] for i in range(n - 1)]
        d.append(top[-2] + top[-1])
    return tuple(d)


def diagrams_from_partition(mu: Sequence[int], family: str) -> list[tuple[int, ...]]:
    """Every diagram labelled by mu; very even D partitions label two classes."""
    out = [diagram_from_partition(mu, family)]
    if family.upper() == "D" and is_very_even(mu):
        out.append(diagram_from_partition(mu, family, very_even_variant=1))
    return out


def partition_family(family: str, rank: int) -> tuple[Partition, ...]:
    fam = family.upper()
    if fam == "A":
        return tuple(all_partitions(rank + 1))
    eps, size = FAMILIES[fam]
    return P(eps, size(rank))


def classical_diagram_set(family: str, rank: int) -> set[tuple[int, ...]]:
    return {d for mu in partition_family(family, rank) for d in diagrams_from_partition(mu, family)}


# ---------------------------------------------------------------------------
# Index sets, component groups and canonical quotients
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IndexSet:
    I: tuple[int, ...]
    I_odd: tuple[int, ...]
    I_ev: tuple[int, ...]

    @property
    def j_sequence(self) -> tuple[int, ...]:
        return self.I_odd


def index_set(mu: Sequence[int], eps: int) -> IndexSet:
    counts = Counter(mu)
    I = tuple(sorted(k for k, r in counts.items() if (-1) ** k == -eps))
    return IndexSet(I, tuple(k for k in I if counts[k] % 2 == 1), tuple(k for k in I if counts[k] % 2 == 0))


def component_group_rank(mu: Sequence[int], eps: int) -> int:
    """F2-rank of ``A_G(u)`` for ``G = Sp`` (eps = -1) or ``G = SO`` (eps = 1)."""
    EpsilonPartition(tuple(mu), eps)
    k = len(index_set(mu, eps).I)
    return k if eps == -1 else max(k - 1, 0)


# A generator is a product of involutions a_s^{(k)}, stored as ((s, k), ...).
Generator = tuple[tuple[int, int], ...]


def format_generator(g: Generator) -> str:
    return "".join(f"a{s}^({k})" for s, k in g) or "1"


@dataclass(frozen=True)
class CoveringSpec:
    mu: Partition
    epsilon: int
    generators: tuple[Generator, ...]
    kernel_removed: tuple[int, ...]   # 1-based n of removed c_n (orthogonal case)
    abar_rank: int
    naive: bool = False

    def generator_names(self) -> list[str]:
        return [format_generator(g) for g in self.generators]

    def to_json(self) -> dict:
        return {"mu": list(self.mu), "epsilon": self.epsilon, "generators": self.generator_names(),
                "kernel_removed": list(self.kernel_removed), "abar_rank": self.abar_rank}


def _c_generators(mu: Sequence[int]) -> list[Generator]:
    counts = Counter(mu)
    ix = index_set(mu, 1)
    ks = ix.I
    out = []
    for n in range(len(ks) - 1):
        k, k1 = ks[n], ks[n + 1]
        if k in ix.I_odd:
            out.append(((1, k1), (1, k)))
        else:
            assert counts[k] > 1, "an even multiplicity r_k must exceed 1"
            out.append(((1, k1), (2, k)))
    return out


def _f2_rank(vectors: list[list[int]]) -> int:
    rows = [int("".join(map(str, v)), 2) for v in vectors if any(v)]
    rank = 0
    while rows:
        pivot = max(rows)
        if pivot == 0:
            break
        rank += 1
        top = pivot.bit_length() - 1
        rows = [r ^ pivot if (r >> top) & 1 else r for r in rows if r != pivot]
        rows = [r for r in rows if r]
    return rank


def sommers_kernel(mu: Sequence[int]) -> list[list[int]]:
    """Kernel vectors of ``A(u) -> Abar`` over the basis ``abar^{(k)}``, k in I."""
    ix = index_set(mu, 1)
    pos = {k: i for i, k in enumerate(ix.I)}
    js = ix.I_odd
    vecs = []
    for m in range(1, len(js), 2):  # odd m < s (1-based)
        jm, jm1 = js[m - 1], js[m]
        for i in ix.I:
            if jm < i < jm1:
                v = [0] * len(ix.I)
                v[pos[i]] ^= 1
                v[pos[jm]] ^= 1
                vecs.append(v)
        v = [0] * len(ix.I)
        v[pos[jm1]] ^= 1
        v[pos[jm]] ^= 1
        vecs.append(v)
    return vecs


def canonical_quotient_spec(mu: Sequence[int], eps: int, naive: bool = False) -> CoveringSpec:
    """Generators of the admissible covering.

    Symplectic: ``a_1^{(k)}`` for k in I.  Orthogonal (special mu): the
    ``c_n`` products with one of ``c_{n-1}, c_n`` dropped at every interior
    odd-multiplicity index.  With ``naive=True`` nothing is dropped.
    """
    mu = EpsilonPartition(tuple(mu), eps).parts
    ix = index_set(mu, eps)
    if eps == -1:
        return CoveringSpec(mu, eps, tuple(((1, k),) for k in ix.I), (), len(ix.I), naive)
    if not naive and not is_special(mu, "B" if sum(mu) % 2 else "D"):
        raise PartitionError(f"{mu} is not special; the orthogonal covering needs a special class")
    if not ix.I:
        assert is_very_even(mu), "empty index set forces a very even partition"
        return CoveringSpec(mu, eps, (), (), 0, naive)
    cs = _c_generators(mu)
    t = len(ix.I)
    removed: set[int] = set()
    if not naive:
        js = ix.I_odd
        for n in range(2, t):  # 1 < n < t, 1-based
            k = ix.I[n - 1]
            if k in js:
                m = js.index(k) + 1
                removed.add(n if m % 2 == 1 else n - 1)
    kept = tuple(c for n, c in enumerate(cs, start=1) if n not in removed)
    kernel_rank = _f2_rank(sommers_kernel(mu))
    return CoveringSpec(mu, eps, kept, tuple(sorted(removed)), t - 1 - kernel_rank, naive)


# ---------------------------------------------------------------------------
# Orbit dimensions (independent check of orbits.orbit_dim)
# ---------------------------------------------------------------------------

def classical_orbit_dim(mu: Sequence[int], family: str) -> int:
    """Standard formula ``dim O = dim g - centraliser``, via the transpose."""
    fam = family.upper()
    mu = normalise(mu)
    N = sum(mu)
    s = sum(x * x for x in transpose(mu))
    if fam == "A":
        return N * N - s
    odd = sum(1 for m in mu if m % 2 == 1)
    if fam == "C":
        return N * (N + 1) // 2 - (s + odd) // 2
    return N * (N - 1) // 2 - (s - odd) // 2
