"""Fusion of unipotent classes from a subsystem subgroup into the ambient group.

Given a weighted Dynkin diagram d of a subsystem with simple roots Pi, the
values of the ambient Dynkin cocharacter on the ambient simple roots are

    f = d . C^{-1} . A . D

where C is the Cartan matrix of the subsystem, A expresses its simple
coroots over the ambient simple coroots and D is the ambient Cartan matrix.
The dominant W-conjugate of f is the image diagram.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import _linalg as la
from .root_datum import (EmbeddedSubsystem, RootDatum, WeylElement, element_with_inversions,
                         inversion_set, parse_signed_subset_signs, pseudo_levi_from_subset,
                         subsystem_from_roots)

__all__ = ["EmbeddedSubsystem", "FusionTrace", "FusionError", "fuse", "fuse_raw", "fuse_trace",
           "fuse_class_spec", "signed_subset_diagram"]


class FusionError(ValueError):
    pass


@dataclass(frozen=True)
class FusionTrace:
    C: list
    A: list
    D: list
    f_simple: list            # f on the ambient simple roots
    f_positive: list          # f on every positive root
    w: WeylElement
    inversions: list          # positive roots inverted by w
    f_w_positive: list        # f o w on every positive root
    diagram: tuple


def check_embedding(sub: EmbeddedSubsystem) -> None:
    c = sub.cartan  # validates the Cartan matrix
    if la.rank(sub.A) != sub.rank:
        raise FusionError("embedding matrix A must have full row rank")
    # <beta_i, beta_j^vee> = C[j][i] by construction of ``sub.cartan``
    del c


def fuse_raw(ambient: RootDatum, sub: EmbeddedSubsystem, d: Sequence[int]):
    """Steps 1-3 without validation: returns (w, dominant values on Delta)."""
    if len(d) != sub.rank:
        raise FusionError(f"sub-diagram needs {sub.rank} weights")
    f = la.vecmat([Fraction(x) for x in d], sub.fusion_matrix)
    if any(x.denominator != 1 for x in f):
        raise FusionError(f"non-integral fusion values {f}")
    w, fw = element_with_inversions(ambient.roots, f)
    return w, fw


def fuse_trace(ambient: RootDatum, sub: EmbeddedSubsystem, d: Sequence[int]) -> FusionTrace:
    rs = ambient.roots
    f = la.vecmat([Fraction(x) for x in d], sub.fusion_matrix)
    if any(x.denominator != 1 for x in f):
        raise FusionError(f"non-integral fusion values {f}")
    w, fw = element_with_inversions(rs, f)
    f_pos = [sum(a * b for a, b in zip(v, f)) for v in rs.positive]
    fw_pos = [sum(a * b for a, b in zip(v, fw)) for v in rs.positive]
    return FusionTrace(sub.cartan, sub.A, ambient.cartan, f, f_pos, w,
                       [rs.positive[k] for k in inversion_set(rs, w)], fw_pos,
                       tuple(int(x) for x in fw))


def fuse(ambient: RootDatum, sub: EmbeddedSubsystem, d: Sequence[int], validate: bool = True) -> tuple[int, ...]:
    """Image in the ambient group of the class with diagram d of the subsystem."""
    check_embedding(sub)
    _, fw = fuse_raw(ambient, sub, d)
    out = tuple(int(x) for x in fw)
    if any(x not in (0, 1, 2) for x in out):
        raise FusionError(f"fusion produced weights outside {{0,1,2}}: {out}")
    if validate:
        from .orbits import diagram_set
        if out not in diagram_set(ambient):
            raise FusionError(f"fusion produced {out}, which is not a diagram of {ambient}")
    return out


def signed_subset_diagram(J) -> tuple[list[int], list[int]]:
    """Split a signed subset into node list and even diagram (2 for +, 0 for -)."""
    pairs = parse_signed_subset_signs(J)
    return [j for j, _ in pairs], [2 if pos else 0 for _, pos in pairs]


def fuse_class_spec(ambient: RootDatum, J, validate: bool = True) -> tuple[int, ...]:
    nodes, d = signed_subset_diagram(J)
    sub = pseudo_levi_from_subset(ambient, nodes)
    return fuse(ambient, sub, d, validate)


def explicit_subsystem(ambient: RootDatum, roots: Sequence[Sequence[int]]) -> EmbeddedSubsystem:
    return subsystem_from_roots(ambient, roots)
