"""Exact arithmetic in ``Z[zeta_e]``.

An element is an integer vector of length ``phi(e)`` holding coefficients
on ``1, zeta, ..., zeta^(phi(e)-1)``.  Matrices of such elements are integer
arrays with one extra trailing axis.
"""
from __future__ import annotations

from functools import lru_cache

import numpy as np
from sympy import Poly, cyclotomic_poly, symbols, totient

from . import _kernels

_x = symbols("x")


class CyclotomicField:
    def __init__(self, e: int):
        if e < 1:
            raise ValueError("conductor must be positive")
        self.e = e
        self.phi = int(totient(e))
        coeffs = [int(c) for c in Poly(cyclotomic_poly(e, _x), _x).all_coeffs()][::-1]
        # rows: x^k mod Phi_e for k < 2e
        red = np.zeros((2 * e, self.phi), dtype=np.int64)
        for k in range(2 * e):
            if k < self.phi:
                red[k, k] = 1
            else:
                prev = red[k - 1]
                # x * prev, then replace x^phi using the monic cyclotomic polynomial
                shifted = np.zeros(self.phi + 1, dtype=np.int64)
                shifted[1:] = prev
                top = shifted[self.phi]
                red[k] = shifted[: self.phi] - top * np.array(coeffs[: self.phi], dtype=np.int64)
        self._red = red
        conj = np.zeros((self.phi, self.phi), dtype=np.int64)
        for j in range(self.phi):
            conj[j] = red[(-j) % e]
        self._conj = conj

    def __repr__(self) -> str:
        return f"CyclotomicField({self.e})"

    # elements ------------------------------------------------------------
    def zero(self) -> np.ndarray:
        return np.zeros(self.phi, dtype=np.int64)

    def integer(self, n: int) -> np.ndarray:
        v = self.zero()
        v[0] = n
        return v

    def root(self, k: int) -> np.ndarray:
        return self._red[k % self.e].copy()

    def reduce(self, poly: np.ndarray) -> np.ndarray:
        """Reduce coefficient arrays of any length (last axis) modulo Phi_e."""
        poly = np.asarray(poly, dtype=np.int64)
        d = poly.shape[-1]
        if d <= self.phi:
            pad = [(0, 0)] * (poly.ndim - 1) + [(0, self.phi - d)]
            return np.pad(poly, pad)
        if d > 2 * self.e:
            folded = np.zeros(poly.shape[:-1] + (self.e,), dtype=np.int64)
            for k in range(d):
                folded[..., k % self.e] += poly[..., k]
            poly, d = folded, self.e
        return poly @ self._red[:d]

    def mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self.reduce(np.convolve(a, b))

    def conj(self, a: np.ndarray) -> np.ndarray:
        return np.asarray(a, dtype=np.int64) @ self._conj

    def from_exponents(self, mults: dict[int, int]) -> np.ndarray:
        v = self.zero()
        for k, m in mults.items():
            v = v + m * self._red[k % self.e]
        return v

    def is_rational(self, a: np.ndarray) -> bool:
        return not np.any(np.asarray(a)[..., 1:])

    def format(self, a: np.ndarray, den: int = 1) -> str:
        terms = []
        for k, c in enumerate(a):
            c = int(c)
            if not c:
                continue
            base = "1" if k == 0 else (f"E({self.e})" if k == 1 else f"E({self.e})^{k}")
            if k == 0:
                terms.append(f"{c}")
            elif c == 1:
                terms.append(base)
            elif c == -1:
                terms.append("-" + base)
            else:
                terms.append(f"{c}*{base}")
        s = "+".join(terms).replace("+-", "-") or "0"
        if den != 1:
            s = f"({s})/{den}" if len(terms) > 1 else f"{s}/{den}"
        return s

    # matrices ------------------------------------------------------------
    def matmul(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        return self.reduce(_kernels.polymat_mul(A, B))

    def conj_matrix(self, A: np.ndarray) -> np.ndarray:
        return np.asarray(A, dtype=np.int64) @ self._conj

    def identity(self, n: int, scale: int = 1) -> np.ndarray:
        out = np.zeros((n, n, self.phi), dtype=np.int64)
        for i in range(n):
            out[i, i, 0] = scale
        return out


@lru_cache(maxsize=None)
def field(e: int) -> CyclotomicField:
    return CyclotomicField(e)
