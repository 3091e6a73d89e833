"""Integer inner loops with two interchangeable backends.

The numba versions are compiled with ``@njit``; the numpy versions are plain
vectorised code.  Set ``ORBITKIT_NUMBA=0`` to force numpy.  All kernels work
on int64 arrays and are exact; callers guard against overflow.
"""
from __future__ import annotations

import os

import numpy as np

_want = os.environ.get("ORBITKIT_NUMBA", "1").strip().lower() not in ("0", "false", "no", "off")

try:
    if not _want:
        raise ImportError("disabled by ORBITKIT_NUMBA")
    from numba import njit
    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False

BACKEND = "numba" if HAVE_NUMBA else "numpy"


# ---- numpy reference implementations --------------------------------------

def grading_histogram_np(roots: np.ndarray, lams: np.ndarray, lo: int, hi: int) -> np.ndarray:
    vals = roots @ lams.T  # (N, K)
    out = np.zeros((lams.shape[0], hi - lo + 1), dtype=np.int64)
    for v in range(lo, hi + 1):
        out[:, v - lo] = (vals == v).sum(axis=0)
    return out


def polymat_mul_np(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    n, k, d1 = a.shape
    _, m, d2 = b.shape
    out = np.zeros((n, m, d1 + d2 - 1), dtype=np.int64)
    for i in range(d1):
        ai = a[:, :, i]
        if not ai.any():
            continue
        for j in range(d2):
            out[:, :, i + j] += ai @ b[:, :, j]
    return out


def class_constants_np(mult: np.ndarray, inv: np.ndarray, class_of: np.ndarray,
                       reps: np.ndarray) -> np.ndarray:
    # a[j, r, s] = #{x in K_j : x^{-1} g_s in K_r}
    k = reps.shape[0]
    out = np.zeros((k, k, k), dtype=np.int64)
    for s in range(k):
        y = mult[inv, reps[s]]  # x^{-1} g_s for every x
        np.add.at(out[:, :, s], (class_of, class_of[y]), 1)
    return out


# ---- numba implementations -------------------------------------------------

if HAVE_NUMBA:
    @njit(cache=True)
    def _grading_histogram_nb(roots, lams, lo, hi):
        n, r = roots.shape
        k = lams.shape[0]
        out = np.zeros((k, hi - lo + 1), dtype=np.int64)
        for c in range(k):
            for a in range(n):
                v = 0
                for t in range(r):
                    v += roots[a, t] * lams[c, t]
                if lo <= v <= hi:
                    out[c, v - lo] += 1
        return out

    @njit(cache=True)
    def _polymat_mul_nb(a, b):
        n, k, d1 = a.shape
        m = b.shape[1]
        d2 = b.shape[2]
        out = np.zeros((n, m, d1 + d2 - 1), dtype=np.int64)
        for i in range(n):
            for t in range(k):
                for p in range(d1):
                    x = a[i, t, p]
                    if x == 0:
                        continue
                    for j in range(m):
                        for q in range(d2):
                            out[i, j, p + q] += x * b[t, j, q]
        return out

    @njit(cache=True)
    def _class_constants_nb(mult, inv, class_of, reps):
        k = reps.shape[0]
        n = class_of.shape[0]
        out = np.zeros((k, k, k), dtype=np.int64)
        for s in range(k):
            g = reps[s]
            for x in range(n):
                y = mult[inv[x], g]
                out[class_of[x], class_of[y], s] += 1
        return out


def _i64(x) -> np.ndarray:
    return np.ascontiguousarray(x, dtype=np.int64)


def grading_histogram(roots, lams, lo: int, hi: int, backend: str | None = None) -> np.ndarray:
    """Row c counts the roots whose pairing with ``lams[c]`` equals lo..hi."""
    roots, lams = _i64(roots), _i64(lams)
    if roots.shape[0] == 0 or lams.shape[0] == 0:
        return np.zeros((lams.shape[0], hi - lo + 1), dtype=np.int64)
    if (backend or BACKEND) == "numba" and HAVE_NUMBA:
        return _grading_histogram_nb(roots, lams, lo, hi)
    return grading_histogram_np(roots, lams, lo, hi)


def polymat_mul(a, b, backend: str | None = None) -> np.ndarray:
    """Product of matrices with polynomial entries (last axis = coefficients)."""
    a, b = _i64(a), _i64(b)
    bound = int(np.abs(a).max(initial=0)) * int(np.abs(b).max(initial=0)) * a.shape[1] * min(a.shape[2], b.shape[2])
    if bound >= 2**62:
        raise OverflowError("polynomial matrix product would overflow int64")
    if (backend or BACKEND) == "numba" and HAVE_NUMBA:
        return _polymat_mul_nb(a, b)
    return polymat_mul_np(a, b)


def class_constants(mult, inv, class_of, reps, backend: str | None = None) -> np.ndarray:
    mult, inv, class_of, reps = _i64(mult), _i64(inv), _i64(class_of), _i64(reps)
    if (backend or BACKEND) == "numba" and HAVE_NUMBA:
        return _class_constants_nb(mult, inv, class_of, reps)
    return class_constants_np(mult, inv, class_of, reps)
