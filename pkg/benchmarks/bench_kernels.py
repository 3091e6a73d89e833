"""Time the integer kernels on both backends.

    python benchmarks/bench_kernels.py [--repeat 5]

Each kernel runs on inputs taken from real workloads (E8 roots, the S5 Fourier
matrix, the S5 multiplication table); results from the two backends are
compared before any timing is reported.
"""
import argparse
import time

import numpy as np

from orbitkit import _kernels
from orbitkit import drinfeld as dr
from orbitkit.orbits import generate_all
from orbitkit.root_datum import build_root_datum


def grading_inputs():
    G = build_root_datum("E8")
    roots = np.array(G.roots.positive, dtype=np.int64)
    # every diagram with entries in {0,1,2}
    lams = np.array(np.meshgrid(*[range(3)] * 8, indexing="ij")).reshape(8, -1).T
    return "grading_histogram (E8, 3^8 diagrams)", _kernels.grading_histogram, (roots, lams, -60, 60)


def polymat_inputs():
    F = dr.fourier_matrix(dr.named_group("S5"))
    a = np.ascontiguousarray(F.numer)
    return f"polymat_mul (S5 Fourier, {a.shape[0]}x{a.shape[0]})", _kernels.polymat_mul, (a, a)


def class_inputs():
    G = dr.named_group("S5")
    cd = G.classes
    reps = np.array([G.elements.index(r) for r in cd.reps], dtype=np.int64)
    args = (G.mult, G.inv, np.asarray(cd.class_of), reps)
    return "class_constants (S5)", _kernels.class_constants, args


def bench(fn, args, backend, repeat):
    fn(*args, backend=backend)  # warm-up, includes compilation
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn(*args, backend=backend)
        best = min(best, time.perf_counter() - t)
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    print(f"numba available: {_kernels.HAVE_NUMBA}")
    for name, fn, inputs in (grading_inputs(), polymat_inputs(), class_inputs()):
        ref = fn(*inputs, backend="numpy")
        row = [f"{name:45s}", f"numpy {bench(fn, inputs, 'numpy', args.repeat) * 1e3:9.2f} ms"]
        if _kernels.HAVE_NUMBA:
            assert np.array_equal(ref, fn(*inputs, backend="numba")), name
            row.append(f"numba {bench(fn, inputs, 'numba', args.repeat) * 1e3:9.2f} ms")
        print("  ".join(row))
    t = time.perf_counter()
    generate_all(build_root_datum("E8"))
    print(f"{'generate_all(E8), end to end':45s}  {time.perf_counter() - t:.2f} s ({_kernels.BACKEND})")


if __name__ == "__main__":
    main()
