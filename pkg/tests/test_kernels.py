import numpy as np
import pytest
from hypothesis import given, strategies as st
from hypothesis.extra.numpy import arrays

from orbitkit import _kernels

needs_numba = pytest.mark.skipif(not _kernels.HAVE_NUMBA, reason="numba not available")
small = st.integers(-4, 4)


@needs_numba
@given(arrays(np.int64, st.tuples(st.integers(1, 30), st.just(4)), elements=small),
       arrays(np.int64, st.tuples(st.integers(1, 6), st.just(4)), elements=small))
def test_grading_histogram_backends_agree(roots, lams):
    a = _kernels.grading_histogram(roots, lams, -10, 10, backend="numpy")
    b = _kernels.grading_histogram(roots, lams, -10, 10, backend="numba")
    assert np.array_equal(a, b)


@needs_numba
@given(st.integers(1, 4), st.integers(1, 4), st.integers(1, 4), st.integers(1, 5), st.data())
def test_polymat_backends_agree(n, k, m, d, data):
    a = data.draw(arrays(np.int64, (n, k, d), elements=small))
    b = data.draw(arrays(np.int64, (k, m, d), elements=small))
    assert np.array_equal(_kernels.polymat_mul(a, b, backend="numpy"), _kernels.polymat_mul(a, b, backend="numba"))


def test_polymat_is_polynomial_product():
    a = np.array([[[1, 2]]])  # 1 + 2x
    b = np.array([[[3, 0, 1]]])  # 3 + x^2
    assert _kernels.polymat_mul(a, b).tolist() == [[[3, 6, 1, 2]]]


def test_overflow_guard():
    big = np.full((1, 1, 1), 2**40, dtype=np.int64)
    with pytest.raises(OverflowError):
        _kernels.polymat_mul(big, big)


@needs_numba
def test_class_constants_backends_agree():
    from orbitkit import drinfeld as dr
    G = dr.named_group("S4")
    cd = G.classes
    reps = np.array([G.index[r] for r in cd.reps])
    args = (G.mult, G.inv, np.asarray(cd.class_of), reps)
    assert np.array_equal(_kernels.class_constants(*args, backend="numpy"),
                          _kernels.class_constants(*args, backend="numba"))


def test_env_switch_selects_numpy():
    import subprocess
    import sys
    out = subprocess.run([sys.executable, "-c", "from orbitkit import _kernels; print(_kernels.BACKEND)"],
                         env={"ORBITKIT_NUMBA": "0", "PATH": ""}, capture_output=True, text=True)
    assert out.stdout.strip() == "numpy"
