import cmath

import numpy as np
from hypothesis import given, strategies as st

from orbitkit.cyclotomic import field


def evaluate(K, v):
    z = cmath.exp(2j * cmath.pi / K.e)
    return sum(int(c) * z ** k for k, c in enumerate(v))


conductors = st.sampled_from([1, 2, 3, 4, 5, 6, 8, 12, 15])


@st.composite
def two_elements(draw):
    K = field(draw(conductors))
    el = st.lists(st.integers(-5, 5), min_size=K.phi, max_size=K.phi).map(lambda x: np.array(x, dtype=np.int64))
    return K, draw(el), draw(el)


@given(two_elements())
def test_product_matches_complex_evaluation(kab):
    K, a, b = kab
    assert abs(evaluate(K, K.mul(a, b)) - evaluate(K, a) * evaluate(K, b)) < 1e-6


@given(two_elements())
def test_conjugation(kab):
    K, a, _ = kab
    assert abs(evaluate(K, K.conj(a)) - evaluate(K, a).conjugate()) < 1e-6
    assert np.array_equal(K.conj(K.conj(a)), a)


def test_roots_of_unity():
    K = field(12)
    assert K.phi == 4
    one = K.integer(1)
    z = K.root(1)
    p = one
    for _ in range(12):
        p = K.mul(p, z)
    assert np.array_equal(p, one)
    # 1 + zeta_3 + zeta_3^2 = 0
    K3 = field(3)
    assert not K3.from_exponents({0: 1, 1: 1, 2: 1}).any()


def test_matmul_identity():
    K = field(5)
    A = np.random.default_rng(0).integers(-3, 4, size=(3, 3, K.phi))
    assert np.array_equal(K.matmul(A, K.identity(3)), A)
