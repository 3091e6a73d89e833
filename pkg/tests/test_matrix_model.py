import json
from collections import Counter

import numpy as np
import pytest
from hypothesis import given, strategies as st

from orbitkit import classical as cl
from orbitkit import matrix_model as mm
from orbitkit.orbits import dynkin_cocharacter, grading_dim
from orbitkit.root_datum import build_root_datum


def all_models(max_N):
    for N in range(1, max_N + 1):
        for eps in (1, -1):
            if eps == -1 and N % 2:
                continue
            for mu in cl.P(eps, N):
                yield mu, eps


def ambient_type(N, eps):
    if eps == -1:
        return "C", N // 2
    return ("B", (N - 1) // 2) if N % 2 else ("D", N // 2)


@pytest.mark.parametrize("mu,eps", list(all_models(8)))
def test_invariants_and_jordan_type(mu, eps):
    model = mm.build_model(mu, eps)
    assert mm.model_invariants(model) == []
    assert mm.jordan_type(model) == tuple(mu)
    # B is eps-symmetric and e is B-skew
    assert np.array_equal(model.B.T, eps * model.B)
    assert np.array_equal(model.e.T @ model.B + model.B @ model.e, np.zeros_like(model.B))


@pytest.mark.parametrize("mu,eps", [(mu, eps) for mu, eps in all_models(10) if sum(mu) >= 3])
def test_grading_matches_root_count(mu, eps):
    N = sum(mu)
    fam, n = ambient_type(N, eps)
    if fam == "D" and n < 4:
        return
    G = build_root_datum(f"{fam}{n}")
    d = cl.diagrams_from_partition(mu, fam)[0]
    lam = dynkin_cocharacter(G, d)
    dims = mm.model_grading_dims(mm.build_model(mu, eps))
    for i, v in dims.items():
        assert grading_dim(G, lam, i) == v


def test_levi_form_kinds():
    levi = mm.centralizer_levi_factor(mm.build_model((4, 4, 2, 2, 1, 1), 1))
    assert [(f.m, f.dim, f.kind) for f in levi] == [(4, 2, "Sp"), (2, 2, "Sp"), (1, 2, "O")]
    levi = mm.centralizer_levi_factor(mm.build_model((3, 3, 2), -1))
    assert [(f.m, f.dim, f.kind) for f in levi] == [(3, 2, "Sp"), (2, 1, "O")]


def test_naive_generators_fail_k2():
    model = mm.build_model((5, 3, 1), 1)
    naive = mm.verify_admissible(model, cl.canonical_quotient_spec((5, 3, 1), 1, naive=True))
    assert naive.failed() == ["K2 disjoint (-1)-eigenspaces on V(0)"]
    assert mm.verify_admissible(model, cl.canonical_quotient_spec((5, 3, 1), 1)).ok


def test_bad_partition_rejected():
    with pytest.raises(Exception):
        mm.build_model((2, 1), 1)


def test_dump_round_trips():
    d = mm.dump_model(mm.build_model((4, 2), -1))
    assert json.loads(json.dumps(d)) == d
    assert len(d["B"]) == 6 and all(len(x) == 2 for row in d["B"] for x in row)


@given(st.integers(1, 6).map(lambda k: 2 * k), st.data())
def test_sp_models_admissible(N, data):
    mu = data.draw(st.sampled_from(cl.P(-1, N)))
    model = mm.build_model(mu, -1)
    assert mm.verify_admissible(model, cl.canonical_quotient_spec(mu, -1)).ok


@given(st.integers(3, 11), st.data())
def test_so_special_models_admissible(N, data):
    fam = "B" if N % 2 else "D"
    specials = [mu for mu in cl.P(1, N) if cl.is_special(mu, fam)]
    mu = data.draw(st.sampled_from(specials))
    rep = mm.verify_admissible(mm.build_model(mu, 1), cl.canonical_quotient_spec(mu, 1))
    assert rep.ok, rep.failed()


@given(st.sampled_from(list(all_models(10))))
def test_involutions_are_isometries(mue):
    mu, eps = mue
    model = mm.build_model(mu, eps)
    for a in model.involutions.values():
        assert np.array_equal(a @ a, np.eye(model.N, dtype=np.int64))
        assert np.array_equal(a.T @ model.B @ a, model.B)
        assert np.array_equal(a @ model.e, model.e @ a)
