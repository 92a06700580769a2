import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from eprbell import (
    GeneralState,
    LambdaModel,
    LocalState,
    ModelError,
    Outcome,
    Scenario,
    ShapeMismatch,
    epr_bell_derivation,
    factorization_check,
    oi_check,
    orthodox_model,
    pi_check,
)

from conftest import single_pair

unit = st.floats(0.0, 1.0, allow_nan=False)


def deterministic_local(a_plus, b_plus):
    ra = [[1.0, 0.0] if a else [0.0, 1.0] for a in a_plus]
    rb = [[1.0, 0.0] if b else [0.0, 1.0] for b in b_plus]
    return LocalState(ra, rb)


@st.composite
def local_states(draw, m, n):
    pa = draw(arrays(float, m, elements=unit))
    pb = draw(arrays(float, n, elements=unit))
    return LocalState(np.stack([pa, 1 - pa], 1), np.stack([pb, 1 - pb], 1))


@st.composite
def general_states(draw, m, n):
    raw = draw(arrays(float, (m, n, 2, 2), elements=st.floats(0.0, 1.0)))
    raw = raw + 1e-3
    return GeneralState(raw / raw.sum(axis=(2, 3), keepdims=True))


def mixture(states):
    w = 1.0 / len(states)
    return [(w, s) for s in states]


def test_model_validation():
    s = deterministic_local([True], [False])
    with pytest.raises(ModelError, match="sum to 1"):
        LambdaModel([(0.9, s)], kind="local")
    with pytest.raises(ModelError):
        LambdaModel([], kind="local")
    with pytest.raises(ModelError):
        LambdaModel([(1.0, s)], kind="general")
    with pytest.raises(ModelError, match="negative"):
        LambdaModel.single([[[[1.2, -0.2], [0.0, 0.0]]]])
    with pytest.raises(ModelError, match="normalized"):
        LambdaModel.single([[[[0.5, 0.0], [0.0, 0.0]]]])
    with pytest.raises(ShapeMismatch):
        LambdaModel([(0.5, s), (0.5, deterministic_local([True, False], [True]))], kind="local")


def test_pi_orthodox_is_zero(chsh_scenario):
    assert pi_check(orthodox_model(chsh_scenario), chsh_scenario) <= 1e-12


def test_pi_constructed_violation():
    s = Scenario.planar([0.0, 1.0], [0.5])
    joint = np.zeros(s.table_shape)
    joint[0, 0] = [[0.45, 0.05], [0.45, 0.05]]  # P(B=+ | i=0) = 0.9
    joint[1, 0] = [[0.05, 0.45], [0.05, 0.45]]  # P(B=+ | i=1) = 0.1
    assert pi_check(LambdaModel.single(joint), s) == pytest.approx(0.8, abs=1e-15)


def test_oi_orthodox_parallel(parallel_pair):
    m = orthodox_model(parallel_pair)
    # P(B=- | A=+) = 1 against P(B=-) = 1/2
    assert oi_check(m, parallel_pair) == pytest.approx(0.5, abs=1e-12)
    assert pi_check(m, parallel_pair) <= 1e-12


def test_oi_uniform_and_local_are_zero(parallel_pair):
    uniform = LambdaModel.single(np.full((1, 1, 2, 2), 0.25))
    assert oi_check(uniform, parallel_pair) == 0.0
    local = LambdaModel([(1.0, LocalState([[0.3, 0.7]], [[0.6, 0.4]]))], kind="local")
    assert oi_check(local, parallel_pair) <= 1e-15


def test_oi_skips_null_conditioning_events(parallel_pair):
    # B = + never happens; conditioning on it must be skipped, not divided by zero
    joint = [[[[0.0, 0.3], [0.0, 0.7]]]]
    with np.errstate(all="raise"):
        assert oi_check(LambdaModel.single(joint), parallel_pair) == pytest.approx(0.0, abs=1e-15)


def test_oi_guard_uses_tol(parallel_pair):
    joint = [[[[1e-12, 0.3], [0.0, 0.7 - 1e-12]]]]
    m = LambdaModel.single(joint)
    # P(B=+) = 1e-12 <= tol: skipped; otherwise P(A=+|B=+) = 1 vs 0.3
    assert oi_check(m, parallel_pair, tol=1e-9) < 1e-9
    assert oi_check(m, parallel_pair, tol=1e-15) == pytest.approx(0.7, abs=1e-9)


def test_factorization_orthodox_parallel(parallel_pair):
    r = factorization_check(orthodox_model(parallel_pair), parallel_pair)
    # |1/2 - 1/2 * 1/2| on the (+,-) cell, and |0 - 1/4| on (+,+)
    assert r.factorization_deviation == pytest.approx(0.25, abs=1e-12)
    assert r.oi_deviation == pytest.approx(0.5, abs=1e-12)
    assert not r.bell_local
    assert r.worst_witness[0] == 0


def test_factorization_deterministic_mixture_is_local(parallel_pair):
    # the mixture is perfectly anti-correlated, yet each component is local
    m = LambdaModel(
        [(0.5, deterministic_local([True], [False])), (0.5, deterministic_local([False], [True]))],
        kind="local",
    )
    r = factorization_check(m, parallel_pair)
    assert r.factorization_deviation == 0.0 and r.pi_deviation == 0.0 and r.oi_deviation == 0.0
    assert r.bell_local
    assert m.mixture(parallel_pair).table.tolist() == [[[[0.0, 0.5], [0.5, 0.0]]]]


def test_factorization_uniform(parallel_pair):
    r = factorization_check(LambdaModel.single(np.full((1, 1, 2, 2), 0.25)), parallel_pair)
    assert r.factorization_deviation == 0.0
    assert r.bell_local


@settings(max_examples=60, deadline=None)
@given(st.data(), st.integers(1, 3), st.integers(1, 3), st.integers(1, 4))
def test_local_models_are_exactly_local(data, m, n, k):
    s = Scenario.planar(np.linspace(0, 1, m), np.linspace(0.3, 2, n))
    model = LambdaModel(mixture([data.draw(local_states(m, n)) for _ in range(k)]), kind="local")
    assert pi_check(model, s) <= 1e-12
    assert oi_check(model, s) <= 1e-12
    assert factorization_check(model, s).factorization_deviation <= 1e-12


@settings(max_examples=60, deadline=None)
@given(st.data(), st.integers(1, 3), st.integers(1, 3))
def test_pi_and_oi_compose_to_factorization(data, m, n):
    s = Scenario.planar(np.linspace(0, 1, m), np.linspace(0.3, 2, n))
    # product tables stored as general joint tables, plus arbitrary general ones
    local = data.draw(local_states(m, n))
    candidates = [GeneralState(local.joint_table()), data.draw(general_states(m, n))]
    for state in candidates:
        model = LambdaModel([(1.0, state)])
        pi, oi = pi_check(model, s), oi_check(model, s)
        fac = factorization_check(model, s).factorization_deviation
        if pi <= 1e-12 and oi <= 1e-12:
            assert fac <= 1e-9
        # a per-cell factorization gap forces a conditional gap at least as large
        assert fac <= oi + 1e-12


def test_derivation_parallel(parallel_pair):
    r = epr_bell_derivation(parallel_pair)
    assert r.factorized_table.table.tolist() == [[[[0.25, 0.25], [0.25, 0.25]]]]
    assert r.qm_table.table.tolist() == [[[[0.0, 0.5], [0.5, 0.0]]]]
    assert r.max_cell_deviation == pytest.approx(0.25, abs=1e-12)
    assert r.inconsistent
    for premise in ("A1", "A2", "B", "C"):
        assert premise in r.verdict
    assert "At least one" in r.verdict


def test_derivation_perpendicular(perpendicular_pair):
    r = epr_bell_derivation(perpendicular_pair)
    assert r.max_cell_deviation <= 1e-12
    assert not r.inconsistent


def test_derivation_parallel_pair_dominates():
    s = Scenario.planar([0.0, 0.7], [0.0, 2.1])
    r = epr_bell_derivation(s)
    assert r.inconsistent
    assert r.max_cell_deviation == pytest.approx(0.25, abs=1e-12)
    assert r.worst_cell[:2] == (0, 0)


def test_derivation_deviation_on_grid():
    for theta in np.linspace(0.0, math.pi, 181):
        r = epr_bell_derivation(single_pair(theta))
        expected = abs(0.5 * math.sin(theta / 2) ** 2 - 0.25)
        assert r.max_cell_deviation == pytest.approx(expected, abs=1e-12)
        assert r.inconsistent == (expected > 1e-9)
        if abs(theta - math.pi / 2) > 1e-6:
            assert r.inconsistent


def test_worst_witness_outcomes_are_outcomes(parallel_pair):
    r = factorization_check(orthodox_model(parallel_pair), parallel_pair)
    assert all(isinstance(o, Outcome) for o in r.worst_witness[3:])
