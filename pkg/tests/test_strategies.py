import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as hs

from qgame import equilibrium as eq
from qgame import ewl, qmath
from qgame import strategies as st

seeds = hs.integers(0, 2**32 - 1)
PD = ewl.PRISONERS_DILEMMA


def test_one_param_examples():
    assert np.allclose(st.u_one_param(0).matrix, st.C_MATRIX)
    assert np.allclose(st.u_one_param(math.pi).matrix, st.D_MATRIX, atol=1e-15)
    s = 1 / math.sqrt(2)
    assert np.allclose(st.u_one_param(math.pi / 2).matrix, [[s, s], [-s, s]])
    with pytest.raises(ValueError):
        st.u_one_param(3.5)


def test_two_param_examples():
    assert np.allclose(st.u_two_param(0, 0).matrix, st.C_MATRIX)
    assert np.allclose(st.u_two_param(0, math.pi / 2).matrix, st.Q_MATRIX, atol=1e-15)
    assert np.allclose(st.u_two_param(math.pi, 0).matrix, st.D_MATRIX, atol=1e-15)
    with pytest.raises(ValueError):
        st.u_two_param(1.0, 2.0)


@settings(max_examples=50, deadline=None)
@given(hs.floats(-10, 10), hs.floats(-10, 10), hs.floats(-10, 10))
def test_general_chart_unitary(a, t, g):
    assert qmath.is_unitary(st.u_general(a, t, g).matrix, 1e-10)


@settings(max_examples=30, deadline=None)
@given(hs.floats(0, math.pi / 2))
def test_general_overlaps_two_param(a):
    assert np.allclose(st.u_general(a, 0, 1.234).matrix, st.u_two_param(0, a).matrix)


def test_invalid_strategies_rejected():
    with pytest.raises(ValueError):
        st.Unitary(2 * np.eye(2))
    with pytest.raises(ValueError):
        st.Channel([np.eye(2), np.eye(2)])
    with pytest.raises(ValueError):
        st.Channel([np.eye(2) / 3] * 9)
    with pytest.raises(ValueError):
        st.mixture([(0.5, st.C_MATRIX), (0.6, st.D_MATRIX)])
    with pytest.raises(ValueError):
        st.mixture([(-0.5, st.C_MATRIX), (1.5, st.D_MATRIX)])


def test_strategies_are_immutable():
    q = st.quantum_q()
    with pytest.raises(ValueError):
        q.matrix[0, 0] = 0


def _overlap(ctx, sa, sb, outcome):
    v = np.kron(sa.matrix, sb.matrix) @ ctx.psi
    return abs(np.vdot(ctx.states[outcome], v)) ** 2


@settings(max_examples=200, deadline=None)
@given(seeds)
def test_optimal_answer_reaches_psi_dc(seed):
    ctx = ewl.build_context()
    s_b = st.Unitary(qmath.haar_unitary(np.random.default_rng(seed)))
    s_a = st.optimal_answer(s_b)
    assert qmath.is_unitary(s_a.matrix, 1e-10)
    assert _overlap(ctx, s_a, s_b, "DC") >= 1 - 1e-9
    assert ewl.payoffs(PD, ctx, s_a, s_b).as_list() == pytest.approx([5, 0], abs=1e-9)


@settings(max_examples=200, deadline=None)
@given(seeds)
def test_bob_optimal_answer_reaches_psi_cd(seed):
    ctx = ewl.build_context()
    s_a = st.Unitary(qmath.haar_unitary(np.random.default_rng(seed)))
    s_b = st.bob_optimal_answer(s_a)
    assert _overlap(ctx, s_a, s_b, "CD") >= 1 - 1e-9


def test_optimal_answer_examples(ctx):
    assert qmath.equal_up_to_phase(st.optimal_answer(st.cooperate()).matrix, st.D_MATRIX)
    t = st.optimal_answer(st.quantum_q())
    assert np.allclose(t.matrix, [[0, 1j], [1j, 0]])
    assert ewl.payoffs(PD, ctx, t, st.quantum_q()).as_list() == pytest.approx([5, 0], abs=1e-12)
    for s_a in (st.cooperate(), st.quantum_q()):
        got = ewl.payoffs(PD, ctx, s_a, st.bob_optimal_answer(s_a))
        assert got.as_list() == pytest.approx([0, 5], abs=1e-12)
    with pytest.raises(ValueError):
        st.optimal_answer(st.focal_r())


def test_singleton_mixture_behaves_like_component(ctx):
    m = st.mixture([(1.0, st.C_MATRIX)])
    assert np.allclose(ewl.apply_strategies(ctx, m, st.defect()),
                       ewl.apply_strategies(ctx, st.cooperate(), st.defect()))


def test_focal_r_twirl(ctx):
    r = st.focal_r()
    explicit = sum(np.kron(p, np.eye(2)) @ ctx.rho @ np.kron(p, np.eye(2)).conj().T
                   for p in (st.C_MATRIX, st.PAULI_X, st.PAULI_Y, st.PAULI_Z)) / 4
    assert np.allclose(explicit, np.eye(4) / 4, atol=1e-12)
    assert np.allclose(ewl.apply_strategies(ctx, r, st.cooperate()), np.eye(4) / 4, atol=1e-12)
    assert np.allclose(ewl.apply_strategies(ctx, st.quantum_q(), r), np.eye(4) / 4, atol=1e-12)
    assert ewl.payoffs(PD, ctx, r, r).as_list() == pytest.approx([2.25, 2.25], abs=1e-12)
    assert ewl.payoffs(ewl.CHICKEN, ctx, r, r).as_list() == pytest.approx([4, 4], abs=1e-12)


def test_partnash_satisfaction_identities(ctx):
    a = st.partnash_alice().matrices
    b = st.partnash_bob().matrices
    for i in range(2):
        for j in range(2):
            got = ewl.payoffs(PD, ctx, st.Unitary(a[i]), st.Unitary(b[j]))
            want = [0, 5] if i == j else [5, 0]
            assert got.as_list() == pytest.approx(want, abs=1e-12)


def test_measurement_pair(ctx, rng):
    sa, sb = st.measurement_strategy_pair()
    sigma = ewl.apply_strategies(ctx, sa, sb)
    want = (np.diag([0, 1, 0, 0]) + np.diag([0, 0, 1, 0])) / 2
    assert np.allclose(sigma, want, atol=1e-12)
    assert ewl.payoffs(PD, ctx, sa, sb).as_list() == pytest.approx([2.5, 2.5], abs=1e-12)
    for ch in (sa, sb):
        rho = qmath.random_density(rng)
        assert qmath.trace(st.apply_local(ch, rho)) == pytest.approx(1, abs=1e-12)


def test_conjugate_by_q_examples():
    assert np.allclose(st.conjugate_by_q(st.cooperate()).matrix, st.C_MATRIX)
    assert np.allclose(st.conjugate_by_q(st.defect()).matrix, [[0, -1], [1, 0]])
    assert eq.channels_identical(st.conjugate_by_q(st.focal_r()), st.focal_r())
    with pytest.raises(ValueError):
        st.conjugate_by_q(st.measurement_strategy_pair()[0])


@settings(max_examples=40, deadline=None)
@given(hs.floats(0, math.pi), hs.floats(0, math.pi), hs.floats(0, math.pi / 2), hs.floats(0, math.pi / 2))
def test_set_inclusion_payoffs(ta, tb, fa, fb):
    ctx = ewl.build_context()
    ref = ewl.payoffs(PD, ctx, st.u_one_param(ta), st.u_one_param(tb)).as_list()
    assert ewl.payoffs(PD, ctx, st.u_two_param(ta, 0), st.u_two_param(tb, 0)).as_list() == pytest.approx(ref, abs=1e-12)
    a, b = st.u_two_param(ta, fa), st.u_two_param(tb, fb)
    ref = ewl.payoffs(PD, ctx, a, b).as_list()
    assert ewl.payoffs(PD, ctx, st.u_general(fa, ta, 0), st.u_general(fb, tb, 0)).as_list() == pytest.approx(ref, abs=1e-12)
    assert ewl.payoffs(PD, ctx, st.as_channel(a), st.as_channel(b)).as_list() == pytest.approx(ref, abs=1e-12)


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_mixtures_are_unital(seed):
    from qgame.scenarios import random_mixture
    rng = np.random.default_rng(seed)
    ctx = ewl.build_context()
    sigma = ewl.apply_strategies(ctx, random_mixture(rng), random_mixture(rng))
    for side in "AB":
        red = qmath.partial_trace(sigma, side)
        assert np.allclose(red, np.eye(2) / 2, atol=1e-10)
        assert qmath.is_more_mixed(red, qmath.partial_trace(ctx.rho, side))


def test_named_and_unknown():
    assert set(st.NAMED) == {"C", "D", "Q", "R"}
    with pytest.raises(ValueError, match="C, D, Q, R"):
        st.named("X")


@pytest.mark.parametrize("s", [st.quantum_q(), st.focal_r(), st.measurement_strategy_pair()[1],
                               st.u_two_param(1.0, 0.3)])
def test_json_roundtrip(s):
    back = st.strategy_from_json(s.to_json())
    assert eq.channels_identical(s, back)


def test_json_params_and_errors():
    s = st.strategy_from_json(json.dumps({"kind": "unitary", "params": {"theta": math.pi, "phi": 0}}))
    assert np.allclose(s.matrix, st.D_MATRIX, atol=1e-15)
    for bad in ['{"kind": "unitary", "matrices": [[1, 0], [0, 0], [0, 0], [2, 0]]}',
                '{"kind": "blob"}', "not json",
                '{"kind": "mixture", "matrices": [[[1,0],[0,0],[0,0],[1,0]]], "probs": [0.5]}']:
        with pytest.raises(ValueError):
            st.strategy_from_json(bad)
