import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as hs

from qgame import qmath, search
from qgame import strategies as st


@settings(max_examples=100, deadline=None)
@given(hs.floats(-100, 100), hs.floats(-5, 5), hs.floats(0.1, 5))
def test_reflect_into_stays_in_box(x, lo, width):
    y = search.reflect_into(np.array([x]), lo, lo + width)[0]
    assert lo - 1e-9 <= y <= lo + width + 1e-9


def test_reflect_into_identity_inside():
    x = np.array([0.3, 0.7])
    assert np.array_equal(search.reflect_into(x, 0.0, 1.0), x)
    assert search.reflect_into(np.array([1.25]), 0.0, 1.0)[0] == pytest.approx(0.75)


def test_nelder_mead_quadratic():
    target = np.array([0.3, -0.2, 0.5])

    def f(x):
        return np.sum((x - target) ** 2, axis=1)

    x0 = np.random.default_rng(0).uniform(-1, 1, (5, 3))
    xs, fs = search.nelder_mead_batch(f, x0, -1, 1, max_iter=800)
    assert np.allclose(xs, target, atol=1e-6)
    assert np.all(fs < 1e-12)


def test_nelder_mead_respects_bounds():
    xs, _ = search.nelder_mead_batch(lambda x: -x[:, 0], np.array([[0.1]]), 0.0, 2.0, max_iter=300)
    assert 0.0 <= xs[0, 0] <= 2.0
    assert xs[0, 0] == pytest.approx(2.0, abs=1e-6)


@pytest.mark.parametrize("tag", ["CL", "TP", "GU"])
def test_chart_kraus_matches_strategy(tag):
    ch = search.chart(tag)
    rng = np.random.default_rng(3)
    xs = rng.uniform(ch.lo, ch.hi, (10, ch.dim))
    k = ch.kraus(xs)
    for x, ops in zip(xs, k):
        assert np.allclose(ops, ch.strategy(x).kraus_ops())


@settings(max_examples=50, deadline=None)
@given(hs.integers(0, 2**32 - 1))
def test_stiefel_chart_is_trace_preserving(seed):
    x = np.random.default_rng(seed).uniform(-1, 1, 32)
    k = search.stiefel_kraus(x)[0]
    total = sum(m.conj().T @ m for m in k)
    assert np.allclose(total, np.eye(2), atol=1e-12)
    st.Channel(k)


def test_kraus_to_stiefel_roundtrip():
    u = qmath.haar_unitary(np.random.default_rng(5))
    x = search.kraus_to_stiefel([u])
    k = search.stiefel_kraus(x)[0]
    assert qmath.equal_up_to_phase(k[0], u, 1e-12)
    assert np.allclose(k[1:], 0)


def test_chart_bounds():
    assert search.chart("CL").hi[0] == pytest.approx(math.pi)
    assert search.chart("TP").hi[1] == pytest.approx(math.pi / 2)
    assert search.chart("CP").dim == 32
