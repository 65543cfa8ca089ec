import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as hs

from qgame import qmath

seeds = hs.integers(0, 2**32 - 1)


def test_as_matrix_rejects_bad_shapes():
    with pytest.raises(ValueError):
        qmath.as_matrix(np.zeros((3, 3)))
    with pytest.raises(ValueError):
        qmath.as_matrix(np.array([[np.nan, 0], [0, 1]]))


def test_ket_and_outer():
    v = qmath.ket(2)
    assert v.shape == (4,) and v[2] == 1
    assert np.allclose(qmath.outer(v), np.diag([0, 0, 1, 0]))


def test_tensor_is_kron_with_alice_left():
    a = np.array([[1, 2], [3, 4]], dtype=complex)
    assert np.allclose(qmath.tensor(a, qmath.I2), np.kron(a, np.eye(2)))


@settings(max_examples=50, deadline=None)
@given(seeds)
def test_partial_trace_of_product(seed):
    rng = np.random.default_rng(seed)
    ra, rb = qmath.random_density(rng), qmath.random_density(rng)
    rho = np.kron(ra, rb)
    assert np.allclose(qmath.partial_trace(rho, "A"), ra, atol=1e-12)
    assert np.allclose(qmath.partial_trace(rho, "B"), rb, atol=1e-12)


@settings(max_examples=50, deadline=None)
@given(seeds)
def test_haar_unitaries_are_unitary(seed):
    u = qmath.haar_unitary(np.random.default_rng(seed))
    assert qmath.is_unitary(u, 1e-12)


@settings(max_examples=50, deadline=None)
@given(seeds)
def test_eigvalsh2_matches_lapack(seed):
    rho = qmath.random_density(np.random.default_rng(seed))
    assert np.allclose(np.sort(qmath.eigvalsh2(rho)), np.linalg.eigvalsh(rho), atol=1e-12)


def test_eigvalsh2_rejects_non_hermitian():
    with pytest.raises(ValueError):
        qmath.eigvalsh2(np.array([[0, 1], [0, 0]], dtype=complex))


def test_density_checks():
    assert qmath.is_density(qmath.I2 / 2)
    assert not qmath.is_density(np.diag([1.5, -0.5]))
    assert not qmath.is_density(np.diag([0.6, 0.6]))


def test_more_mixed_order():
    pure = np.diag([1.0, 0.0])
    assert qmath.is_more_mixed(qmath.I2 / 2, pure)
    assert not qmath.is_more_mixed(pure, qmath.I2 / 2)


@settings(max_examples=30, deadline=None)
@given(seeds, hs.floats(0, 2 * math.pi))
def test_equal_up_to_phase(seed, phase):
    u = qmath.haar_unitary(np.random.default_rng(seed))
    assert qmath.equal_up_to_phase(u, np.exp(1j * phase) * u)
    assert not qmath.equal_up_to_phase(u, u @ np.diag([1, -1]))


def _rand_mat(rng):
    return rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))


@settings(max_examples=50, deadline=None)
@given(seeds)
def test_tensor_identities(seed):
    rng = np.random.default_rng(seed)
    a, b, c, d = (_rand_mat(rng) for _ in range(4))
    lhs = qmath.tensor(a, b) @ qmath.tensor(c, d)
    assert np.allclose(lhs, qmath.tensor(a @ c, b @ d), atol=1e-12)
    assert abs(qmath.trace(qmath.tensor(a, b)) - qmath.trace(a) * qmath.trace(b)) < 1e-12


@settings(max_examples=50, deadline=None)
@given(seeds)
def test_partial_trace_covariance(seed):
    rng = np.random.default_rng(seed)
    a, b = qmath.haar_unitary(rng, 2)
    rho = qmath.random_density(rng, 4)
    u = qmath.tensor(a, b)
    got = qmath.partial_trace(u @ rho @ u.conj().T, "A")
    want = a @ qmath.partial_trace(rho, "A") @ a.conj().T
    assert np.allclose(got, want, atol=1e-10)


@settings(max_examples=50, deadline=None)
@given(seeds)
def test_eigvalsh2_trace_det(seed):
    m = _rand_mat(np.random.default_rng(seed))
    h = m + m.conj().T
    l1, l2 = qmath.eigvalsh2(h)
    assert abs(l1 + l2 - np.trace(h).real) < 1e-10
    assert abs(l1 * l2 - np.linalg.det(h).real) < 1e-10


def test_unitary_and_density_examples(ctx):
    assert not qmath.is_unitary(2 * qmath.I2)
    assert qmath.is_density(qmath.I4 / 4)
    assert qmath.is_density(ctx.rho)
    assert not qmath.is_density(np.diag([1, 1, -1, 0]).astype(complex))


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_more_mixed_reflexive(seed):
    r = qmath.random_density(np.random.default_rng(seed))
    assert qmath.is_more_mixed(r, r)
