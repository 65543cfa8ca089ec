"""Dense complex linear algebra for one and two qubits.

Matrices are plain ``numpy`` arrays of dtype ``complex128`` with shape
(2, 2) or (4, 4). Two-qubit operators use the basis order
|00>, |01>, |10>, |11> with Alice as the left tensor factor.
"""

import numpy as np

ALICE = "A"
BOB = "B"

EXACT_TOL = 1e-12
CHECK_TOL = 1e-9

I2 = np.eye(2, dtype=complex)
I4 = np.eye(4, dtype=complex)


def as_matrix(a, dims=(2, 4)):
    """Return ``a`` as a complex square matrix, rejecting unsupported sizes."""
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] not in dims:
        raise ValueError(f"expected a square matrix of dimension {dims}, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    return m


def as_state(v):
    """Return ``v`` as a normalized 4-component state vector."""
    s = np.asarray(v, dtype=complex)
    if s.shape != (4,):
        raise ValueError(f"expected 4 amplitudes, got shape {s.shape}")
    norm = float(np.vdot(s, s).real)
    if abs(norm - 1.0) > EXACT_TOL:
        raise ValueError(f"state vector not normalized (norm^2 = {norm!r})")
    return s


def ket(index):
    """Computational basis vector |index> of the two-qubit space."""
    v = np.zeros(4, dtype=complex)
    v[index] = 1.0
    return v


def mat_mul(a, b):
    a, b = as_matrix(a), as_matrix(b)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return a @ b


def dagger(a):
    return np.conj(as_matrix(a)).T


def tensor(a, b):
    """Kronecker product a (Alice) x b (Bob) of two 2x2 matrices."""
    a, b = as_matrix(a, (2,)), as_matrix(b, (2,))
    return np.kron(a, b)


def trace(a):
    return complex(np.trace(as_matrix(a)))


def partial_trace(rho, keep):
    """Reduce a two-qubit operator onto the factor of player ``keep``."""
    rho = as_matrix(rho, (4,))
    r = rho.reshape(2, 2, 2, 2)
    if keep == ALICE:
        return np.einsum("ajbj->ab", r)
    if keep == BOB:
        return np.einsum("jajb->ab", r)
    raise ValueError(f"unknown player tag {keep!r}")


def outer(v):
    v = as_state(v)
    return np.outer(v, np.conj(v))


def is_hermitian(a, tol=CHECK_TOL):
    a = as_matrix(a)
    return bool(np.max(np.abs(a - np.conj(a).T)) <= tol)


def is_unitary(a, tol=CHECK_TOL):
    if tol <= 0:
        raise ValueError("tol must be positive")
    try:
        a = as_matrix(a)
    except ValueError:
        return False
    eye = np.eye(a.shape[0])
    return bool(np.max(np.abs(np.conj(a).T @ a - eye)) <= tol)


def eigvalsh2(a):
    """Closed-form eigenvalues of a 2x2 Hermitian matrix, descending."""
    a = as_matrix(a, (2,))
    if not is_hermitian(a):
        raise ValueError("matrix is not Hermitian")
    p = 0.5 * (a[0, 0].real + a[1, 1].real)
    q = 0.5 * (a[0, 0].real - a[1, 1].real)
    r = np.hypot(q, abs(a[0, 1]))
    return np.array([p + r, p - r])


def eigvalsh(a):
    a = as_matrix(a)
    if a.shape[0] == 2:
        return eigvalsh2(a)
    return np.linalg.eigvalsh(0.5 * (a + np.conj(a).T))[::-1]


def is_density(a, tol=CHECK_TOL):
    if tol <= 0:
        raise ValueError("tol must be positive")
    try:
        a = as_matrix(a)
    except ValueError:
        return False
    if not is_hermitian(a, tol):
        return False
    if abs(np.trace(a) - 1.0) > tol:
        return False
    return bool(eigvalsh(a)[-1] >= -tol)


def is_more_mixed(a, b, tol=CHECK_TOL):
    """True when the spectrum of ``a`` is majorized by that of ``b``.

    For qubits this reduces to comparing the largest eigenvalues.
    """
    la = eigvalsh2(a)
    lb = eigvalsh2(b)
    return bool(la[0] <= lb[0] + tol)


def equal_up_to_phase(a, b, tol=CHECK_TOL):
    """Phase-insensitive comparison of unitaries via |tr(a^dag b)| / dim."""
    a, b = as_matrix(a), as_matrix(b)
    if a.shape != b.shape:
        return False
    overlap = abs(np.trace(np.conj(a).T @ b)) / a.shape[0]
    return bool(overlap >= 1.0 - tol)


def haar_unitary(rng, size=None):
    """Haar-random 2x2 unitaries, shape (2, 2) or (size, 2, 2)."""
    n = 1 if size is None else size
    z = (rng.standard_normal((n, 2, 2)) + 1j * rng.standard_normal((n, 2, 2))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r, axis1=1, axis2=2)
    q = q * (d / np.abs(d))[:, None, :]
    return q[0] if size is None else q


def random_density(rng, dim=2):
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    m = g @ np.conj(g).T
    return m / np.trace(m).real
