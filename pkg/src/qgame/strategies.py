"""Player strategies: local unitaries, Kraus channels and unitary mixtures.

Every strategy exposes ``kraus_ops()``, an array of shape (n, 2, 2) whose
action rho -> sum_k K rho K^dag reproduces the strategy on its qubit. A
mixture {(p_i, U_i)} maps to the Kraus set {sqrt(p_i) U_i}.
"""

import json
import math
from enum import Enum

import numpy as np

from . import qmath

MAX_KRAUS = 8
MAX_MIXTURE = 8

C_MATRIX = np.eye(2, dtype=complex)
D_MATRIX = np.array([[0, 1], [-1, 0]], dtype=complex)
Q_MATRIX = np.diag([1j, -1j])
PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.diag([1.0 + 0j, -1.0])


class StrategySet(str, Enum):
    """Nested strategy sets, ordered by inclusion CL < TP < GU < CP."""

    CL = "CL"
    TP = "TP"
    GU = "GU"
    CP = "CP"

    @property
    def rank(self):
        return list(StrategySet).index(self)

    def __le__(self, other):
        return self.rank <= StrategySet(other).rank

    def __lt__(self, other):
        return self.rank < StrategySet(other).rank


def _frozen(a):
    a = np.array(a, dtype=complex)
    a.setflags(write=False)
    return a


class Strategy:
    kind = None

    def kraus_ops(self):
        raise NotImplementedError

    def to_dict(self):
        raise NotImplementedError

    def to_json(self):
        return json.dumps(self.to_dict())


class Unitary(Strategy):
    kind = "unitary"

    def __init__(self, matrix, label=None, params=None):
        m = qmath.as_matrix(matrix, (2,))
        if not qmath.is_unitary(m, qmath.CHECK_TOL):
            raise ValueError("strategy matrix is not unitary")
        self.matrix = _frozen(m)
        self.label = label
        self.params = dict(params) if params else None

    def kraus_ops(self):
        return self.matrix[None, :, :]

    def to_dict(self):
        d = {"kind": self.kind, "matrices": [_encode_matrix(self.matrix)]}
        if self.params:
            d["params"] = {k: float(v) for k, v in self.params.items()}
        return d

    def __repr__(self):
        name = self.label or np.array2string(self.matrix, precision=4)
        return f"Unitary({name})"


class Channel(Strategy):
    kind = "channel"

    def __init__(self, kraus, label=None, tol=qmath.CHECK_TOL):
        ops = np.array([qmath.as_matrix(k, (2,)) for k in kraus])
        if not 1 <= len(ops) <= MAX_KRAUS:
            raise ValueError(f"a channel needs between 1 and {MAX_KRAUS} Kraus operators")
        completeness = np.einsum("kji,kjl->il", np.conj(ops), ops)
        if np.max(np.abs(completeness - qmath.I2)) > tol:
            raise ValueError("Kraus operators are not trace preserving")
        self.kraus = _frozen(ops)
        self.label = label

    def kraus_ops(self):
        return self.kraus

    def to_dict(self):
        return {"kind": self.kind, "matrices": [_encode_matrix(k) for k in self.kraus]}

    def __repr__(self):
        return f"Channel({self.label or len(self.kraus)})"


class Mixture(Strategy):
    kind = "mixture"

    def __init__(self, components, label=None, max_components=MAX_MIXTURE):
        components = list(components)
        if not 1 <= len(components) <= max_components:
            raise ValueError(f"a mixture needs between 1 and {max_components} components")
        probs = np.array([float(p) for p, _ in components])
        if np.any(~np.isfinite(probs)) or np.any(probs < 0) or np.any(probs > 1):
            raise ValueError("mixture probabilities must lie in [0, 1]")
        if abs(probs.sum() - 1.0) > qmath.EXACT_TOL:
            raise ValueError(f"mixture probabilities sum to {probs.sum()!r}, not 1")
        mats = []
        for _, s in components:
            m = s.matrix if isinstance(s, Unitary) else s
            if isinstance(m, Strategy):
                raise ValueError("mixture components must be unitary")
            mats.append(Unitary(m).matrix)
        self.probs = probs
        self.probs.setflags(write=False)
        self.matrices = _frozen(mats)
        self.label = label

    def kraus_ops(self):
        return np.sqrt(self.probs)[:, None, None] * self.matrices

    def to_dict(self):
        return {
            "kind": self.kind,
            "matrices": [_encode_matrix(m) for m in self.matrices],
            "probs": [float(p) for p in self.probs],
        }

    def __repr__(self):
        return f"Mixture({self.label or len(self.probs)})"


def _check_range(name, value, lo, hi):
    if not (lo <= value <= hi):
        raise ValueError(f"{name}={value!r} outside [{lo}, {hi}]")


def one_param_matrix(theta):
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    return np.array([[c, s], [-s, c]], dtype=complex)


def two_param_matrix(theta, phi):
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    return np.array([[np.exp(1j * phi) * c, s], [-s, np.exp(-1j * phi) * c]])


def general_matrix(alpha, theta, gamma):
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    return np.array([
        [np.exp(1j * alpha) * c, np.exp(1j * gamma) * s],
        [-np.exp(-1j * gamma) * s, np.exp(-1j * alpha) * c],
    ])


def u_one_param(theta):
    """Real rotation U(theta), theta in [0, pi]."""
    _check_range("theta", theta, 0.0, math.pi)
    return Unitary(one_param_matrix(theta), params={"theta": theta})


def u_two_param(theta, phi):
    """U(theta, phi) with theta in [0, pi] and phi in [0, pi/2]."""
    _check_range("theta", theta, 0.0, math.pi)
    _check_range("phi", phi, 0.0, math.pi / 2)
    return Unitary(two_param_matrix(theta, phi), params={"theta": theta, "phi": phi})


def u_general(alpha, theta, gamma):
    """SU(2) element in a three-angle chart; the global phase is dropped."""
    return Unitary(general_matrix(alpha, theta, gamma),
                   params={"alpha": alpha, "theta": theta, "gamma": gamma})


def cooperate():
    return Unitary(C_MATRIX, label="C")


def defect():
    return Unitary(D_MATRIX, label="D")


def quantum_q():
    return Unitary(Q_MATRIX, label="Q")


def _require_unitary(s):
    if not isinstance(s, Unitary):
        raise ValueError(f"expected a unitary strategy, got {s!r}")
    return s.matrix


def optimal_answer(s_b):
    """Alice's reply to Bob's unitary that sends the joint state onto psi_DC.

    For s_b = [[a, b], [c, d]] the reply is [[-i b, a], [-d, -i c]].
    """
    (a, b), (c, d) = _require_unitary(s_b)
    return Unitary(np.array([[-1j * b, a], [-d, -1j * c]]))


def bob_optimal_answer(s_a):
    """Bob's reply to Alice's unitary that sends the joint state onto psi_CD.

    This is the matrix pattern [[-i b, a], [-d, -i c]] applied to Alice's
    entries; by the symmetry of the initial state it favours Bob.
    """
    (a, b), (c, d) = _require_unitary(s_a)
    return Unitary(np.array([[-1j * b, a], [-d, -1j * c]]))


def mixture(components, label=None):
    return Mixture(components, label=label)


def focal_r():
    """Uniform Pauli twirl; sends either half of the initial state to I/2."""
    return Mixture([(0.25, m) for m in (C_MATRIX, PAULI_X, PAULI_Y, PAULI_Z)], label="R")


def partnash_alice():
    return Mixture([(0.5, C_MATRIX), (0.5, np.diag([-1j, 1j]))], label="PartNash-A")


def partnash_bob():
    return Mixture([(0.5, D_MATRIX), (0.5, np.array([[0, -1j], [-1j, 0]]))], label="PartNash-B")


def measurement_strategy_pair():
    """Computational-basis measurement for Alice, measure-then-flip for Bob."""
    p0 = np.diag([1.0 + 0j, 0.0])
    p1 = np.diag([0.0 + 0j, 1.0])
    alice = Channel([p0, p1], label="measure")
    bob = Channel([D_MATRIX @ p0, D_MATRIX @ p1], label="measure-flip")
    return alice, bob


def conjugate_by_q(s):
    """Replace every component U by Q U Q^dag; probabilities unchanged."""
    qd = np.conj(Q_MATRIX).T
    if isinstance(s, Unitary):
        return Unitary(Q_MATRIX @ s.matrix @ qd)
    if isinstance(s, Mixture):
        comps = [(p, Q_MATRIX @ m @ qd) for p, m in zip(s.probs, s.matrices)]
        return Mixture(comps, label=f"Q{s.label}" if s.label else None)
    raise ValueError("Q-conjugation is defined for unitaries and unitary mixtures only")


def as_channel(s):
    return Channel(s.kraus_ops())


def apply_local(s, rho):
    """Action of a single-qubit strategy on a 2x2 operator."""
    k = s.kraus_ops()
    return np.einsum("kij,jl,kml->im", k, qmath.as_matrix(rho, (2,)), np.conj(k))


NAMED = {
    "C": cooperate,
    "D": defect,
    "Q": quantum_q,
    "R": focal_r,
}


def named(name):
    try:
        return NAMED[name]()
    except KeyError:
        raise ValueError(f"unknown strategy {name!r}; valid names: {', '.join(NAMED)}") from None


# JSON codec

def _encode_matrix(m):
    return [[float(z.real), float(z.imag)] for z in np.asarray(m).ravel()]


def _decode_matrix(entries):
    try:
        vals = [complex(float(re), float(im)) for re, im in entries]
    except (TypeError, ValueError):
        raise ValueError("matrix entries must be [re, im] pairs") from None
    if len(vals) != 4 or not all(np.isfinite([v.real for v in vals] + [v.imag for v in vals])):
        raise ValueError("a strategy matrix needs 4 finite [re, im] entries")
    return np.array(vals).reshape(2, 2)


def _decode_matrices(raw):
    if not isinstance(raw, list) or not raw:
        raise ValueError("'matrices' must be a non-empty list")
    # a bare matrix is a list of four [re, im] pairs
    if all(isinstance(e, list) and len(e) == 2 and not isinstance(e[0], list) for e in raw):
        return [_decode_matrix(raw)]
    return [_decode_matrix(m) for m in raw]


def _from_params(params):
    keys = set(params)
    try:
        if keys == {"theta"}:
            return u_one_param(float(params["theta"]))
        if keys == {"theta", "phi"}:
            return u_two_param(float(params["theta"]), float(params["phi"]))
        if keys == {"alpha", "theta", "gamma"}:
            return u_general(float(params["alpha"]), float(params["theta"]), float(params["gamma"]))
    except TypeError:
        raise ValueError("strategy params must be numbers") from None
    raise ValueError(f"unsupported parameter set {sorted(keys)}")


def strategy_from_dict(d):
    """Build and validate a strategy from its JSON object form."""
    if not isinstance(d, dict):
        raise ValueError("strategy JSON must be an object")
    kind = d.get("kind", "unitary")
    if kind == "unitary":
        if "params" in d and "matrices" not in d:
            return _from_params(d["params"])
        mats = _decode_matrices(d.get("matrices"))
        if len(mats) != 1:
            raise ValueError("a unitary strategy takes exactly one matrix")
        return Unitary(mats[0])
    if kind == "channel":
        return Channel(_decode_matrices(d.get("matrices")))
    if kind == "mixture":
        mats = _decode_matrices(d.get("matrices"))
        probs = d.get("probs")
        if not isinstance(probs, list) or len(probs) != len(mats):
            raise ValueError("'probs' must list one probability per matrix")
        return Mixture(list(zip(probs, mats)))
    raise ValueError(f"unknown strategy kind {kind!r}")


def strategy_from_json(text):
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"malformed strategy JSON: {exc}") from None
    return strategy_from_dict(d)
