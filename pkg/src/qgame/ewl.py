"""EWL game fabric: payoff tables, the entangled initial state, strategy
application and the expected-payoff functionals."""

import json
import math
from dataclasses import dataclass, field

import numpy as np

from . import qmath
from .qmath import ket

OUTCOMES = ("CC", "CD", "DC", "DD")
# relabelling of outcomes produced by an extra Q on Alice's qubit
SHIFT = {"CC": "DD", "CD": "DC", "DC": "CD", "DD": "CC"}

_SQ = 1 / math.sqrt(2)


@dataclass(frozen=True)
class GameSpec:
    """Classical 2x2 payoff table; first letter is Alice's move."""

    name: str
    a_cc: float
    a_cd: float
    a_dc: float
    a_dd: float
    b_cc: float
    b_cd: float
    b_dc: float
    b_dd: float

    def __post_init__(self):
        for o in OUTCOMES:
            for p in "ab":
                v = getattr(self, f"{p}_{o.lower()}")
                if not math.isfinite(v):
                    raise ValueError(f"payoff {p.upper()}_{o} is not finite")

    def alice(self):
        return np.array([self.a_cc, self.a_cd, self.a_dc, self.a_dd], dtype=float)

    def bob(self):
        return np.array([self.b_cc, self.b_cd, self.b_dc, self.b_dd], dtype=float)

    def payoff(self, outcome):
        o = outcome.lower()
        return getattr(self, f"a_{o}"), getattr(self, f"b_{o}")

    def to_dict(self):
        return {"name": self.name, "payoffs": {o: list(self.payoff(o)) for o in OUTCOMES}}

    @classmethod
    def from_dict(cls, d):
        if not isinstance(d, dict) or not isinstance(d.get("payoffs"), dict):
            raise ValueError("game JSON needs a 'payoffs' object")
        vals = {}
        for o in OUTCOMES:
            pair = d["payoffs"].get(o)
            if not isinstance(pair, (list, tuple)) or len(pair) != 2:
                raise ValueError(f"payoff entry {o} must be a pair [alice, bob]")
            try:
                a, b = float(pair[0]), float(pair[1])
            except (TypeError, ValueError):
                raise ValueError(f"payoff entry {o} is not numeric") from None
            vals[f"a_{o.lower()}"] = a
            vals[f"b_{o.lower()}"] = b
        return cls(name=str(d.get("name", "custom")), **vals)


PRISONERS_DILEMMA = GameSpec("prisoners_dilemma", a_cc=3, a_cd=0, a_dc=5, a_dd=1,
                             b_cc=3, b_cd=5, b_dc=0, b_dd=1)
# A_DC = B_CD = 8 and A_CD = B_DC = 2: the orientation under which (C,D) and
# (D,C) are the pure equilibria and P_B(D,C) = 2
CHICKEN = GameSpec("chicken", a_cc=6, a_cd=2, a_dc=8, a_dd=0,
                   b_cc=6, b_cd=8, b_dc=2, b_dd=0)
CHICKEN_ORIENTATION = "A_DC=B_CD=8, A_CD=B_DC=2 (first letter is Alice's move)"

PRESETS = {
    "prisoners_dilemma": PRISONERS_DILEMMA,
    "pd": PRISONERS_DILEMMA,
    "chicken": CHICKEN,
}


def preset(name):
    try:
        return PRESETS[name]
    except KeyError:
        raise ValueError(f"unknown game {name!r}; presets: {', '.join(PRESETS)}") from None


def load_game(path):
    with open(path) as fh:
        try:
            d = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValueError(f"malformed game JSON: {exc}") from None
    return GameSpec.from_dict(d)


@dataclass(frozen=True)
class PayoffPair:
    p_a: float
    p_b: float

    def __iter__(self):
        return iter((self.p_a, self.p_b))

    def as_list(self):
        return [self.p_a, self.p_b]


@dataclass(frozen=True)
class EwlContext:
    rho: np.ndarray
    states: dict = field(repr=False)
    projectors: dict = field(repr=False)

    @property
    def psi(self):
        return self.states["CC"]


def basis_states():
    return {
        "CC": (ket(0) + 1j * ket(3)) * _SQ,
        "CD": (ket(1) - 1j * ket(2)) * _SQ,
        "DC": (ket(2) - 1j * ket(1)) * _SQ,
        "DD": (ket(3) + 1j * ket(0)) * _SQ,
    }


def build_context():
    states = basis_states()
    projectors = {o: qmath.outer(v) for o, v in states.items()}
    for v in states.values():
        v.setflags(write=False)
    for p in projectors.values():
        p.setflags(write=False)
    rho = qmath.outer(states["CC"])
    rho.setflags(write=False)
    return EwlContext(rho=rho, states=states, projectors=projectors)


def joint_kraus(s_a, s_b):
    ka, kb = s_a.kraus_ops(), s_b.kraus_ops()
    k = np.einsum("iab,jcd->ijacbd", ka, kb)
    return k.reshape(len(ka) * len(kb), 4, 4)


def apply_strategies(ctx, s_a, s_b):
    """Final state sigma = (s_A x s_B)(rho)."""
    k = joint_kraus(s_a, s_b)
    return np.einsum("kij,jl,kml->im", k, ctx.rho, np.conj(k))


def apply_local_pair(rho, s_a, s_b):
    k = joint_kraus(s_a, s_b)
    return np.einsum("kij,jl,kml->im", k, qmath.as_matrix(rho, (4,)), np.conj(k))


def outcome_probabilities(ctx, sigma):
    """tr[pi_xy sigma] for the four outcomes, imaginary residue checked."""
    sigma = qmath.as_matrix(sigma, (4,))
    probs = {}
    for o in OUTCOMES:
        v = ctx.states[o]
        z = complex(np.vdot(v, sigma @ v))
        if abs(z.imag) > 1e-8:
            raise ValueError(f"tr[pi_{o} sigma] has imaginary part {z.imag:.3g}; corrupted state")
        probs[o] = z.real
    return probs


def _weighted(coeffs, probs, outcomes):
    return float(sum(c * probs[o] for c, o in zip(coeffs, outcomes)))


def expected_payoffs(game, ctx, sigma):
    probs = outcome_probabilities(ctx, sigma)
    return PayoffPair(_weighted(game.alice(), probs, OUTCOMES),
                      _weighted(game.bob(), probs, OUTCOMES))


def shifted_payoffs(game, ctx, sigma):
    """Payoffs after the outcome relabelling CC<->DD, CD<->DC."""
    probs = outcome_probabilities(ctx, sigma)
    shifted = [SHIFT[o] for o in OUTCOMES]
    return PayoffPair(_weighted(game.alice(), probs, shifted),
                      _weighted(game.bob(), probs, shifted))


def payoffs(game, ctx, s_a, s_b):
    return expected_payoffs(game, ctx, apply_strategies(ctx, s_a, s_b))


def classify_zero_sum(game):
    return bool(np.all(game.alice() + game.bob() == 0))


def payoff_operators(game, ctx):
    """W_A = sum A_xy pi_xy and W_B likewise; P = tr[W sigma]."""
    wa = sum(c * ctx.projectors[o] for c, o in zip(game.alice(), OUTCOMES))
    wb = sum(c * ctx.projectors[o] for c, o in zip(game.bob(), OUTCOMES))
    return wa, wb
