"""Best-response search and equilibrium certification over the nested
strategy sets CL, TP, GU and CP.

Payoffs against a fixed opponent are linear in the responder's channel, so
each search first folds the opponent's action and the payoff operator into
a 2x2x2x2 tensor; evaluating a batch of candidate responses is then a single
``einsum``.
"""

import itertools
from dataclasses import asdict, dataclass

import numpy as np

from . import ewl
from . import qmath
from . import search
from . import strategies as st
from .qmath import ALICE, BOB
from .strategies import StrategySet

CERTIFIED = "certified"
REFUTED = "refuted"

GU_GRID_CAP = 15
# channel payoffs are quadratic forms on an isometry; few restarts suffice
CP_RESTART_DIVISOR = 10
# values this close (relative) count as ties
TIE_ULPS = 8


@dataclass(frozen=True)
class SearchConfig:
    grid_points_per_axis: int = 61
    restarts: int = 100
    max_iterations: int = 500
    epsilon: float = 1e-6
    seed: int = 42

    def __post_init__(self):
        if self.grid_points_per_axis < 2:
            raise ValueError("grid_points_per_axis must be at least 2")
        if self.restarts < 1:
            raise ValueError("restarts must be at least 1")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be at least 1")
        if not self.epsilon > 0:
            raise ValueError("epsilon must be positive")

    def to_dict(self):
        return asdict(self)


@dataclass(frozen=True)
class EquilibriumCertificate:
    profile: tuple
    payoffs: ewl.PayoffPair
    max_gain_a: float
    max_gain_b: float
    verdict: str
    witness: st.Strategy = None
    witness_player: str = None
    strategy_set: str = None
    epsilon: float = None
    config: SearchConfig = None

    @property
    def certified(self):
        return self.verdict == CERTIFIED

    @property
    def max_gain(self):
        return max(self.max_gain_a, self.max_gain_b)

    def to_dict(self):
        return {
            "profile": [s.to_dict() for s in self.profile],
            "payoffs": self.payoffs.as_list(),
            "gains": [self.max_gain_a, self.max_gain_b],
            "verdict": self.verdict,
            "witness": self.witness.to_dict() if self.witness is not None else None,
            "witness_player": self.witness_player,
            "set": self.strategy_set,
            "config": self.config.to_dict() if self.config else None,
        }


# -- response tensors -------------------------------------------------------

_IDENTITY = st.Unitary(qmath.I2, label="I")


def fixed_state(ctx, fixed, responder):
    """State after only the non-responding player has moved."""
    if responder == ALICE:
        return ewl.apply_strategies(ctx, _IDENTITY, fixed)
    if responder == BOB:
        return ewl.apply_strategies(ctx, fixed, _IDENTITY)
    raise ValueError(f"unknown player tag {responder!r}")


def response_tensor(w, sigma, responder):
    """T with tr[W (K x 1) sigma (K x 1)^dag] = sum conj(K_ip) K_jq T_ijqp."""
    w4 = w.reshape(2, 2, 2, 2)
    s4 = sigma.reshape(2, 2, 2, 2)
    if responder == ALICE:
        return np.einsum("ibjc,qcpb->ijqp", w4, s4)
    return np.einsum("aicj,cqap->ijqp", w4, s4)


def batch_payoff(tensor, kraus):
    """Payoffs for a batch of Kraus sets shaped (R, k, 2, 2)."""
    form = tensor.transpose(0, 3, 1, 2).reshape(4, 4)
    kv = kraus.reshape(kraus.shape[0], kraus.shape[1], 4)
    return np.sum(np.conj(kv) * (kv @ form.T), axis=(1, 2)).real


def _seat_index(player):
    if player not in (ALICE, BOB):
        raise ValueError(f"unknown player tag {player!r}")
    return 0 if player == ALICE else 1


def _profile(player, own, other):
    return (own, other) if player == ALICE else (other, own)


# -- best response ----------------------------------------------------------

def _start_points(ch, cfg, values_at, extra_starts=()):
    starts = list(extra_starts)
    if ch.tag is not StrategySet.CP:
        pts = cfg.grid_points_per_axis
        if ch.tag is StrategySet.GU:
            pts = min(pts, GU_GRID_CAP)
        grid = ch.grid(pts)
        vals = values_at(grid)
        # first maximum in grid order, which is lexicographic in parameters
        starts.append(grid[int(np.argmax(vals))])
    for i in range(cfg.restarts - len(starts)):
        rng = np.random.default_rng([cfg.seed, i])
        starts.append(ch.lo + (ch.hi - ch.lo) * rng.random(ch.dim))
    return np.array(starts[: max(cfg.restarts, 1)])


def _pick_best(xs, vals):
    top = np.max(vals)
    window = TIE_ULPS * np.finfo(float).eps * max(1.0, abs(top))
    tied = [i for i in range(len(vals)) if vals[i] >= top - window]
    best = min(tied, key=lambda i: tuple(np.round(xs[i], 12)))
    return xs[best], vals[best]


def best_response(game, ctx, fixed, responder, strategy_set, cfg=None):
    """Search ``strategy_set`` for the responder's payoff-maximizing reply.

    Returns ``(strategy, payoff)``. The result is deterministic for a given
    config: restart ``i`` draws its start from ``default_rng([seed, i])``.
    """
    cfg = cfg or SearchConfig()
    ch = search.chart(strategy_set)
    seat = _seat_index(responder)
    w = ewl.payoff_operators(game, ctx)[seat]
    tensor = response_tensor(w, fixed_state(ctx, fixed, responder), responder)

    def values_at(x):
        return batch_payoff(tensor, ch.kraus(x))

    extra = ()
    max_iter = cfg.max_iterations
    if ch.tag is StrategySet.CP:
        # CP contains GU: seed the channel search with the best unitary reply
        u, _ = best_response(game, ctx, fixed, responder, StrategySet.GU, cfg)
        extra = (search.kraus_to_stiefel(u.kraus_ops()),)
        max_iter = cfg.max_iterations * 4
        cfg = SearchConfig(cfg.grid_points_per_axis, max(2, cfg.restarts // CP_RESTART_DIVISOR),
                           cfg.max_iterations, cfg.epsilon, cfg.seed)
    starts = _start_points(ch, cfg, values_at, extra)
    xs, fs = search.nelder_mead_batch(lambda x: -values_at(x), starts, ch.lo, ch.hi,
                                      max_iter=max_iter)
    x_best, _ = _pick_best(xs, -fs)
    strategy = ch.strategy(x_best)
    value = ewl.payoffs(game, ctx, *_profile(responder, strategy, fixed)).as_list()[seat]
    return strategy, value


# -- certification ----------------------------------------------------------

def verify_nash(game, ctx, s_a, s_b, strategy_set, cfg=None):
    """Certify (s_a, s_b) as an epsilon-Nash profile against ``strategy_set``."""
    cfg = cfg or SearchConfig()
    current = ewl.payoffs(game, ctx, s_a, s_b)
    dev_a, val_a = best_response(game, ctx, s_b, ALICE, strategy_set, cfg)
    dev_b, val_b = best_response(game, ctx, s_a, BOB, strategy_set, cfg)
    gain_a = val_a - current.p_a
    gain_b = val_b - current.p_b
    certified = max(gain_a, gain_b) <= cfg.epsilon
    witness = player = None
    if not certified:
        witness, player = (dev_a, ALICE) if gain_a >= gain_b else (dev_b, BOB)
    return EquilibriumCertificate(
        profile=(s_a, s_b), payoffs=current, max_gain_a=gain_a, max_gain_b=gain_b,
        verdict=CERTIFIED if certified else REFUTED, witness=witness,
        witness_player=player, strategy_set=StrategySet(strategy_set).value,
        epsilon=cfg.epsilon, config=cfg)


def verify_mixed_nash(game, ctx, mix_a, mix_b, cfg=None):
    """Certify a mixed profile by searching pure unitary deviations only.

    A mixed deviation pays a convex combination of its pure components, so
    the best pure deviation bounds every mixed one.
    """
    for s in (mix_a, mix_b):
        if not isinstance(s, (st.Mixture, st.Unitary)):
            raise ValueError("mixed certification needs unitary mixtures")
    return verify_nash(game, ctx, mix_a, mix_b, StrategySet.GU, cfg)


def witness_gain(game, ctx, cert):
    """Recompute the witness's gain from scratch."""
    s_a, s_b = cert.profile
    if cert.witness_player == ALICE:
        return ewl.payoffs(game, ctx, cert.witness, s_b).p_a - cert.payoffs.p_a
    return ewl.payoffs(game, ctx, s_a, cert.witness).p_b - cert.payoffs.p_b


# -- exhaustive grids over pure profiles -------------------------------------

def _grid_unitaries(strategy_set, points):
    ch = search.chart(strategy_set)
    if ch.tag not in (StrategySet.CL, StrategySet.TP):
        raise ValueError("grid enumeration supports the CL and TP sets only")
    grid = ch.grid(points)
    return ch, grid, ch.kraus(grid)[:, 0]


def payoff_table_chunks(game, ctx, ua, ub, chunk=256):
    """Yield (start, P_A, P_B) row blocks of the pure-profile payoff tables."""
    states = ewl.basis_states()
    phis = np.array([states[o].reshape(2, 2) for o in ewl.OUTCOMES])
    psi = ctx.psi.reshape(2, 2)
    a_coef, b_coef = game.alice(), game.bob()
    # amp[a, o, b] = sum conj(Phi_o[i, j]) Ua[i, m] Psi[m, n] Ub[j, n]
    left = np.einsum("oij,aim,mn->aojn", np.conj(phis), ua, psi)
    right = ub.reshape(len(ub), 4)
    for start in range(0, len(ua), chunk):
        blk = left[start:start + chunk]
        amp = blk.reshape(-1, 4) @ right.T
        prob = (amp.real ** 2 + amp.imag ** 2).reshape(len(blk), 4, len(ub))
        yield start, np.einsum("o,aob->ab", a_coef, prob), np.einsum("o,aob->ab", b_coef, prob)


def _grid_survivors(game, ctx, u, tol):
    n = len(u)
    colmax_a = np.full(n, -np.inf)
    rowmax_b = np.empty(n)
    for start, pa, pb in payoff_table_chunks(game, ctx, u, u):
        colmax_a = np.maximum(colmax_a, pa.max(axis=0))
        rowmax_b[start:start + len(pa)] = pb.max(axis=1)
    found = []
    for start, pa, pb in payoff_table_chunks(game, ctx, u, u):
        ok = (pa >= colmax_a[None, :] - tol) & (pb >= rowmax_b[start:start + len(pa), None] - tol)
        for i, j in zip(*np.nonzero(ok)):
            found.append((start + int(i), int(j)))
    return found


def _same_profile(game, ctx, c1, c2, cfg):
    if max(abs(c1.payoffs.p_a - c2.payoffs.p_a), abs(c1.payoffs.p_b - c2.payoffs.p_b)) > cfg.epsilon:
        return False
    return all(strategies_equivalent(game, ctx, x, y, cfg) for x, y in zip(c1.profile, c2.profile))


def find_nash_grid(game, ctx, strategy_set, cfg=None):
    """Enumerate pure equilibria of CL or TP on the parameter grid.

    Grid profiles with no grid deviation worth more than epsilon are then
    certified against the continuous set and deduplicated under global phase
    and payoff equivalence. Uniqueness is therefore numerical, up to the grid
    resolution and search budget.
    """
    cfg = cfg or SearchConfig()
    ch, grid, u = _grid_unitaries(strategy_set, cfg.grid_points_per_axis)
    candidates = []
    for i, j in _grid_survivors(game, ctx, u, cfg.epsilon):
        if any(qmath.equal_up_to_phase(u[i], u[k], qmath.EXACT_TOL)
               and qmath.equal_up_to_phase(u[j], u[l], qmath.EXACT_TOL) for k, l in candidates):
            continue
        candidates.append((i, j))

    certs = []
    for i, j in candidates:
        cert = verify_nash(game, ctx, ch.strategy(grid[i]), ch.strategy(grid[j]), ch.tag, cfg)
        if not cert.certified:
            continue
        if any(_same_profile(game, ctx, cert, c, cfg) for c in certs):
            continue
        certs.append(cert)
    return certs


def check_dominant(game, ctx, candidate, player, strategy_set, cfg=None):
    """Grid check that ``candidate`` is weakly dominant for ``player``.

    Against every grid opponent the candidate must do as well as the best
    grid alternative, within epsilon.
    """
    cfg = cfg or SearchConfig()
    _, _, u = _grid_unitaries(strategy_set, cfg.grid_points_per_axis)
    seat = _seat_index(player)
    best = np.full(len(u), -np.inf)
    for start, pa, pb in payoff_table_chunks(game, ctx, u, u):
        if seat == 0:
            best = np.maximum(best, pa.max(axis=0))
        else:
            best[start:start + len(pb)] = pb.max(axis=1)
    opponent = BOB if seat == 0 else ALICE
    w = ewl.payoff_operators(game, ctx)[seat]
    tensor = response_tensor(w, fixed_state(ctx, candidate, opponent), opponent)
    mine = batch_payoff(tensor, u[:, None])
    return bool(np.all(mine >= best - cfg.epsilon))


# -- Pareto -----------------------------------------------------------------

def _hull(points):
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _edges(poly):
    if len(poly) == 1:
        return [(poly[0], poly[0])]
    return [(poly[k], poly[(k + 1) % len(poly)]) for k in range(len(poly))]


def _max_coord(poly, coord, other_min):
    """Largest value of ``coord`` over hull points whose other coordinate
    is at least ``other_min``; None when that region is empty."""
    o = 1 - coord
    best = None
    for p, q in _edges(poly):
        cands = [v for v in (p, q) if v[o] >= other_min]
        if (p[o] - other_min) * (q[o] - other_min) < 0:
            t = (other_min - p[o]) / (q[o] - p[o])
            cands.append((p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])))
        for v in cands:
            best = v[coord] if best is None else max(best, v[coord])
    return best


def _in_hull(poly, x, tol):
    if len(poly) == 1:
        return abs(poly[0][0] - x[0]) <= tol and abs(poly[0][1] - x[1]) <= tol
    if len(poly) == 2:
        (p, q) = poly
        d = np.subtract(q, p)
        t = np.clip(np.dot(np.subtract(x, p), d) / np.dot(d, d), 0, 1)
        return np.hypot(*(np.add(p, t * d) - x)) <= tol
    for p, q in _edges(poly):
        cross = (q[0] - p[0]) * (x[1] - p[1]) - (q[1] - p[1]) * (x[0] - p[0])
        if cross < -tol * np.hypot(q[0] - p[0], q[1] - p[1]):
            return False
    return True


def achievable_hull(game):
    return _hull(list(zip(game.alice().tolist(), game.bob().tolist())))


def check_pareto(game, payoffs, tol=1e-9):
    """True when ``payoffs`` is achievable and not weakly dominated.

    The achievable set is the convex hull of the four outcome payoff pairs.
    """
    pa, pb = payoffs
    poly = achievable_hull(game)
    if not _in_hull(poly, (pa, pb), tol):
        return False
    best_a = _max_coord(poly, 0, pb)
    best_b = _max_coord(poly, 1, pa)
    return (best_a is None or best_a <= pa + tol) and (best_b is None or best_b <= pb + tol)


# -- duality and equivalence -------------------------------------------------

def dual_profile(profile):
    s_a, s_b = profile
    return st.conjugate_by_q(s_a), st.conjugate_by_q(s_b)


def _opponent_sample(cfg):
    ch = search.chart(StrategySet.GU)
    grid = ch.grid(5)
    rng = np.random.default_rng([cfg.seed, 10_000])
    rand = qmath.haar_unitary(rng, cfg.restarts)
    named = np.array([st.C_MATRIX, st.D_MATRIX, st.Q_MATRIX])
    return np.concatenate([named, ch.kraus(grid)[:, 0], rand])[:, None]


def strategies_equivalent(game, ctx, s1, s2, cfg=None):
    """True when s1 and s2 give both players the same payoffs against every
    sampled unitary opponent, in either seat, within epsilon."""
    cfg = cfg or SearchConfig()
    if isinstance(s1, st.Unitary) and isinstance(s2, st.Unitary):
        if qmath.equal_up_to_phase(s1.matrix, s2.matrix, qmath.EXACT_TOL):
            return True
    ops = ewl.payoff_operators(game, ctx)
    tensors = []
    for seat, opponent in ((ALICE, BOB), (BOB, ALICE)):
        for w in ops:
            t1 = response_tensor(w, fixed_state(ctx, s1, opponent), opponent)
            t2 = response_tensor(w, fixed_state(ctx, s2, opponent), opponent)
            tensors.append(t1 - t2)
    diff = np.stack(tensors)

    def gap(kraus):
        return np.max(np.abs([batch_payoff(t, kraus) for t in diff]), axis=0)

    sample = _opponent_sample(cfg)
    if np.max(gap(sample)) > cfg.epsilon:
        return False
    ch = search.chart(StrategySet.GU)
    starts = _start_points(ch, SearchConfig(cfg.grid_points_per_axis, min(cfg.restarts, 20),
                                            cfg.max_iterations, cfg.epsilon, cfg.seed),
                           lambda x: gap(ch.kraus(x)))
    _, fs = search.nelder_mead_batch(lambda x: -gap(ch.kraus(x)), starts, ch.lo, ch.hi,
                                     max_iter=cfg.max_iterations)
    return bool(np.max(-fs) <= cfg.epsilon)


def channels_identical(s1, s2, tol=qmath.EXACT_TOL):
    """Compare two single-qubit strategies by their action on a matrix basis."""
    for i, j in itertools.product(range(2), repeat=2):
        e = np.zeros((2, 2), dtype=complex)
        e[i, j] = 1
        if np.max(np.abs(st.apply_local(s1, e) - st.apply_local(s2, e))) > tol:
            return False
    return True


# -- classical 2x2 games ------------------------------------------------------

def classical_pure_nash(game):
    """Pure equilibria of the classical bimatrix game as outcome labels."""
    found = []
    for x, y in itertools.product("CD", repeat=2):
        xo, yo = "D" if x == "C" else "C", "D" if y == "C" else "C"
        a, b = game.payoff(x + y)
        if a >= game.payoff(xo + y)[0] and b >= game.payoff(x + yo)[1]:
            found.append((x, y))
    return found


def classical_mixed_nash(game):
    """Fully mixed equilibrium as (p_alice_C, q_bob_C, P_A, P_B), or None."""
    a, b = game.alice(), game.bob()
    den_p = b[0] - b[1] - b[2] + b[3]
    den_q = a[0] - a[1] - a[2] + a[3]
    if den_p == 0 or den_q == 0:
        return None
    p = (b[3] - b[2]) / den_p
    q = (a[3] - a[1]) / den_q
    if not (0 < p < 1 and 0 < q < 1):
        return None
    weights = np.array([p * q, p * (1 - q), (1 - p) * q, (1 - p) * (1 - q)])
    return float(p), float(q), float(weights @ a), float(weights @ b)


def classical_mixed_payoffs(game, p_a, p_b):
    """Expected payoffs when Alice and Bob cooperate with p_a and p_b."""
    w = np.array([p_a * p_b, p_a * (1 - p_b), (1 - p_a) * p_b, (1 - p_a) * (1 - p_b)])
    return ewl.PayoffPair(float(w @ game.alice()), float(w @ game.bob()))
