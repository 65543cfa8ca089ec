"""Seeded claim suites for the Prisoners' Dilemma, Chicken and the
cross-module properties.

Each suite is a list of claim groups. Groups are independent, may run on a
thread pool, and their claims are reported in group order, so a report does
not depend on scheduling.
"""

import csv
import io
import json
import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import equilibrium as eq
from . import ewl
from . import qmath
from . import search
from . import strategies as st
from .qmath import ALICE, BOB

CLOSED_FORM_TOL = 1e-9
EXACT_TOL = 1e-12
SEARCH_TOL = 1e-4

OPTIMAL_ANSWER_SAMPLES = 1000
PURE_PROFILE_SAMPLES = 100
PROPERTY_SAMPLES = 1000
CONJUGATION_SAMPLES = 200

NUMERICAL_NOTE = ("uniqueness and all-deviation claims are numerical certifications, "
                  "valid up to the search grid and restart budget")


@dataclass
class Claim:
    description: str
    expected: object
    observed: object
    tolerance: float = 0.0
    kind: str = "closed-form"
    id: str = ""

    @property
    def passed(self):
        if isinstance(self.expected, (bool, str, list)) or self.expected is None:
            return self.expected == self.observed
        return bool(abs(self.expected - self.observed) <= self.tolerance)

    def to_dict(self):
        return {
            "id": self.id,
            "description": self.description,
            "kind": self.kind,
            "expected": self.expected,
            "observed": self.observed,
            "tolerance": self.tolerance,
            "pass": self.passed,
        }


@dataclass
class ScenarioReport:
    scenario: str
    claims: list
    runtime: float = 0.0
    notes: list = field(default_factory=list)
    config: dict = None

    @property
    def passed(self):
        return all(c.passed for c in self.claims)

    def failures(self):
        return [c for c in self.claims if not c.passed]

    def to_dict(self, runtime=True):
        d = {
            "scenario": self.scenario,
            "notes": list(self.notes),
            "config": self.config,
            "passed": self.passed,
            "claims": [c.to_dict() for c in self.claims],
        }
        if runtime:
            d["runtime"] = self.runtime
        return d


CSV_FIELDS = ["id", "description", "expected", "observed", "tolerance", "pass"]


def reports_to_json(reports, runtime=True):
    payload = {"reports": [r.to_dict(runtime=runtime) for r in reports],
               "passed": all(r.passed for r in reports)}
    return json.dumps(payload, indent=2) + "\n"


def reports_to_csv(reports):
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
    w.writeheader()
    for r in reports:
        for c in r.claims:
            d = c.to_dict()
            w.writerow({k: json.dumps(d[k]) if isinstance(d[k], list) else d[k] for k in CSV_FIELDS})
    return buf.getvalue()


def thread_count():
    raw = os.environ.get("QGAME_THREADS")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            raise ValueError(f"QGAME_THREADS must be an integer, got {raw!r}") from None
    return os.cpu_count() or 1


def _run(scenario, groups, cfg, threads, notes=()):
    start = time.perf_counter()
    threads = threads or thread_count()
    if threads == 1:
        results = [g() for g in groups]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda g: g(), groups))
    claims = [c for group in results for c in group]
    for k, c in enumerate(claims, 1):
        c.id = f"{scenario}-{k:02d}"
    return ScenarioReport(scenario, claims, runtime=time.perf_counter() - start,
                          notes=list(notes), config=cfg.to_dict())


def _num(x):
    return float(x)


def _pair_claims(label, observed, expected, tol=CLOSED_FORM_TOL, kind="closed-form"):
    return [
        Claim(f"{label}: P_A", _num(expected[0]), _num(observed.p_a), tol, kind),
        Claim(f"{label}: P_B", _num(expected[1]), _num(observed.p_b), tol, kind),
    ]


def _classical_embedding(game, ctx):
    claims = []
    for x in "CD":
        for y in "CD":
            got = ewl.payoffs(game, ctx, st.named(x), st.named(y))
            claims += _pair_claims(f"classical embedding ({x},{y})", got, game.payoff(x + y), EXACT_TOL)
    return claims


def cl_mixed_deviation(game, ctx, points=51):
    """Largest gap between CL payoffs and classical mixed payoffs with
    cooperation probability cos^2(theta/2), over a square grid."""
    thetas = np.linspace(0, math.pi, points)
    worst = 0.0
    for ta in thetas:
        for tb in thetas:
            got = ewl.payoffs(game, ctx, st.u_one_param(ta), st.u_one_param(tb))
            ref = eq.classical_mixed_payoffs(game, math.cos(ta / 2) ** 2, math.cos(tb / 2) ** 2)
            worst = max(worst, abs(got.p_a - ref.p_a), abs(got.p_b - ref.p_b))
    return worst


_NAMED_MATRICES = {"C": st.C_MATRIX, "D": st.D_MATRIX, "Q": st.Q_MATRIX}


def _describe(s):
    if isinstance(s, st.Unitary):
        for name, m in _NAMED_MATRICES.items():
            if qmath.equal_up_to_phase(s.matrix, m, 1e-9):
                return name
    if getattr(s, "label", None):
        return s.label
    if getattr(s, "params", None):
        return "U(" + ", ".join(f"{k}={v:.6g}" for k, v in s.params.items()) + ")"
    return repr(s)


def _class_summary(certs):
    return [f"({_describe(c.profile[0])}, {_describe(c.profile[1])}) -> "
            f"({c.payoffs.p_a:.6f}, {c.payoffs.p_b:.6f})" for c in certs]


def _is_q(s):
    return _describe(s) == "Q"


def optimal_answer_sweep(game, ctx, samples, seed):
    """Worst overlap with psi_DC and worst payoff error of the optimal answer."""
    rng = np.random.default_rng([seed, 1])
    us = qmath.haar_unitary(rng, samples)
    psi_dc = ctx.states["DC"]
    worst_overlap, worst_pay = 1.0, 0.0
    for u in us:
        s_b = st.Unitary(u)
        s_a = st.optimal_answer(s_b)
        v = np.kron(s_a.matrix, s_b.matrix) @ ctx.psi
        worst_overlap = min(worst_overlap, abs(np.vdot(psi_dc, v)) ** 2)
        p = ewl.payoffs(game, ctx, s_a, s_b)
        worst_pay = max(worst_pay, abs(p.p_a - game.a_dc), abs(p.p_b - game.b_dc))
    return worst_overlap, worst_pay


def random_pure_profiles(samples, seed):
    rng = np.random.default_rng([seed, 2])
    us = qmath.haar_unitary(rng, 2 * samples)
    return [(st.Unitary(us[2 * k]), st.Unitary(us[2 * k + 1])) for k in range(samples)]


# -- Prisoners' Dilemma -------------------------------------------------------

def run_pd_suite(cfg=None, threads=None, pure_samples=PURE_PROFILE_SAMPLES):
    cfg = cfg or eq.SearchConfig()
    game, ctx = ewl.PRISONERS_DILEMMA, ewl.build_context()
    C, D, Q, R = (st.named(n) for n in "CDQR")

    def embedding():
        return _classical_embedding(game, ctx)

    def cl_dominant():
        cert = eq.verify_nash(game, ctx, D, D, "CL", cfg)
        return [
            Claim("CL: D dominant for Alice", True, eq.check_dominant(game, ctx, D, ALICE, "CL", cfg), kind="search"),
            Claim("CL: D dominant for Bob", True, eq.check_dominant(game, ctx, D, BOB, "CL", cfg), kind="search"),
            Claim("CL: (D,D) is Nash", eq.CERTIFIED, cert.verdict, kind="search"),
            *_pair_claims("CL: P(D,D)", cert.payoffs, (1, 1)),
            Claim("CL: (D,D) max deviation gain", 0.0, max(0.0, cert.max_gain), 1e-9, "search"),
            Claim("CL: (1,1) is not Pareto optimal", False, eq.check_pareto(game, (1, 1))),
        ]

    def cl_classical():
        return [Claim("CL: payoffs equal classical mixing with p = cos^2(theta/2), 51x51 grid",
                      0.0, cl_mixed_deviation(game, ctx), CLOSED_FORM_TOL)]

    def tp():
        cert = eq.verify_nash(game, ctx, Q, Q, "TP", cfg)
        dd = eq.verify_nash(game, ctx, D, D, "TP", cfg)
        classes = eq.find_nash_grid(game, ctx, "TP", cfg)
        return [
            Claim("TP: (Q,Q) is Nash", eq.CERTIFIED, cert.verdict, kind="search"),
            *_pair_claims("TP: P(Q,Q)", cert.payoffs, (3, 3)),
            Claim("TP: (Q,Q) max deviation gain", 0.0, max(0.0, cert.max_gain), cfg.epsilon, "search"),
            Claim("TP: (D,D) is refuted", eq.REFUTED, dd.verdict, kind="search"),
            Claim("TP: deviation from D against D pays", 5.0, dd.payoffs.p_a + dd.max_gain_a, SEARCH_TOL, "search"),
            Claim("TP: P_A(Q,D)", 5.0, ewl.payoffs(game, ctx, Q, D).p_a, CLOSED_FORM_TOL),
            Claim("TP: number of Nash classes on grid", 1, len(classes), 0.0, "numerical-certification"),
            Claim("TP: grid equilibria", ["(Q, Q) -> (3.000000, 3.000000)"], _class_summary(classes),
                  kind="numerical-certification"),
            Claim("TP: D not dominant", False, eq.check_dominant(game, ctx, D, ALICE, "TP", cfg), kind="search"),
            Claim("TP: (3,3) is Pareto optimal", True, eq.check_pareto(game, (3, 3))),
        ]

    def gu_optimal():
        overlap, pay_err = optimal_answer_sweep(game, ctx, OPTIMAL_ANSWER_SAMPLES, cfg.seed)
        return [
            Claim(f"GU: optimal answer overlap with psi_DC, {OPTIMAL_ANSWER_SAMPLES} unitaries", 1.0, overlap, 1e-9),
            Claim("GU: optimal answer payoffs (5, 0), max error", 0.0, pay_err, CLOSED_FORM_TOL),
        ]

    def gu_no_pure():
        profiles = random_pure_profiles(pure_samples, cfg.seed)
        refuted, min_gain, max_witness_err = 0, math.inf, 0.0
        br_err = 0.0
        for s_a, s_b in profiles:
            cert = eq.verify_nash(game, ctx, s_a, s_b, "GU", cfg)
            refuted += not cert.certified
            min_gain = min(min_gain, cert.max_gain)
            if cert.witness is not None:
                max_witness_err = max(max_witness_err, abs(eq.witness_gain(game, ctx, cert) - cert.max_gain))
            br_err = max(br_err, abs(cert.payoffs.p_a + cert.max_gain_a - 5.0),
                         abs(cert.payoffs.p_b + cert.max_gain_b - 5.0))
        qq = eq.verify_nash(game, ctx, Q, Q, "GU", cfg)
        return [
            Claim(f"GU: refuted pure profiles out of {pure_samples}", pure_samples, refuted, 0.0, "search"),
            Claim("GU: smallest best unilateral gain is positive", True, bool(min_gain > cfg.epsilon), kind="search"),
            Claim("GU: witness gains reproduce", 0.0, max_witness_err, 1e-9, "search"),
            Claim("GU: best response attains 5", 0.0, br_err, SEARCH_TOL, "search"),
            Claim("GU: (Q,Q) is refuted", eq.REFUTED, qq.verdict, kind="search"),
        ]

    def mixed():
        ma, mb = st.partnash_alice(), st.partnash_bob()
        cert = eq.verify_mixed_nash(game, ctx, ma, mb, cfg)
        claims = [*_pair_claims("GU mixed: P(PartNash)", cert.payoffs, (2.5, 2.5), EXACT_TOL),
                  Claim("GU mixed: PartNash profile is Nash", eq.CERTIFIED, cert.verdict, kind="search"),
                  Claim("GU mixed: best pure reply gain", 0.0, max(0.0, cert.max_gain), SEARCH_TOL, "search")]
        for i in range(2):
            for j in range(2):
                got = ewl.payoffs(game, ctx, st.Unitary(ma.matrices[i]), st.Unitary(mb.matrices[j]))
                want = (0, 5) if i == j else (5, 0)
                claims += _pair_claims(f"GU mixed: P(s_A^{i + 1}, s_B^{j + 1})", got, want, EXACT_TOL)
        # (I, C) lands on psi_CC and (-Q, C) on psi_DD: Bob gets (3 + 1) / 2
        against_c = ewl.payoffs(game, ctx, ma, C).p_b
        claims.append(Claim("GU mixed: Bob playing C against Alice's mixture", 2.0, against_c, EXACT_TOL))
        return claims

    def dual():
        profile = (st.partnash_alice(), st.partnash_bob())
        d_a, d_b = eq.dual_profile(profile)
        cert = eq.verify_mixed_nash(game, ctx, d_a, d_b, cfg)
        return [
            Claim("dual: Q-conjugated PartNash profile is Nash", eq.CERTIFIED, cert.verdict, kind="search"),
            *_pair_claims("dual: P(dual PartNash)", cert.payoffs, (2.5, 2.5), EXACT_TOL),
        ]

    def focal():
        sigma = ewl.apply_strategies(ctx, R, C)
        cert = eq.verify_mixed_nash(game, ctx, R, R, cfg)
        return [
            Claim("focal: (R, C) maps rho to I/4", 0.0, float(np.max(np.abs(sigma - qmath.I4 / 4))), EXACT_TOL),
            *_pair_claims("focal: P(R,R)", ewl.payoffs(game, ctx, R, R), (2.25, 2.25), EXACT_TOL),
            Claim("focal: (R,R) is Nash in GU mixtures", eq.CERTIFIED, cert.verdict, kind="search"),
            Claim("focal: R is self-dual as a channel", True, eq.channels_identical(R, st.conjugate_by_q(R))),
            Claim("focal: R equivalent to QRQ^dag", True,
                  eq.strategies_equivalent(game, ctx, R, st.conjugate_by_q(R), cfg), kind="search"),
            Claim("focal: shifted payoffs equal plain payoffs under R",
                  0.0, _shift_gap(game, ctx, R, cfg.seed), EXACT_TOL),
        ]

    def cp_measure():
        ma, mb = st.measurement_strategy_pair()
        sigma = ewl.apply_strategies(ctx, ma, mb)
        target = (qmath.outer(qmath.ket(1)) + qmath.outer(qmath.ket(2))) / 2
        cert = eq.verify_nash(game, ctx, ma, mb, "CP", cfg)
        return [
            Claim("CP: measurement pair final state", 0.0, float(np.max(np.abs(sigma - target))), EXACT_TOL),
            *_pair_claims("CP: P(measurement pair)", cert.payoffs, (2.5, 2.5), EXACT_TOL),
            Claim("CP: measurement pair is Nash", eq.CERTIFIED, cert.verdict, kind="numerical-certification"),
            Claim("CP: measurement pair deviation gain", 0.0, max(0.0, cert.max_gain), SEARCH_TOL,
                  "numerical-certification"),
        ]

    def cp_focal():
        cert = eq.verify_nash(game, ctx, R, R, "CP", cfg)
        qq = eq.verify_nash(game, ctx, Q, Q, "CP", cfg)
        return [
            *_pair_claims("CP: P(R,R)", cert.payoffs, (2.25, 2.25), EXACT_TOL),
            Claim("CP: (R,R) is Nash", eq.CERTIFIED, cert.verdict, kind="numerical-certification"),
            Claim("CP: (Q,Q) is refuted", eq.REFUTED, qq.verdict, kind="search"),
        ]

    groups = [embedding, cl_dominant, cl_classical, tp, gu_optimal, gu_no_pure,
              mixed, dual, focal, cp_measure, cp_focal]
    return _run("pd", groups, cfg, threads, notes=[NUMERICAL_NOTE])


def _shift_gap(game, ctx, s_a, seed, samples=50):
    rng = np.random.default_rng([seed, 3])
    worst = 0.0
    for u in qmath.haar_unitary(rng, samples):
        sigma = ewl.apply_strategies(ctx, s_a, st.Unitary(u))
        p, q = ewl.expected_payoffs(game, ctx, sigma), ewl.shifted_payoffs(game, ctx, sigma)
        worst = max(worst, abs(p.p_a - q.p_a), abs(p.p_b - q.p_b))
    return worst


# -- Chicken ------------------------------------------------------------------

def run_chicken_suite(cfg=None, threads=None):
    cfg = cfg or eq.SearchConfig()
    game, ctx = ewl.CHICKEN, ewl.build_context()
    C, D, Q, R = (st.named(n) for n in "CDQR")

    def classical():
        pure = sorted(f"({x},{y})" for x, y in eq.classical_pure_nash(game))
        mixed = eq.classical_mixed_nash(game)
        return [
            Claim("classical pure Nash equilibria", ["(C,D)", "(D,C)"], pure),
            Claim("classical mixed equilibrium: P(C) for Alice", 0.5, mixed[0], CLOSED_FORM_TOL),
            Claim("classical mixed equilibrium: P(C) for Bob", 0.5, mixed[1], CLOSED_FORM_TOL),
            Claim("classical mixed equilibrium payoff", 4.0, mixed[2], CLOSED_FORM_TOL),
        ]

    def cl():
        classes = eq.find_nash_grid(game, ctx, "CL", cfg)
        labels = [(_describe(c.profile[0]), _describe(c.profile[1])) for c in classes]
        pure = sorted(f"({a},{b})" for a, b in labels if {a, b} <= {"C", "D"})
        return [
            Claim("CL: payoffs equal classical mixing with p = cos^2(theta/2), 51x51 grid",
                  0.0, cl_mixed_deviation(game, ctx), CLOSED_FORM_TOL),
            Claim("CL: pure grid equilibria", ["(C,D)", "(D,C)"], pure, kind="numerical-certification"),
            Claim("CL: grid equilibria incl. the mixed-equivalent point", 3, len(classes), 0.0,
                  "numerical-certification"),
            *_pair_claims("CL: P(C,D)", ewl.payoffs(game, ctx, C, D), (2, 8), EXACT_TOL),
        ]

    def tp_refute():
        claims = []
        for s_a, s_b, label in ((C, D, "(C,D)"), (D, C, "(D,C)")):
            cert = eq.verify_nash(game, ctx, s_a, s_b, "TP", cfg)
            claims += [
                Claim(f"TP: {label} is refuted", eq.REFUTED, cert.verdict, kind="search"),
                Claim(f"TP: {label} witness is Q", True, _is_q(cert.witness), kind="search"),
                Claim(f"TP: {label} witness gain", 6.0, cert.max_gain, SEARCH_TOL, "search"),
            ]
        claims += [
            Claim("TP: P_B(D,Q)", 8.0, ewl.payoffs(game, ctx, D, Q).p_b, EXACT_TOL),
            Claim("TP: P_B(D,C)", 2.0, ewl.payoffs(game, ctx, D, C).p_b, EXACT_TOL),
        ]
        return claims

    def tp_unique():
        cert = eq.verify_nash(game, ctx, Q, Q, "TP", cfg)
        classes = eq.find_nash_grid(game, ctx, "TP", cfg)
        return [
            Claim("TP: (Q,Q) is Nash", eq.CERTIFIED, cert.verdict, kind="search"),
            *_pair_claims("TP: P(Q,Q)", cert.payoffs, (6, 6)),
            Claim("TP: number of Nash classes on grid", 1, len(classes), 0.0, "numerical-certification"),
            Claim("TP: grid equilibria", ["(Q, Q) -> (6.000000, 6.000000)"], _class_summary(classes),
                  kind="numerical-certification"),
            Claim("TP: (6,6) is Pareto optimal", True, eq.check_pareto(game, (6, 6))),
        ]

    def cp_focal():
        cert = eq.verify_nash(game, ctx, R, R, "CP", cfg)
        return [
            *_pair_claims("CP: P(R,R)", ewl.payoffs(game, ctx, R, R), (4, 4), EXACT_TOL),
            Claim("CP: (R,R) is Nash", eq.CERTIFIED, cert.verdict, kind="numerical-certification"),
        ]

    groups = [lambda: _classical_embedding(game, ctx), classical, cl, tp_refute, tp_unique, cp_focal]
    notes = [f"payoff orientation: {ewl.CHICKEN_ORIENTATION}", NUMERICAL_NOTE]
    return _run("chicken", groups, cfg, threads, notes=notes)


# -- cross-module properties --------------------------------------------------

def random_mixture(rng, max_components=4):
    n = int(rng.integers(1, max_components + 1))
    probs = rng.dirichlet(np.ones(n))
    probs[-1] = 1.0 - probs[:-1].sum()
    return st.Mixture(list(zip(probs, qmath.haar_unitary(rng, n))))


def random_channel(rng):
    return st.Channel(search.stiefel_kraus(rng.standard_normal(4 * search.CP_RANK * 2))[0])


def random_strategy(rng):
    kind = int(rng.integers(3))
    if kind == 0:
        return st.Unitary(qmath.haar_unitary(rng))
    if kind == 1:
        return random_mixture(rng)
    return random_channel(rng)


def run_property_suite(cfg=None, threads=None, samples=PROPERTY_SAMPLES):
    cfg = cfg or eq.SearchConfig()
    game, ctx = ewl.PRISONERS_DILEMMA, ewl.build_context()
    hull = eq.achievable_hull(game)

    def states():
        rng = np.random.default_rng([cfg.seed, 4])
        trace_err = norm_err = 0.0
        min_prob = 1.0
        density_ok = hull_ok = True
        for _ in range(samples):
            sigma = ewl.apply_strategies(ctx, random_strategy(rng), random_strategy(rng))
            trace_err = max(trace_err, abs(qmath.trace(sigma) - 1))
            density_ok &= qmath.is_density(sigma, 1e-9)
            probs = ewl.outcome_probabilities(ctx, sigma)
            norm_err = max(norm_err, abs(sum(probs.values()) - 1))
            min_prob = min(min_prob, min(probs.values()))
            hull_ok &= eq._in_hull(hull, tuple(ewl.expected_payoffs(game, ctx, sigma)), 1e-9)
        return [
            Claim("trace preservation, max |tr sigma - 1|", 0.0, trace_err, 1e-10),
            Claim("final states are density operators", True, bool(density_ok)),
            Claim("outcome probabilities sum to 1", 0.0, norm_err, 1e-10),
            Claim("outcome probabilities nonnegative", True, bool(min_prob >= -1e-10)),
            Claim("payoff pairs inside the PD hull", True, bool(hull_ok)),
        ]

    def gu_hull():
        rng = np.random.default_rng([cfg.seed, 5])
        us = qmath.haar_unitary(rng, 2 * samples)
        ok = all(eq._in_hull(hull, tuple(ewl.payoffs(game, ctx, st.Unitary(us[2 * k]), st.Unitary(us[2 * k + 1]))), 1e-9)
                 for k in range(samples))
        return [Claim(f"{samples} random GU payoff pairs inside the PD hull", True, bool(ok))]

    def conjugation():
        rng = np.random.default_rng([cfg.seed, 6])
        us = qmath.haar_unitary(rng, 2 * CONJUGATION_SAMPLES)
        worst = 0.0
        for k in range(CONJUGATION_SAMPLES):
            a, b = st.Unitary(us[2 * k]), st.Unitary(us[2 * k + 1])
            p = ewl.payoffs(game, ctx, a, b)
            q = ewl.payoffs(game, ctx, st.conjugate_by_q(a), st.conjugate_by_q(b))
            worst = max(worst, abs(p.p_a - q.p_a), abs(p.p_b - q.p_b))
        return [Claim(f"joint Q-conjugation payoff invariance, {CONJUGATION_SAMPLES} pairs", 0.0, worst, 1e-10)]

    def unital():
        rng = np.random.default_rng([cfg.seed, 7])
        worst = 0.0
        mixed_ok = True
        half = qmath.I2 / 2
        for _ in range(samples // 5):
            sigma = ewl.apply_strategies(ctx, random_mixture(rng), random_mixture(rng))
            for side in (ALICE, BOB):
                red = qmath.partial_trace(sigma, side)
                worst = max(worst, float(np.max(np.abs(red - half))))
                mixed_ok &= qmath.is_more_mixed(red, qmath.partial_trace(ctx.rho, side))
        return [
            Claim("mixtures leave reduced states at I/2", 0.0, worst, 1e-10),
            Claim("reduced states majorized by the initial reduced states", True, bool(mixed_ok)),
        ]

    def inclusion():
        rng = np.random.default_rng([cfg.seed, 8])
        worst = 0.0
        for _ in range(samples // 5):
            ta, tb = rng.uniform(0, math.pi, 2)
            fa, fb = rng.uniform(0, math.pi / 2, 2)
            chain_a = [st.u_one_param(ta), st.u_two_param(ta, 0.0), st.u_general(0.0, ta, 0.0)]
            chain_b = [st.u_one_param(tb), st.u_two_param(tb, 0.0), st.u_general(0.0, tb, 0.0)]
            chain_a.append(st.as_channel(chain_a[-1]))
            chain_b.append(st.as_channel(chain_b[-1]))
            ref = ewl.payoffs(game, ctx, chain_a[0], chain_b[0])
            for a, b in zip(chain_a[1:], chain_b[1:]):
                p = ewl.payoffs(game, ctx, a, b)
                worst = max(worst, abs(p.p_a - ref.p_a), abs(p.p_b - ref.p_b))
            tp_a, tp_b = st.u_two_param(ta, fa), st.u_two_param(tb, fb)
            ref = ewl.payoffs(game, ctx, tp_a, tp_b)
            for a, b in ((st.u_general(fa, ta, 0.0), st.u_general(fb, tb, 0.0)),
                         (st.as_channel(tp_a), st.as_channel(tp_b))):
                p = ewl.payoffs(game, ctx, a, b)
                worst = max(worst, abs(p.p_a - ref.p_a), abs(p.p_b - ref.p_b))
        return [Claim("set inclusion CL < TP < GU < CP preserves payoffs", 0.0, worst, EXACT_TOL)]

    groups = [states, gu_hull, conjugation, unital, inclusion]
    return _run("properties", groups, cfg, threads)


SUITES = {
    "pd": run_pd_suite,
    "chicken": run_chicken_suite,
    "properties": run_property_suite,
}
