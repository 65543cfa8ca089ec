"""Box-bounded Nelder-Mead run in lockstep over many restarts, and the
parameter charts that map search coordinates to Kraus operators.

All objectives here are vectorized: they take an (R, n) array of points and
return R values, so one call advances every restart at once.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import strategies as st


_EPS = np.finfo(float).eps
_COEFFS = np.array([1.0, 2.0, 0.5, -0.5])


def reflect_into(x, lo, hi):
    """Mirror points back into [lo, hi] (triangle-wave folding)."""
    width = hi - lo
    y = np.mod(x - lo, 2 * width)
    y = np.where(y > width, 2 * width - y, y)
    return lo + y


def nelder_mead_batch(f, x0, lo, hi, max_iter=500, step=0.1, xtol=1e-10, ftol=1e-16):
    """Minimize ``f`` from every row of ``x0`` simultaneously.

    Returns (x_best, f_best) with one row per start. Trial points are folded
    into the box by reflection at the bounds.
    """
    x0 = np.atleast_2d(np.asarray(x0, dtype=float))
    r, n = x0.shape
    lo = np.broadcast_to(np.asarray(lo, dtype=float), (n,))
    hi = np.broadcast_to(np.asarray(hi, dtype=float), (n,))
    scale = step * (hi - lo)

    simplex = np.repeat(x0[:, None, :], n + 1, axis=1)
    for i in range(n):
        simplex[:, i + 1, i] += scale[i]
    simplex = reflect_into(simplex, lo, hi)
    fs = f(simplex.reshape(-1, n)).reshape(r, n + 1)
    active = np.ones(r, dtype=bool)

    for _ in range(max_iter):
        idx = np.flatnonzero(active)
        order = np.argsort(fs[idx], axis=1, kind="stable")
        s = np.take_along_axis(simplex[idx], order[:, :, None], axis=1)
        fv = np.take_along_axis(fs[idx], order, axis=1)

        spread_f = fv[:, -1] - fv[:, 0]
        spread_x = np.max(np.abs(s[:, 1:] - s[:, :1]), axis=(1, 2))
        # values near the optimum differ by rounding only, so allow a few ulps
        done = (spread_f <= ftol + 4 * _EPS * np.abs(fv[:, 0])) & (spread_x <= xtol)
        simplex[idx], fs[idx] = s, fv
        if done.any():
            active[idx[done]] = False
            keep = ~done
            idx, s, fv = idx[keep], s[keep], fv[keep]
        if not len(idx):
            break
        best, worst = fv[:, 0], fv[:, -1]
        second = fv[:, -2]
        centroid = s[:, :-1].mean(axis=1)
        xw = s[:, -1]

        # reflection, expansion, outside and inside contraction in one batch
        trial = reflect_into(centroid + _COEFFS[:, None, None] * (centroid - xw), lo, hi)
        xr, xe, xoc, xic = trial
        fr, fe, foc, fic = f(trial.reshape(-1, n)).reshape(4, -1)

        new_x = xw.copy()
        new_f = worst.copy()
        shrink = np.zeros(len(idx), dtype=bool)

        use_e = (fr < best) & (fe < fr)
        use_r = ((fr < best) & ~use_e) | ((fr >= best) & (fr < second))
        outside = (fr >= second) & (fr < worst)
        inside = fr >= worst
        use_oc = outside & (foc <= fr)
        use_ic = inside & (fic < worst)
        shrink = (outside & ~use_oc) | (inside & ~use_ic)

        for mask, xs, fvals in ((use_e, xe, fe), (use_r, xr, fr), (use_oc, xoc, foc), (use_ic, xic, fic)):
            new_x[mask] = xs[mask]
            new_f[mask] = fvals[mask]
        s[:, -1] = new_x
        fv[:, -1] = new_f

        if shrink.any():
            si = np.flatnonzero(shrink)
            shrunk = reflect_into(s[si, :1] + 0.5 * (s[si, 1:] - s[si, :1]), lo, hi)
            s[si, 1:] = shrunk
            fv[si, 1:] = f(shrunk.reshape(-1, n)).reshape(len(si), n)

        simplex[idx] = s
        fs[idx] = fv

    k = np.argmin(fs, axis=1)
    rows = np.arange(r)
    return simplex[rows, k], fs[rows, k]


@dataclass(frozen=True)
class Chart:
    """A strategy set's search coordinates."""

    tag: st.StrategySet
    lo: np.ndarray
    hi: np.ndarray

    @property
    def dim(self):
        return len(self.lo)

    def kraus(self, x):
        """Kraus operators, shape (R, k, 2, 2), for an (R, dim) batch."""
        x = np.atleast_2d(x)
        if self.tag is st.StrategySet.CL:
            return _one_param_batch(x[:, 0])[:, None]
        if self.tag is st.StrategySet.TP:
            return _two_param_batch(x[:, 0], x[:, 1])[:, None]
        if self.tag is st.StrategySet.GU:
            return _general_batch(x[:, 0], x[:, 1], x[:, 2])[:, None]
        return stiefel_kraus(x)

    def strategy(self, x):
        x = np.asarray(x, dtype=float)
        if self.tag is st.StrategySet.CL:
            return st.u_one_param(float(x[0]))
        if self.tag is st.StrategySet.TP:
            return st.u_two_param(float(x[0]), float(x[1]))
        if self.tag is st.StrategySet.GU:
            return st.u_general(float(x[0]), float(x[1]), float(x[2]))
        return st.Channel(stiefel_kraus(x[None])[0])

    def grid(self, points):
        axes = [np.linspace(l, h, points) for l, h in zip(self.lo, self.hi)]
        mesh = np.meshgrid(*axes, indexing="ij")
        return np.stack([m.ravel() for m in mesh], axis=1)


CP_RANK = 4


def chart(tag):
    tag = st.StrategySet(tag)
    if tag is st.StrategySet.CL:
        return Chart(tag, np.array([0.0]), np.array([math.pi]))
    if tag is st.StrategySet.TP:
        return Chart(tag, np.array([0.0, 0.0]), np.array([math.pi, math.pi / 2]))
    if tag is st.StrategySet.GU:
        return Chart(tag, np.array([0.0, 0.0, 0.0]), np.array([2 * math.pi, math.pi, 2 * math.pi]))
    n = 4 * CP_RANK * 2
    return Chart(tag, -np.ones(n), np.ones(n))


def _one_param_batch(theta):
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    u = np.empty((len(theta), 2, 2), dtype=complex)
    u[:, 0, 0], u[:, 0, 1], u[:, 1, 0], u[:, 1, 1] = c, s, -s, c
    return u


def _two_param_batch(theta, phi):
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    u = np.empty((len(theta), 2, 2), dtype=complex)
    u[:, 0, 0] = np.exp(1j * phi) * c
    u[:, 0, 1] = s
    u[:, 1, 0] = -s
    u[:, 1, 1] = np.exp(-1j * phi) * c
    return u


def _general_batch(alpha, theta, gamma):
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    u = np.empty((len(theta), 2, 2), dtype=complex)
    u[:, 0, 0] = np.exp(1j * alpha) * c
    u[:, 0, 1] = np.exp(1j * gamma) * s
    u[:, 1, 0] = -np.exp(-1j * gamma) * s
    u[:, 1, 1] = np.exp(-1j * alpha) * c
    return u


def stiefel_kraus(x):
    """Orthonormalize four stacked 2x2 complex blocks into a Kraus set.

    Each row of ``x`` holds 32 reals: the real and imaginary parts of an
    8x2 matrix V. Its Q factor W satisfies W^dag W = I, so the 2x2 blocks of
    W form a trace-preserving channel of rank at most four.
    """
    x = np.atleast_2d(x)
    half = x.shape[1] // 2
    v = (x[:, :half] + 1j * x[:, half:]).reshape(-1, 2 * CP_RANK, 2)
    q, r = np.linalg.qr(v)
    d = np.diagonal(r, axis1=1, axis2=2)
    phase = np.where(np.abs(d) > 0, d / np.where(np.abs(d) > 0, np.abs(d), 1), 1)
    q = q * phase[:, None, :]
    return q.reshape(-1, CP_RANK, 2, 2)


def kraus_to_stiefel(kraus):
    """Chart coordinates reproducing a Kraus set of at most four operators."""
    k = np.zeros((CP_RANK, 2, 2), dtype=complex)
    ops = np.asarray(kraus)
    k[: len(ops)] = ops
    v = k.reshape(2 * CP_RANK, 2)
    return np.concatenate([v.real.ravel(), v.imag.ravel()])
