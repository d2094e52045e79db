"""Fixed-step RK4 reference integrator.

All systems integrated here are linear, ``y' = A(t) y`` with a 2x2 matrix, so
the integrator propagates the fundamental matrix and applies it to the
initial data.  Between consecutive grid points the interval is split into
equal substeps no longer than ``IntegratorConfig.step`` so every grid point is
hit exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, DomainError
from .observables import PhasePoint
from .regimes import Params, Picture, tprime_domain
from .timemaps import g2

__all__ = [
    "IntegratorConfig",
    "integrate_gamma",
    "integrate_classical",
    "classical_arrays",
    "convergence_order",
    "wronskian",
    "suggest_step",
]


@dataclass(frozen=True)
class IntegratorConfig:
    step: float = 1e-4
    max_steps: int = 5_000_000
    tolerance_report: float = 1e-9
    check_halving: bool = True

    def __post_init__(self):
        if not (self.step > 0 and math.isfinite(self.step)):
            raise ValueError(f"step must be positive, got {self.step!r}")
        if self.max_steps < 1:
            raise ValueError("max_steps must be >= 1")


def _substeps(grid, step):
    """Stage start times and step sizes covering ``grid`` plus the grid indices hit."""
    starts, sizes, marks = [], [], [0]
    for lo, hi in zip(grid[:-1], grid[1:]):
        n = max(int(math.ceil((hi - lo) / step - 1e-9)), 1) if hi > lo else 0
        if n:
            h = (hi - lo) / n
            starts.append(lo + h * np.arange(n))
            sizes.append(np.full(n, h))
        marks.append(marks[-1] + n)
    if starts:
        return np.concatenate(starts), np.concatenate(sizes), marks
    return np.empty(0), np.empty(0), marks


def _propagate(coef, grid, step, max_steps):
    """Fundamental matrices at each grid point for ``y' = coef(t) y``.

    ``coef`` maps an array of times to ``(m11, m12, m21, m22)`` arrays.
    """
    t0, h, marks = _substeps(grid, step)
    if t0.size > max_steps:
        raise ConvergenceError(f"grid needs {t0.size} steps, above max_steps={max_steps}")
    a0 = [list(map(float, c)) for c in coef(t0)]
    am = [list(map(float, c)) for c in coef(t0 + 0.5 * h)]
    a1 = [list(map(float, c)) for c in coef(t0 + h)]
    out = np.empty((len(grid), 2, 2))
    # columns of the fundamental matrix: (u1, u2) and (w1, w2)
    u1, u2, w1, w2 = 1.0, 0.0, 0.0, 1.0
    out[0] = ((u1, w1), (u2, w2))
    hs = list(map(float, h))
    mark = 1
    while mark < len(marks) and marks[mark] == 0:  # repeated grid points at the start
        out[mark] = out[0]
        mark += 1
    for k in range(len(hs)):
        hk = hs[k]
        p11, p12, p21, p22 = a0[0][k], a0[1][k], a0[2][k], a0[3][k]
        q11, q12, q21, q22 = am[0][k], am[1][k], am[2][k], am[3][k]
        r11, r12, r21, r22 = a1[0][k], a1[1][k], a1[2][k], a1[3][k]
        res = []
        for y1, y2 in ((u1, u2), (w1, w2)):
            k11 = p11 * y1 + p12 * y2
            k12 = p21 * y1 + p22 * y2
            z1, z2 = y1 + 0.5 * hk * k11, y2 + 0.5 * hk * k12
            k21 = q11 * z1 + q12 * z2
            k22 = q21 * z1 + q22 * z2
            z1, z2 = y1 + 0.5 * hk * k21, y2 + 0.5 * hk * k22
            k31 = q11 * z1 + q12 * z2
            k32 = q21 * z1 + q22 * z2
            z1, z2 = y1 + hk * k31, y2 + hk * k32
            k41 = r11 * z1 + r12 * z2
            k42 = r21 * z1 + r22 * z2
            res.append(
                (
                    y1 + hk / 6.0 * (k11 + 2.0 * k21 + 2.0 * k31 + k41),
                    y2 + hk / 6.0 * (k12 + 2.0 * k22 + 2.0 * k32 + k42),
                )
            )
        (u1, u2), (w1, w2) = res
        while mark < len(marks) and marks[mark] == k + 1:
            out[mark] = ((u1, w1), (u2, w2))
            mark += 1
    while mark < len(marks):  # repeated grid points at the end
        out[mark] = out[mark - 1]
        mark += 1
    return out


def _solve(coef, grid, init, config: IntegratorConfig):
    grid = np.atleast_1d(np.asarray(grid, dtype=float))
    if grid.ndim != 1 or grid.size == 0:
        raise DomainError("grid must be a non-empty 1-d sequence")
    if np.any(np.diff(grid) < 0):
        raise DomainError("grid must be non-decreasing")
    phi = _propagate(coef, grid, config.step, config.max_steps)
    y0 = np.asarray(init)
    y = np.einsum("nij,j->ni", phi, y0)
    if config.check_halving and grid.size > 1:
        # compare fundamental matrices so the test does not depend on init
        half = _propagate(coef, grid[[0, -1]], 0.5 * config.step, 2 * config.max_steps)[-1]
        change = float(np.linalg.norm(half - phi[-1]) / np.linalg.norm(half))
        if change > config.tolerance_report:
            raise ConvergenceError(
                f"halving the step changes the endpoint by {change:.3e} (relative), "
                f"above tolerance_report={config.tolerance_report:g}; reduce step"
            )
    return y


def _check_tprime_grid(grid, p: Params):
    grid = np.atleast_1d(np.asarray(grid, dtype=float))
    dom = tprime_domain(p)
    if np.any(grid < dom.lower) or np.any(grid >= dom.upper):
        raise DomainError(
            f"grid [{float(grid.min())!r}, {float(grid.max())!r}] leaves the t'-t_o' domain "
            f"[{dom.lower}, {dom.upper})"
        )
    return grid


def integrate_gamma(p: Params, init, grid, config: IntegratorConfig | None = None):
    """Integrate ``gamma'' + 2 g2(t') gamma = 0`` on offsets ``grid`` (starting at ``grid[0]``).

    Parameters
    ----------
    init : (gamma, gamma_dot)
        Values at ``grid[0]``; complex values are supported.

    Returns
    -------
    gamma, gamma_dot : ndarray
    """
    config = config or IntegratorConfig()
    grid = _check_tprime_grid(grid, p)

    def coef(s):
        z = np.zeros_like(s)
        return z, z + 1.0, -2.0 * g2(s, p), z

    y = _solve(coef, grid, np.asarray(init, dtype=complex), config)
    if np.isrealobj(init) or not np.any(np.iscomplex(init)):
        y = y.real
    return y[:, 0], y[:, 1]


def _classical_coef(picture: Picture, p: Params):
    a, b, w, t_o = p.a, p.b, p.omega, p.t_o
    if picture is Picture.TO:
        def coef(s):
            z = np.zeros_like(s)
            return z, z + 1.0, -2.0 * g2(s, p), z
    elif picture is Picture.TM:
        def coef(t):
            lr = np.log(t / t_o)
            z = np.zeros_like(t)
            return z, np.exp(-a * lr), -(w**2) * np.exp(b * lr), z
    else:
        def coef(t):
            lr = np.log(t / t_o)
            drag = 0.5 * a / t
            return drag, np.ones_like(t), -(w**2) * np.exp((b - a) * lr), -drag
    return coef


def classical_arrays(picture, p: Params, init, grid, config: IntegratorConfig | None = None):
    """``(x, p)`` arrays of the picture's Hamilton equations on ``grid``.

    ``grid`` holds offsets ``t' - t_o'`` for TO and times ``t >= t_o`` for
    TM/TQ; integration starts at ``t_o`` (offset 0) with ``init = (x_o, p_o)``.
    """
    picture = Picture.parse(picture)
    config = config or IntegratorConfig()
    grid = np.atleast_1d(np.asarray(grid, dtype=float))
    if picture is Picture.TO:
        grid = _check_tprime_grid(grid, p)
        start = 0.0
    else:
        if np.any(grid < p.t_o) or np.any(~np.isfinite(grid)):
            raise DomainError(f"TM/TQ grid must satisfy t >= t_o = {p.t_o!r}")
        start = p.t_o
    full = np.concatenate(([start], grid))
    y = _solve(_classical_coef(picture, p), full, np.asarray(init, dtype=float), config)
    return y[1:, 0], y[1:, 1]


def integrate_classical(picture, p: Params, init, grid, config: IntegratorConfig | None = None):
    """RK4 phase-space trajectory as a list of :class:`PhasePoint`."""
    x, pm = classical_arrays(picture, p, init, grid, config)
    grid = np.atleast_1d(np.asarray(grid, dtype=float))
    return [PhasePoint(float(xi), float(pi), float(ti)) for xi, pi, ti in zip(x, pm, grid)]


def suggest_step(picture, p: Params, grid, per_radian: float = 0.004, cap: float = 1e-3) -> float:
    """Step giving at most ``per_radian`` of phase per step on ``grid``.

    The local rate is ``sqrt(|m12 m21|) + |m11|`` of the system matrix.
    """
    picture = Picture.parse(picture)
    grid = np.atleast_1d(np.asarray(grid, dtype=float))
    m11, m12, m21, _ = _classical_coef(picture, p)(np.linspace(grid.min(), grid.max(), 400))
    rate = float(np.max(np.sqrt(np.abs(m12 * m21)) + np.abs(m11)))
    return min(cap, per_radian / max(rate, 1e-300))


def wronskian(y1, y1_dot, y2, y2_dot):
    """``y1 y2' - y1' y2``."""
    return np.asarray(y1) * np.asarray(y2_dot) - np.asarray(y1_dot) * np.asarray(y2)


def convergence_order(p: Params, span: float, init=(1.0, 0.0), coarse_step: float = 0.01) -> float:
    """Observed order of RK4 on the gamma equation from three step sizes.

    Uses ``log2(|y_h - y_{h/2}| / |y_{h/2} - y_{h/4}|)`` at the endpoint ``span``.
    """
    grid = [0.0, span]
    ends = []
    for h in (coarse_step, coarse_step / 2, coarse_step / 4):
        cfg = IntegratorConfig(step=h, check_halving=False)
        g, gd = integrate_gamma(p, init, grid, cfg)
        ends.append(np.array([g[-1], gd[-1]]))
    e1 = np.max(np.abs(ends[0] - ends[1]))
    e2 = np.max(np.abs(ends[1] - ends[2]))
    return float(math.log2(e1 / e2))
