r"""Expectation values and squeezed-state uncertainties.

Both ``<x>`` and ``<p>`` are linear in the initial data,

    <x> = x_o * A + p_o * B,      <p> = x_o * C + p_o * D,

where ``(A, B, C, D)`` is the classical propagator of the picture.  The
closed forms are written in the TO variables ``(S, L)`` with ``S = sqrt(v)``,
``L = ln v`` in TO and ``S = r^((1-a)/2)``, ``L = (1-a) ln r`` in TM
(``r = t/t_o``).  TQ position and momentum are the TM ones scaled by
``r^(a/2)`` and ``r^(-a/2)``.

Uncertainties of a squeezed coherent state with squeeze ``r e^{i theta}`` are

    dx2 = |f|^2 cosh 2r + Re(f^2 e^{-i theta}) sinh 2r

with ``f`` the picture's position function (``xi``, ``xi_hat``, ``Xi_P``), and
the same expression in the momentum function (``xi_dot``, ``xi_hat_dot``,
``Xi_X``) for ``dp2``.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import special
from .errors import DomainError
from .regimes import BClass, Params, Picture, Row, SystemKey, classify
from .timemaps import _check_offset, scaled_time, tprime_offset
from .tm_functions import _check_t, tm_xi
from .to_functions import _out, bessel_order, critical_delta, to_xi
from .tq_functions import tq_xi

__all__ = [
    "SqueezeState",
    "PhasePoint",
    "TracePoint",
    "propagator",
    "expval_x",
    "expval_p",
    "uncertainties",
    "mode_functions",
    "trace",
    "printed_tm_case1_uncertainties",
    "printed_tm_case1_product",
]


@dataclass(frozen=True)
class SqueezeState:
    """Initial data ``(x_o, p_o)`` and squeeze parameters ``(r, theta)``."""

    x_o: float
    p_o: float
    r: float = 0.0
    theta: float = 0.0

    def __post_init__(self):
        for name in ("x_o", "p_o", "r", "theta"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        if self.r < 0:
            raise ValueError(f"squeeze magnitude r must be >= 0, got {self.r!r}")

    @property
    def theta_reduced(self) -> float:
        return math.fmod(self.theta, 2.0 * math.pi) % (2.0 * math.pi)


@dataclass(frozen=True)
class PhasePoint:
    x: float
    p: float
    t: float


@dataclass(frozen=True)
class TracePoint:
    t: float
    x: float
    p: float
    dx: float
    dp: float
    product: float


def _bessel_prop(S, tau, tau0, mu, Q, t_o):
    J, Y = special.bessel_j, special.bessel_y
    j, y = J(mu, tau), Y(mu, tau)
    j1, y1 = J(mu - 1.0, tau), Y(mu - 1.0, tau)
    j0, y0 = J(mu, tau0), Y(mu, tau0)
    j10, y10 = J(mu - 1.0, tau0), Y(mu - 1.0, tau0)
    A = S * (0.5 * math.pi * tau0) * (j * y10 - y * j10)
    B = math.pi * t_o / Q * S * (y * j0 - j * y0)
    C = math.pi * Q / (4.0 * t_o) / S * tau * tau0 * (j1 * y10 - y1 * j10)
    D = (0.5 * math.pi * tau) / S * (y1 * j0 - j1 * y0)
    return A, B, C, D


def _critical_prop(S, L, p: Params, row: Row):
    one_a = 1.0 - p.a
    if row is Row.CRIT_EQ:
        A = S * (1.0 - 0.5 * L)
        B = p.t_o / one_a * S * L
        C = -(p.omega**2 * p.t_o / one_a) / S * L
        D = (1.0 + 0.5 * L) / S
        return A, B, C, D
    Dl = critical_delta(p)
    if row is Row.CRIT_LT:
        sn, cs = np.sinh(0.5 * Dl * L), np.cosh(0.5 * Dl * L)
    else:
        sn, cs = np.sin(0.5 * Dl * L), np.cos(0.5 * Dl * L)
    A = S / Dl * (Dl * cs - sn)
    B = 2.0 * p.t_o / (one_a * Dl) * S * sn
    C = -(2.0 * p.omega**2 * p.t_o / (one_a * Dl)) / S * sn
    D = (Dl * cs + sn) / (Dl * S)
    return A, B, C, D


def _to_vars(offset, p: Params, key: SystemKey):
    """``(S, L, tau, tau_o, mu, Q)`` for the TO rows at ``t' - t_o'``."""
    s = _check_offset(offset, p)
    if key.row in (Row.CASE1_GT, Row.CASE1_LT):
        Q = p.b + 1.0
        tau0 = 2.0 * p.omega * p.t_o / abs(Q)
        return np.ones_like(s), None, tau0 * np.exp(0.5 * Q * s / p.t_o), tau0, 0.0, Q
    if key.row is Row.SHO:
        return None, None, None, None, None, None
    v = scaled_time(s, p)
    L = np.log(v)
    S = np.sqrt(v)
    Q = p.b - p.a + 2.0
    if key.klass is BClass.CRITICAL:
        return S, L, None, None, None, Q
    q = Q / (1.0 - p.a)
    tau0 = 2.0 * p.omega * p.t_o / abs(Q)
    return S, L, tau0 * np.exp(0.5 * q * L), tau0, bessel_order(p), Q


def _tm_vars(t, p: Params, key: SystemKey):
    t = _check_t(t, p)
    lr = np.log(t / p.t_o)
    if key.row is Row.SHO:
        return None, None, None, None, None, None
    S = np.exp(0.5 * (1.0 - p.a) * lr)
    L = (1.0 - p.a) * lr
    Q = p.b - p.a + 2.0
    if key.klass is BClass.CRITICAL:
        return S, L, None, None, None, Q
    tau0 = 2.0 * p.omega * p.t_o / abs(Q)
    return S, L, tau0 * np.exp(0.5 * Q * lr), tau0, bessel_order(p), Q


def propagator(picture, p: Params, time, key: SystemKey | None = None):
    """Classical propagator ``(A, B, C, D)`` of the picture at ``time``.

    ``time`` is the offset ``t' - t_o'`` for TO and ``t`` for TM/TQ.
    """
    picture = Picture.parse(picture)
    key = classify(p, picture) if key is None else key
    if picture is Picture.TO:
        S, L, tau, tau0, mu, Q = _to_vars(time, p, key)
        s = np.asarray(time, dtype=float)
    else:
        S, L, tau, tau0, mu, Q = _tm_vars(time, p, key)
        s = tprime_offset(time, p)

    row = key.row
    if row is Row.SHO:
        w = p.omega
        cs, sn = np.cos(w * s), np.sin(w * s)
        A, B, C, D = cs, sn / w, -w * sn, cs
    elif row in (Row.CRIT_LT, Row.CRIT_EQ, Row.CRIT_GT):
        A, B, C, D = _critical_prop(S, L, p, row)
    else:
        A, B, C, D = _bessel_prop(S, tau, tau0, mu, Q, p.t_o)

    if picture is Picture.TQ:
        up = np.exp(0.5 * p.a * np.log(np.asarray(time, dtype=float) / p.t_o))
        A, B, C, D = A * up, B * up, C / up, D / up
    return tuple(_out(np.asarray(c, dtype=float)) for c in (A, B, C, D))


def expval_x(picture, p: Params, state: SqueezeState, time, key: SystemKey | None = None):
    """``<x>`` at ``time`` (offset for TO, ``t`` for TM/TQ)."""
    A, B, _, _ = propagator(picture, p, time, key)
    return _out(state.x_o * A + state.p_o * B)


def expval_p(picture, p: Params, state: SqueezeState, time, key: SystemKey | None = None):
    """``<p>`` at ``time`` (offset for TO, ``t`` for TM/TQ)."""
    _, _, C, D = propagator(picture, p, time, key)
    return _out(state.x_o * C + state.p_o * D)


def mode_functions(picture, p: Params, time, key: SystemKey | None = None):
    """Position/momentum mode functions of the picture."""
    picture = Picture.parse(picture)
    key = classify(p, picture) if key is None else key
    if picture is Picture.TO:
        return to_xi(time, p, key)
    if picture is Picture.TM:
        return tm_xi(time, p, key)
    return tq_xi(time, p, key)


def _spread(f, c2, s2, theta):
    return (f.real**2 + f.imag**2) * c2 + (f * f * np.exp(-1j * theta)).real * s2


def uncertainties(picture, p: Params, state: SqueezeState, time, key: SystemKey | None = None):
    """``(dx2, dp2, product)`` of the squeezed state at ``time``."""
    fx, fp = mode_functions(picture, p, time, key)
    fx, fp = np.asarray(fx), np.asarray(fp)
    c2, s2 = math.cosh(2.0 * state.r), math.sinh(2.0 * state.r)
    dx2 = _spread(fx, c2, s2, state.theta)
    dp2 = _spread(fp, c2, s2, state.theta)
    return _out(dx2), _out(dp2), _out(dx2 * dp2)


def _trace_chunk(picture, p, state, times, key):
    x = np.atleast_1d(expval_x(picture, p, state, times, key))
    pm = np.atleast_1d(expval_p(picture, p, state, times, key))
    dx2, dp2, prod = (np.atleast_1d(u) for u in uncertainties(picture, p, state, times, key))
    return x, pm, np.sqrt(dx2), np.sqrt(dp2), prod


def trace(picture, p: Params, state: SqueezeState, time_grid, workers: int = 1, chunk: int = 4096):
    """Evaluate ``<x>, <p>, dx, dp`` and the product ``dx2*dp2`` on a grid.

    The grid must be non-decreasing and inside the picture's domain.  With
    ``workers > 1`` chunks are evaluated concurrently; every value is computed
    elementwise so the result is identical to the sequential one.

    Returns
    -------
    list of TracePoint
    """
    picture = Picture.parse(picture)
    grid = np.atleast_1d(np.asarray(time_grid, dtype=float))
    if grid.ndim != 1 or grid.size == 0:
        raise DomainError("time grid must be a non-empty 1-d sequence")
    if np.any(np.diff(grid) < 0):
        raise DomainError("time grid must be monotone non-decreasing")
    key = classify(p, picture)
    pieces = [grid[i : i + chunk] for i in range(0, grid.size, chunk)]
    if workers > 1 and len(pieces) > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            parts = list(ex.map(lambda g: _trace_chunk(picture, p, state, g, key), pieces))
    else:
        parts = [_trace_chunk(picture, p, state, g, key) for g in pieces]
    cols = [np.concatenate([part[i] for part in parts]) for i in range(5)]
    return [TracePoint(float(t), *(float(c[i]) for c in cols)) for i, t in enumerate(grid)]


def printed_tm_case1_uncertainties(p: Params, state: SqueezeState, t):
    """The printed Bessel form of the TM ``a = 1, b != -1`` uncertainties.

    Kept only for comparison: it differs from :func:`uncertainties` by an
    overall factor 2 in ``dx2``, a factor ``sigma`` in ``dp2`` and in the
    ``sin theta`` cross term.
    """
    bp1 = p.b + 1.0
    sigma = 2.0 * p.omega * p.t_o / abs(bp1) * (np.asarray(t, dtype=float) / p.t_o) ** (0.5 * bp1)
    J, Y = special.bessel_j, special.bessel_y
    j0, y0, jm, ym = J(0.0, sigma), Y(0.0, sigma), J(-1.0, sigma), Y(-1.0, sigma)
    c2, s2 = math.cosh(2.0 * state.r), math.sinh(2.0 * state.r)
    ct, st = math.cos(state.theta), math.sin(state.theta)
    dx2 = math.pi * p.t_o / (4.0 * abs(bp1)) * (
        ((j0**2 - y0**2) * ct - j0 * y0 * st) * s2 + (j0**2 + y0**2) * c2
    )
    dp2 = math.pi * abs(bp1) / (8.0 * p.t_o) * sigma * (
        ((jm**2 - ym**2) * ct - jm * ym * st) * s2 + (jm**2 + ym**2) * c2
    )
    return _out(dx2), _out(dp2)


def printed_tm_case1_product(p: Params, state: SqueezeState, t):
    """The printed closed form of the uncertainty product (TM, ``a = 1``)."""
    bp1 = p.b + 1.0
    sigma = 2.0 * p.omega * p.t_o / abs(bp1) * (np.asarray(t, dtype=float) / p.t_o) ** (0.5 * bp1)
    J, Y = special.bessel_j, special.bessel_y
    j0, y0, jm, ym = J(0.0, sigma), Y(0.0, sigma), J(-1.0, sigma), Y(-1.0, sigma)
    c2, s2 = math.cosh(2.0 * state.r), math.sinh(2.0 * state.r)
    ct, st = math.cos(state.theta), math.sin(state.theta)
    inner = (jm * j0 + ym * y0) * c2 + ((j0 * jm - y0 * ym) * ct + (j0 * ym + y0 * jm) * st) * s2
    return _out(0.25 * (1.0 + math.pi**2 * sigma**2 / 4.0 * inner**2))
