"""Randomised invariant checks shared by the CLI ``verify`` command and the tests.

Parameters are drawn per regime from a seeded :class:`numpy.random.Generator`
(PCG64 bit generator), so a given ``seed``/``samples`` pair always checks the
same systems.  Draws are kept away from numerically hostile corners: Bessel
orders ``|mu| <= 3``, Bessel arguments in ``[0.3, 60]`` over the window, and
``v >= 0.1`` on the TO window.

Every suite returns a :class:`SuiteResult` made of :class:`Check` rows.
Tolerances are multiplied by the environment variable ``TDSOLVE_TOL``
(default 1).  Checks flagged ``informational`` are reported but never fail.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field

import numpy as np

from . import special
from .lie import algebra_residuals, build_generators, jacobi_residual
from .observables import (
    SqueezeState,
    expval_p,
    expval_x,
    mode_functions,
    printed_tm_case1_product,
    printed_tm_case1_uncertainties,
    propagator,
    trace,
    uncertainties,
)
from .oracle import IntegratorConfig, classical_arrays, convergence_order, integrate_gamma, suggest_step
from .regimes import Params, Picture, Row, classify
from .timemaps import g2, nu, t_from_tprime, tprime_offset
from .tm_functions import tm_phi, tm_xi
from .to_functions import bessel_order, to_phi, to_xi
from .tq_functions import tq_xi

__all__ = [
    "REGIMES",
    "SUITES",
    "Sample",
    "Check",
    "SuiteResult",
    "draw_samples",
    "run",
    "tolerance_scale",
    "zero_crossings",
    "segment_maxima",
]

REGIMES = (
    "case1_gt", "case1_lt", "sho", "bessel_gt", "bessel_lt",
    "crit_lt", "crit_eq", "crit_gt", "special",
)
PICTURES = (Picture.TO, Picture.TM, Picture.TQ)
TO_SPAN = 3.0


def tolerance_scale() -> float:
    raw = os.environ.get("TDSOLVE_TOL", "1.0")
    try:
        value = float(raw)
    except ValueError:
        raise ValueError(f"TDSOLVE_TOL must be a positive number, got {raw!r}") from None
    if not value > 0:
        raise ValueError(f"TDSOLVE_TOL must be a positive number, got {raw!r}")
    return value


@dataclass(frozen=True)
class Sample:
    regime: str
    params: Params
    to_span: float
    tm_end: float

    def times(self, picture: Picture, n: int, start_inside: bool = False) -> np.ndarray:
        """``n`` evenly spaced times of the picture's window."""
        if picture is Picture.TO:
            lo, hi = 0.0, self.to_span
        else:
            lo, hi = self.params.t_o, self.tm_end
        grid = np.linspace(lo, hi, n + 1 if start_inside else n)
        return grid[1:] if start_inside else grid

    def label(self, picture: Picture) -> str:
        key = classify(self.params, picture)
        return f"{picture.value}{key.key}" + ("[b=-a]" if key.special and key.row is not Row.SHO else "")


@dataclass(frozen=True)
class Check:
    suite: str
    regime: str
    metric: str
    residual: float
    tolerance: float
    informational: bool = False
    note: str = ""

    @property
    def passed(self) -> bool:
        return self.informational or bool(self.residual <= self.tolerance)


@dataclass
class SuiteResult:
    name: str
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, regime, metric, residual, tolerance, informational=False, note=""):
        self.checks.append(
            Check(self.name, regime, metric, float(residual), float(tolerance), informational, note)
        )

    def summary(self) -> list[tuple[str, str, float, float, bool]]:
        """Worst residual per ``(regime, metric)``."""
        worst: dict[tuple[str, str], Check] = {}
        for c in self.checks:
            k = (c.regime, c.metric)
            if k not in worst or c.residual > worst[k].residual or not c.passed:
                if k in worst and not worst[k].passed and c.passed:
                    continue
                worst[k] = c
        return [(c.regime, c.metric, c.residual, c.tolerance, c.passed) for c in worst.values()]


# ---------------------------------------------------------------- sampling


def _bessel_ok(p: Params, row: Row, span: float) -> bool:
    s = np.linspace(0.0, span, 200)
    if row in (Row.CASE1_GT, Row.CASE1_LT):
        bp1 = p.b + 1.0
        z = 2.0 * p.omega * p.t_o / abs(bp1) * np.exp(bp1 * s / (2.0 * p.t_o))
    elif row in (Row.BESSEL_GT, Row.BESSEL_LT):
        if abs(bessel_order(p)) > 3.0:
            return False
        Q = p.b - p.a + 2.0
        v = 1.0 + (1.0 - p.a) * s / p.t_o
        z = 2.0 * p.omega * p.t_o / abs(Q) * v ** (0.5 * Q / (1.0 - p.a))
    else:
        return True
    return bool(z.min() >= 0.3 and z.max() <= 60.0)


def _draw(rng: np.random.Generator, regime: str) -> Sample:
    for _ in range(10_000):
        t_o = rng.uniform(0.5, 2.0)
        omega = rng.uniform(0.5, 2.0)
        if regime in ("case1_gt", "case1_lt", "sho"):
            a = 1.0
            b = {"case1_gt": rng.uniform(-0.7, 1.5), "case1_lt": rng.uniform(-3.0, -1.3), "sho": -1.0}[regime]
        else:
            a = rng.uniform(-2.0, 3.0)
            if abs(a) < 0.2 or abs(1.0 - a) < 0.2:
                continue
            if a > 1.0:
                t_o = max(t_o, 3.5 * (a - 1.0))
            if regime == "bessel_gt":
                b = a - 2.0 + rng.uniform(0.3, 3.0)
            elif regime == "bessel_lt":
                b = a - 2.0 - rng.uniform(0.3, 3.0)
            elif regime == "special":
                b = -a
                if abs(2.0 - 2.0 * a) < 0.3:
                    continue
            else:
                b = a - 2.0
                k = {"crit_lt": rng.uniform(0.2, 0.8), "crit_eq": 1.0, "crit_gt": rng.uniform(1.3, 4.0)}[regime]
                omega = k * abs(1.0 - a) / (2.0 * t_o)
        p = Params(a, b, omega, t_o)
        key = classify(p, Picture.TO)
        expected = regime if regime != "special" else None
        if expected is not None and key.row.value != expected:
            continue
        if regime == "special" and not key.special:
            continue
        if not _bessel_ok(p, key.row, TO_SPAN):
            continue
        tm_end = min(float(t_from_tprime(TO_SPAN, p)), 4.0 * t_o)
        return Sample(regime, p, TO_SPAN, tm_end)
    raise RuntimeError(f"could not draw parameters for regime {regime!r}")


def draw_samples(seed: int, samples: int, regimes=REGIMES) -> list[Sample]:
    """``samples`` draws per regime from ``numpy.random.default_rng(seed)`` (PCG64)."""
    if samples < 1:
        raise ValueError("samples must be >= 1")
    rng = np.random.default_rng(seed)
    return [_draw(rng, r) for _ in range(samples) for r in regimes]


def _rel(x, ref, floor=1.0) -> float:
    x, ref = np.asarray(x), np.asarray(ref)
    scale = max(float(np.max(np.abs(ref))), floor)
    return float(np.max(np.abs(x - ref))) / scale


# ---------------------------------------------------------------- suites


def suite_wronskian(samples, rng, tol):
    res = SuiteResult("wronskian")
    for smp in samples:
        for pic in PICTURES:
            fx, fp = mode_functions(pic, smp.params, smp.times(pic, 100))
            w = fx * np.conj(fp) - fp * np.conj(fx)
            res.add(smp.label(pic), "|W+i|", np.max(np.abs(w + 1j)), 1e-8 * tol)
    return res


def suite_ode(samples, rng, tol):
    res = SuiteResult("ode")
    measured = set()
    for smp in samples:
        p = smp.params
        grid = smp.times(Picture.TO, 31)
        cfg = IntegratorConfig(step=suggest_step(Picture.TO, p, grid))
        xi0, xd0 = to_xi(0.0, p)
        g, gd = integrate_gamma(p, (xi0, xd0), grid, cfg)
        xi, xd = to_xi(grid, p)
        label = smp.label(Picture.TO)
        res.add(label, "xi vs RK4", max(_rel(xi, g, 0.0), _rel(xd, gd, 0.0)), 1e-7 * tol)
        if smp.regime not in measured:
            measured.add(smp.regime)
            wmax = float(np.sqrt(2.0 * np.max(g2(grid, p))))
            order = convergence_order(p, 1.0, init=(1.0, 0.0), coarse_step=min(0.02, 0.25 / wmax))
            res.add(label, "RK4 order-4", abs(order - 4.0), 0.3)
    return res


def suite_composition(samples, rng, tol):
    res = SuiteResult("composition")
    for smp in samples:
        p = smp.params
        t = np.sort(rng.uniform(p.t_o, smp.tm_end, 50))
        s = tprime_offset(t, p)
        a, ad = to_xi(s, p)
        b, bd = tm_xi(t, p)
        res.add(smp.label(Picture.TM), "xi_hat = xi o t'", max(_rel(b, a), _rel(bd, ad)), 1e-9 * tol)
        ph = to_phi(s, p)[2:]
        th = tm_phi(t, p)
        res.add(smp.label(Picture.TM), "phi3_hat = phi3 o t'", max(_rel(x, y) for x, y in zip(th, ph)), 1e-9 * tol)
        xp, xx = tq_xi(t, p)
        e = np.exp(nu(t, p))
        res.add(smp.label(Picture.TQ), "Xi_P = xi_hat e^nu", _rel(xp, b * e), 1e-9 * tol)
        res.add(smp.label(Picture.TQ), "Xi_X = xi_hat_dot e^-nu", _rel(xx, bd / e), 1e-9 * tol)
    return res


def _hamilton_rhs(pic, p, time, x, pm):
    if pic is Picture.TO:
        return pm, -2.0 * g2(time, p) * x
    r = time / p.t_o
    if pic is Picture.TM:
        return r ** (-p.a) * pm, -(p.omega**2) * r**p.b * x
    drag = 0.5 * p.a / time
    return pm + drag * x, -(p.omega**2) * r ** (p.b - p.a) * x - drag * pm


def suite_classical(samples, rng, tol):
    res = SuiteResult("classical")
    for smp in samples:
        p = smp.params
        st = SqueezeState(rng.uniform(-2, 2), rng.uniform(-2, 2))
        for pic in PICTURES:
            label = smp.label(pic)
            grid = smp.times(pic, 21)
            inner = grid[1:-1]
            h = 1e-5 * (grid[-1] - grid[0])
            x = expval_x(pic, p, st, inner)
            pm = expval_p(pic, p, st, inner)
            dx = (expval_x(pic, p, st, inner + h) - expval_x(pic, p, st, inner - h)) / (2 * h)
            dp = (expval_p(pic, p, st, inner + h) - expval_p(pic, p, st, inner - h)) / (2 * h)
            fx, fp = _hamilton_rhs(pic, p, inner, x, pm)
            res.add(label, "Hamilton eqs (FD)", max(_rel(dx, fx), _rel(dp, fp)), 1e-6 * tol)
            cfg = IntegratorConfig(step=suggest_step(pic, p, grid))
            X, P = classical_arrays(pic, p, (st.x_o, st.p_o), grid, cfg)
            res.add(
                label,
                "vs RK4",
                max(_rel(expval_x(pic, p, st, grid), X), _rel(expval_p(pic, p, st, grid), P)),
                1e-7 * tol,
            )
    return res


def suite_initial(samples, rng, tol):
    res = SuiteResult("initial")
    for smp in samples:
        p = smp.params
        st = SqueezeState(rng.uniform(-3, 3), rng.uniform(-3, 3))
        scale = max(1.0, abs(st.x_o), abs(st.p_o))
        for pic in PICTURES:
            t0 = 0.0 if pic is Picture.TO else p.t_o
            err = max(abs(expval_x(pic, p, st, t0) - st.x_o), abs(expval_p(pic, p, st, t0) - st.p_o))
            res.add(smp.label(pic), "<x>,<p> at t_o", err / scale, 1e-12 * tol)
    return res


def suite_commutators(samples, rng, tol):
    res = SuiteResult("commutators")
    for smp in samples:
        for pic in PICTURES:
            gens = build_generators(pic, smp.params)
            label = smp.label(pic)
            ts = smp.times(pic, 20, start_inside=True)
            ts = ts - 0.5 * (ts[1] - ts[0])  # strictly interior
            off = on = 0.0
            for t in ts:
                r = algebra_residuals(gens, float(t))
                off = max(off, max(v["off_shell"] for v in r.values()))
                on = max(on, max(v["on_shell"] for v in r.values()))
            res.add(label, "os(1) off-shell", off, 1e-7 * tol)
            res.add(label, "os(1) modulo S", on, 1e-7 * tol)
            jac = max(jacobi_residual(gens.M, gens.J_minus, gens.J_plus, float(t)) for t in ts[::7])
            res.add(label, "Jacobi", jac, 1e-6 * tol)
    return res


def suite_uncertainty(samples, rng, tol):
    res = SuiteResult("uncertainty")
    for smp in samples:
        p = smp.params
        st = SqueezeState(1.0, 1.0, rng.uniform(0.0, 1.5), rng.uniform(0.0, 2 * math.pi))
        for pic in PICTURES:
            label = smp.label(pic)
            ts = smp.times(pic, 25)
            _, _, prod = uncertainties(pic, p, st, ts)
            res.add(label, "1/4 - product", max(0.0, 0.25 - float(np.min(prod))), 1e-12 * tol)
            coh = SqueezeState(1.0, 1.0, 0.0, 0.0)
            coh2 = SqueezeState(1.0, 1.0, 0.0, rng.uniform(0.0, 2 * math.pi))
            dx2, dp2, _ = uncertainties(pic, p, coh, ts)
            fx, fp = mode_functions(pic, p, ts)
            err = max(_rel(dx2, np.abs(fx) ** 2), _rel(dp2, np.abs(fp) ** 2))
            res.add(label, "r=0 gives |f|^2", err, 1e-10 * tol)
            other = uncertainties(pic, p, coh2, ts)
            res.add(label, "r=0 theta-free", max(_rel(other[0], dx2), _rel(other[1], dp2)), 1e-12 * tol)
            if pic is Picture.TO and smp.regime == "sho":
                _, _, pr = uncertainties(pic, p, coh, ts)
                res.add(label, "coherent product = 1/4", float(np.max(np.abs(pr - 0.25))), 1e-10 * tol)
            if pic is Picture.TM and smp.regime == "case1_gt":
                _, _, pr = uncertainties(pic, p, st, ts)
                printed = printed_tm_case1_product(p, st, ts)
                res.add(label, "product vs printed product form", _rel(pr, printed), 1e-10 * tol)
                dx2s, dp2s, _ = uncertainties(pic, p, st, ts)
                px, pp = printed_tm_case1_uncertainties(p, st, ts)
                res.add(
                    label,
                    "dx2,dp2 vs printed Bessel form",
                    max(_rel(dx2s, px), _rel(dp2s, pp)),
                    0.0,
                    informational=True,
                    note="expected discrepancy: printed form has dx2 halved, dp2 missing a factor sigma "
                    "and a -J0Y0 sin(theta) cross term instead of +2J0Y0 sin(theta)",
                )
    return res


def zero_crossings(values) -> np.ndarray:
    """Indices ``i`` with a sign change between ``values[i]`` and ``values[i+1]``."""
    v = np.asarray(values)
    return np.nonzero(np.signbit(v[:-1]) != np.signbit(v[1:]))[0]


def segment_maxima(values) -> np.ndarray:
    """Max ``|values|`` on each complete segment between consecutive zero crossings."""
    v = np.abs(np.asarray(values))
    idx = zero_crossings(values)
    return np.array([v[i + 1 : j + 1].max() for i, j in zip(idx[:-1], idx[1:])])


def figure_traces(b: float, points: int = 20001):
    p = Params(1.0, b, 2.0, 1.0)
    t = np.linspace(1.0, 50.0, points)
    st = SqueezeState(1.0, 1.0)
    return t, expval_x(Picture.TM, p, st, t), expval_p(Picture.TM, p, st, t)


def suite_figures(samples, rng, tol):
    res = SuiteResult("figures")
    counts = {}
    for b in (-0.5, 1.0):
        t, x, _ = figure_traces(b)
        counts[b] = len(zero_crossings(x))
        peaks = segment_maxima(x)
        rises = np.diff(peaks)
        res.add(f"TM{{1;b={b:g}}}", "envelope increase", max(0.0, float(rises.max(initial=0.0))), 1e-12)
    res.add(
        "TM{1;b=1 vs b=-0.5}",
        "crossings(b=1) > crossings(b=-0.5)",
        0.0 if counts[1.0] > counts[-0.5] else 1.0,
        0.0,
        note=f"crossings: b=1 -> {counts[1.0]}, b=-0.5 -> {counts[-0.5]}",
    )
    pts = trace(Picture.TM, Params(1.0, 1.0, 2.0, 1.0), SqueezeState(1.0, 1.0), np.linspace(1.0, 50.0, 2001))
    finite = all(math.isfinite(q.x) and math.isfinite(q.p) and math.isfinite(q.product) for q in pts)
    res.add("TM{1;b=1}", "phase-space export finite", 0.0 if finite else 1.0, 0.0)
    return res


def suite_special(samples, rng, tol):
    res = SuiteResult("special")
    n = max(50, 20 * len(samples) // len(REGIMES))
    mu = rng.uniform(-30.0, 30.0, n)
    z = np.exp(rng.uniform(math.log(0.1), math.log(1e4), n))
    J, Y, H1, H2 = special.bessel_j, special.bessel_y, special.hankel1, special.hankel2
    d = special.bessel_derivative

    def rel(lhs, rhs, *scale):
        s = np.maximum.reduce([np.abs(np.asarray(x)) for x in scale] + [np.abs(np.asarray(rhs))])
        return float(np.max(np.abs(lhs - rhs) / s))

    w = 2.0 / (math.pi * z)
    jy = J(mu, z) * d(mu, z, "Y") - d(mu, z, "J") * Y(mu, z)
    res.add("Bessel", "W(J,Y) = 2/(pi z)", rel(jy, w, J(mu, z) * d(mu, z, "Y"), d(mu, z, "J") * Y(mu, z)), 1e-8 * tol)
    hh = H1(mu, z) * d(mu, z, "H2") - d(mu, z, "H1") * H2(mu, z)
    res.add("Hankel", "W(H1,H2) = -4i/(pi z)", rel(hh, -2j * w, H1(mu, z) * d(mu, z, "H2")), 1e-8 * tol)
    for kind in special.KINDS:
        f = lambda m: special.bessel(kind, m, z)  # noqa: E731
        res.add(kind, "F(mu-1)+F(mu+1) = 2mu/z F(mu)", rel(f(mu - 1) + f(mu + 1), 2 * mu / z * f(mu), f(mu - 1), f(mu + 1)), 1e-8 * tol)
        res.add(kind, "2F' = F(mu-1) - F(mu+1)", rel(2 * d(mu, z, kind), f(mu - 1) - f(mu + 1), f(mu - 1), f(mu + 1)), 1e-8 * tol)
    cross = J(mu, z) * Y(mu - 1, z) - J(mu - 1, z) * Y(mu, z)
    res.add("Bessel", "J(mu)Y(mu-1) - J(mu-1)Y(mu) = 2/(pi z)", rel(cross, w, J(mu, z) * Y(mu - 1, z)), 1e-8 * tol)
    hx = H1(mu, z) * H2(mu - 1, z) - H1(mu - 1, z) * H2(mu, z)
    res.add("Hankel", "H1(mu)H2(mu-1) - H1(mu-1)H2(mu) = -4i/(pi z)", rel(hx, -2j * w, H1(mu, z) * H2(mu - 1, z)), 1e-8 * tol)
    zz = np.exp(rng.uniform(math.log(0.01), math.log(1e3), 200))
    half = -1j * np.sqrt(2.0 / (math.pi * zz)) * np.exp(1j * zz)
    res.add("Hankel", "H1(1/2) closed form", rel(H1(0.5, zz), half), 1e-10 * tol)
    res.add("Hankel", "H1(-1/2) closed form", rel(H1(-0.5, zz), 1j * half), 1e-10 * tol)
    return res


SUITES = {
    "wronskian": suite_wronskian,
    "ode": suite_ode,
    "composition": suite_composition,
    "classical": suite_classical,
    "initial": suite_initial,
    "commutators": suite_commutators,
    "uncertainty": suite_uncertainty,
    "figures": suite_figures,
    "special": suite_special,
}


def run(seed: int = 42, samples: int = 3, suites=None) -> list[SuiteResult]:
    """Run the selected suites (all by default) and return their results."""
    names = list(SUITES) if not suites else list(suites)
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise ValueError(f"unknown suite(s) {unknown}; choose from {sorted(SUITES)}")
    tol = tolerance_scale()
    drawn = draw_samples(seed, samples)
    out = []
    for i, name in enumerate(names):
        rng = np.random.default_rng([seed, i])
        out.append(SUITES[name](drawn, rng, tol))
    return out
