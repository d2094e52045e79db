import math

import numpy as np
import pytest
from conftest import SYSTEMS

from tdsolve.errors import ConvergenceError, DomainError
from tdsolve.observables import SqueezeState, expval_p, expval_x
from tdsolve.oracle import (
    IntegratorConfig,
    classical_arrays,
    convergence_order,
    integrate_classical,
    integrate_gamma,
    suggest_step,
    wronskian,
)
from tdsolve.regimes import Params
from tdsolve.timemaps import t_from_tprime, tprime_offset
from tdsolve.to_functions import to_xi


def test_oscillator_is_cosine_over_one_period():
    w = 2.5
    p = Params(1, -1, w, 1.0)
    grid = np.linspace(0, 2 * math.pi / w, 50)
    g, gd = integrate_gamma(p, (1.0, 0.0), grid)
    assert np.max(np.abs(g - np.cos(w * grid))) < 1e-8
    assert np.max(np.abs(gd + w * np.sin(w * grid))) < 1e-8


@pytest.mark.parametrize("name", ["case1_gt", "bessel_gt", "bessel_lt", "crit_lt", "special"])
def test_wronskian_drift(name):
    p = SYSTEMS[name]
    grid = np.linspace(0, 2.0, 41)
    y1, d1 = integrate_gamma(p, (1.0, 0.0), grid)
    y2, d2 = integrate_gamma(p, (0.0, 1.0), grid)
    assert np.max(np.abs(wronskian(y1, d1, y2, d2) - 1.0)) < 1e-9 * 2.0


def test_matches_closed_form_mode_function():
    p = Params(1, 1, 2, 1)
    grid = np.linspace(0, 3, 61)
    xi0, xid0 = to_xi(0.0, p)
    g, gd = integrate_gamma(p, (xi0, xid0), grid, IntegratorConfig(step=suggest_step("TO", p, grid)))
    xi, xid = to_xi(grid, p)
    assert np.iscomplexobj(g)
    assert np.max(np.abs(g - xi)) < 1e-7
    assert np.max(np.abs(gd - xid)) < 1e-7


@pytest.mark.parametrize("name", ["case1_gt", "bessel_gt", "special"])
def test_convergence_order_is_four(name):
    order = convergence_order(SYSTEMS[name], 2.0)
    assert 3.7 <= order <= 4.3


@pytest.mark.parametrize("picture", ["TO", "TM", "TQ"])
def test_start_point_returns_initial_data(picture):
    p = Params(0.5, 1, 1, 2)
    start = 0.0 if picture == "TO" else p.t_o
    (pt,) = integrate_classical(picture, p, (0.3, -1.2), [start])
    assert (pt.x, pt.p, pt.t) == (0.3, -1.2, start)


def test_repeated_leading_points_are_filled():
    p = Params(0.5, 1, 1, 2)
    x, pm = classical_arrays("TM", p, (0.3, -1.2), [2.0, 2.0, 2.5])
    assert x[0] == x[1] == 0.3 and pm[0] == pm[1] == -1.2


def test_tm_oscillator_orbit():
    p = Params(1, -1, 2, 1)
    t = np.linspace(1, 6, 26)
    x, pm = classical_arrays("TM", p, (1.0, 0.5), t)
    st_ = SqueezeState(1.0, 0.5)
    assert np.max(np.abs(x - expval_x("TM", p, st_, t))) < 1e-7
    # closed orbit in (x, p / omega)
    assert np.allclose(x**2 + (pm / 2) ** 2, 1.0 + 0.25**2, atol=1e-7)


def test_tq_critical_over_ten_initial_times():
    p = SYSTEMS["crit_gt"]
    t = np.linspace(p.t_o, 10 * p.t_o, 37)
    x, pm = classical_arrays("TQ", p, (0.7, 0.2), t, IntegratorConfig(step=suggest_step("TQ", p, t)))
    st_ = SqueezeState(0.7, 0.2)
    assert np.max(np.abs(x - expval_x("TQ", p, st_, t))) < 1e-7
    assert np.max(np.abs(pm - expval_p("TQ", p, st_, t))) < 1e-7


def test_pictures_agree_through_the_time_map():
    # the time map carries the TM trajectory onto the TO one point for point
    p = Params(0.5, 0.7, 1.3, 1.0)
    t = np.linspace(1, 3, 11)
    xm, pmm = classical_arrays("TM", p, (0.4, 0.9), t)
    xo, po = classical_arrays("TO", p, (0.4, 0.9), tprime_offset(t, p))
    assert np.max(np.abs(xm - xo)) < 1e-8
    assert np.max(np.abs(pmm - po)) < 1e-8
    assert np.allclose(t_from_tprime(tprime_offset(t, p), p), t, rtol=1e-14)


def test_coarse_step_fails_halving_check():
    p = Params(1, 1, 20, 1)
    with pytest.raises(ConvergenceError, match="halving"):
        integrate_gamma(p, (1.0, 0.0), [0.0, 3.0], IntegratorConfig(step=0.1))


def test_domain_errors():
    with pytest.raises(DomainError):
        integrate_gamma(Params(3, 1, 1, 2), (1, 0), [0.0, 1.0])  # domain ends at t_o/(a-1) = 1
    with pytest.raises(DomainError):
        integrate_gamma(Params(1, 1, 1, 1), (1, 0), [-0.1, 1.0])
    with pytest.raises(DomainError):
        classical_arrays("TM", Params(1, 1, 1, 1), (1, 0), [0.5])


@pytest.mark.parametrize("kw", [{"step": 0.0}, {"step": -1.0}, {"step": math.inf}, {"max_steps": 0}])
def test_config_validation(kw):
    with pytest.raises(ValueError):
        IntegratorConfig(**kw)


def test_max_steps_is_enforced():
    with pytest.raises(ConvergenceError):
        integrate_gamma(Params(1, 1, 1, 1), (1, 0), [0.0, 1.0], IntegratorConfig(step=1e-3, max_steps=10))


def test_suggest_step_scales_with_frequency():
    grid = [0.0, 1.0]
    slow = suggest_step("TO", Params(1, -1, 1, 1), grid)
    fast = suggest_step("TO", Params(1, -1, 100, 1), grid)
    assert slow == 1e-3 and fast == pytest.approx(0.004 / 100)
