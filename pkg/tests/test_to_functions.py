import math

import numpy as np
import pytest
from conftest import SYSTEMS, to_window
from hypothesis import given, settings
from hypothesis import strategies as st

from tdsolve.errors import DomainError
from tdsolve.oracle import IntegratorConfig, integrate_gamma
from tdsolve.regimes import Params, Row, classify
from tdsolve.timemaps import g2
from tdsolve.to_functions import phi_from_xi, to_aux, to_phi, to_phi3_third, to_solution, to_xi


def test_wronskian_is_minus_i(system):
    _, p = system
    xi, xd = to_xi(to_window(p, 100), p)
    w = xi * np.conj(xd) - xd * np.conj(xi)
    assert np.max(np.abs(w + 1j)) < 1e-12


def test_solves_the_mode_equation(system):
    _, p = system
    s = to_window(p)[1:-1]
    h = 1e-4
    xi = to_xi(s, p)[0]
    second = (to_xi(s + h, p)[0] - 2 * xi + to_xi(s - h, p)[0]) / h**2
    rhs = -2 * g2(s, p) * xi
    assert np.max(np.abs(second - rhs)) < 1e-5 * max(1.0, np.max(np.abs(rhs)))


def test_derivative_is_consistent(system):
    _, p = system
    s = to_window(p)[1:-1]
    h = 1e-6
    fd = (to_xi(s + h, p)[0] - to_xi(s - h, p)[0]) / (2 * h)
    xd = to_xi(s, p)[1]
    assert np.max(np.abs(fd - xd)) < 1e-6 * max(1.0, np.max(np.abs(xd)))


def test_phi_family(system):
    _, p = system
    s = to_window(p)
    xi, xd = to_xi(s, p)
    phi1, phi2, phi3, phi3_dot, phi3_ddot = to_phi(s, p)
    assert np.allclose(phi1, xi**2, rtol=1e-14)
    assert np.array_equal(phi2, np.conj(phi1))
    alt = phi_from_xi(xi, xd, g2(s, p))
    for tab, ref in zip((phi3, phi3_dot, phi3_ddot), alt):
        assert np.max(np.abs(tab - ref)) < 1e-12 * max(1.0, np.max(np.abs(ref)))


def test_phi_derivatives_by_finite_difference(system):
    _, p = system
    s = to_window(p)[1:-1]
    h = 1e-6
    plus, minus = to_phi(s + h, p), to_phi(s - h, p)
    mid = to_phi(s, p)
    for k in (2, 3):
        fd = (plus[k] - minus[k]) / (2 * h)
        assert np.max(np.abs(fd - mid[k + 1])) < 1e-6 * max(1.0, np.max(np.abs(mid[k + 1])))
    fd3 = (plus[4] - minus[4]) / (2 * h)
    third = to_phi3_third(s, p)
    assert np.max(np.abs(fd3 - third)) < 1e-6 * max(1.0, np.max(np.abs(third)))


def test_solution_bundle():
    p = SYSTEMS["case1_gt"]
    sol = to_solution(0.3, p)
    assert sol.phi3 == pytest.approx(2 * abs(sol.xi) ** 2)


def test_sho_initial_values():
    p = Params(1, -1, 2.0, 1)
    xi, xd = to_xi(0.0, p)
    assert xi == pytest.approx(1 / math.sqrt(4.0))
    assert xd == pytest.approx(2j / math.sqrt(4.0))
    _, _, f3, f3d, f3dd = to_phi(np.array([0.0, 1.0]), p)
    assert np.allclose(f3, 0.5) and np.all(f3d == 0) and np.all(f3dd == 0)


def test_critical_example_against_rk4():
    p = Params(0.5, -1.5, 2.0, 1.0)
    assert classify(p).row is Row.CRIT_GT
    aux = to_aux(1.0, p)
    assert aux.Delta == pytest.approx(math.sqrt(63))
    assert aux.v == pytest.approx(1.5)
    xi, _ = to_xi(1.0, p)
    expected = math.sqrt(1 / (0.5 * math.sqrt(63))) * math.sqrt(1.5) * np.exp(0.5j * math.sqrt(63) * math.log(1.5))
    assert xi == pytest.approx(expected, rel=1e-14)
    g, _ = integrate_gamma(p, to_xi(0.0, p), [0.0, 0.5, 1.0], IntegratorConfig(step=2e-4))
    assert abs(g[-1] - xi) < 1e-8


def test_special_case_unit_modulus_relation():
    p = SYSTEMS["special"]
    s = to_window(p)
    simple = to_xi(s, p)[0]
    hankel = to_xi(s, p, simple_special=False)[0]
    ratio = simple / hankel
    assert np.allclose(np.abs(ratio), 1.0, atol=1e-12)
    assert np.allclose(ratio, ratio[0], atol=1e-12)


def test_aux_variables():
    a1 = to_aux(0.5, SYSTEMS["case1_gt"])
    assert a1.sigma == pytest.approx(2 * 1 * 1 / 1.5 * math.exp(1.5 * 0.5 / 2))
    assert a1.v is None
    a2 = to_aux(0.5, SYSTEMS["bessel_gt"])
    assert a2.q == pytest.approx(2.5 / 0.5) and a2.v == pytest.approx(1.25)
    assert a2.tau == pytest.approx(2 / 2.5 * 1.25 ** (5 / 2))


def test_domain_errors():
    p = Params(3, -0.5, 1, 2)  # saturates at offset 1
    with pytest.raises(DomainError):
        to_xi(1.0, p)
    with pytest.raises(DomainError):
        to_xi(-0.1, p)


@settings(max_examples=60, deadline=None)
@given(
    st.floats(-2.0, 0.8),
    st.floats(0.3, 3.0),
    st.booleans(),
    st.floats(0.5, 2.0),
    st.floats(0.5, 2.0),
    st.floats(0.0, 2.0),
)
def test_wronskian_property_case2(a, gap, above, omega, t_o, s):
    b = a - 2 + gap if above else a - 2 - gap
    p = Params(a, b, omega, t_o)
    mu = (1 - a) / (b - a + 2)
    if abs(mu) > 4 or abs(a) < 1e-3:
        return
    try:
        xi, xd = to_xi(s, p)
    except DomainError:
        return  # Bessel argument outside double range
    w = xi * np.conj(xd) - xd * np.conj(xi)
    assert abs(w + 1j) < 1e-9 * max(1.0, abs(xi * xd))
