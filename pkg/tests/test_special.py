import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tdsolve import special
from tdsolve.errors import DomainError

mp.mp.dps = 40

orders = st.floats(-30.0, 30.0, allow_nan=False)
args = st.floats(0.05, 1e3, allow_nan=False)


def _mp_pair(mu, z):
    return float(mp.besselj(mu, z)), float(mp.bessely(mu, z))


@pytest.mark.parametrize(
    "mu,z",
    [(0.0, 1.0), (0.5, 2.0), (-0.5, 0.3), (1.0 / 3.0, 7.5), (-2.7, 0.9), (12.25, 40.0),
     (-29.5, 35.0), (30.0, 1e4), (0.0, 1e4), (4.0, 1e-3)],
)
def test_j_and_y_match_mpmath(mu, z):
    j, y = _mp_pair(mu, z)
    scale = math.hypot(j, y)
    assert abs(special.bessel_j(mu, z) - j) <= 1e-10 * scale
    assert abs(special.bessel_y(mu, z) - y) <= 1e-10 * scale


@settings(max_examples=150, deadline=None)
@given(orders, st.floats(1e-3, 1e4))
def test_random_orders_match_mpmath(mu, z):
    j, y = _mp_pair(mu, z)
    if not (math.isfinite(y) and abs(y) < 1e300):
        return
    h = special.hankel1(mu, z)
    assert abs(h - complex(j, y)) <= 1e-10 * math.hypot(j, y)


def test_j0_small_argument_limit():
    assert special.bessel_j(0.0, 1e-12) == pytest.approx(1.0, abs=1e-10)


def test_half_order_j_vanishes_at_pi():
    assert abs(special.bessel_j(0.5, math.pi)) < 1e-10


def test_first_zero_of_j0():
    # reference zero obtained by mpmath root finding
    zero = float(mp.findroot(lambda x: mp.besselj(0, x), 2.4))
    assert abs(special.bessel_j(0.0, 2.4048255577)) < 1e-8
    assert zero == pytest.approx(2.4048255577, abs=1e-9)


@pytest.mark.parametrize("z", [1.0, 2.0, 5.0])
def test_half_order_y_closed_form(z):
    assert special.bessel_y(0.5, z) == pytest.approx(-math.sqrt(2 / (math.pi * z)) * math.cos(z), abs=1e-10)


def test_half_order_hankel_closed_form():
    tau = 2.0
    expected = -1j * math.sqrt(2 / (math.pi * tau)) * np.exp(2j)
    assert abs(special.hankel1(0.5, tau) - expected) < 1e-12


def test_hankel_at_one():
    j, y = _mp_pair(0, 1.0)
    assert abs(special.hankel1(0.0, 1.0) - complex(j, y)) < 1e-14


def test_hankel2_is_exact_conjugate():
    mu = np.linspace(-5, 5, 11)
    z = np.linspace(0.1, 20, 11)
    assert np.array_equal(special.hankel2(mu, z), np.conj(special.hankel1(mu, z)))


def test_jy_wronskian_example():
    mu, z = 0.3, 1.7
    w = special.bessel_j(mu, z) * special.bessel_derivative(mu, z, "Y") - special.bessel_derivative(
        mu, z, "J"
    ) * special.bessel_y(mu, z)
    assert w == pytest.approx(2 / (math.pi * z), abs=1e-9)


def test_hankel_wronskian_example():
    mu, z = 0.7, 3.1
    d = special.bessel_derivative
    w = special.hankel1(mu, z) * d(mu, z, "H2") - d(mu, z, "H1") * special.hankel2(mu, z)
    assert abs(w - (-4j / (math.pi * z))) < 1e-9


@pytest.mark.parametrize("kind", special.KINDS)
@pytest.mark.parametrize("mu,z", [(0.5, 1.0), (0.0, 2.3), (-1.3, 4.0), (7.2, 9.0)])
def test_derivative_matches_finite_difference(kind, mu, z):
    h = 1e-6
    fd = (special.bessel(kind, mu, z + h) - special.bessel(kind, mu, z - h)) / (2 * h)
    assert abs(special.bessel_derivative(mu, z, kind) - fd) < 1e-6 * max(1.0, abs(fd))


@settings(max_examples=100, deadline=None)
@given(orders, args)
def test_recurrence_and_derivative_identities(mu, z):
    for kind in ("J", "Y"):
        f = lambda m: special.bessel(kind, m, z)  # noqa: E731
        scale = max(abs(f(mu - 1)), abs(f(mu + 1)), 1e-300)
        assert abs(f(mu - 1) + f(mu + 1) - 2 * mu / z * f(mu)) <= 1e-9 * scale
        assert abs(2 * special.bessel_derivative(mu, z, kind) - (f(mu - 1) - f(mu + 1))) <= 1e-9 * scale


@settings(max_examples=100, deadline=None)
@given(orders, args)
def test_cross_product_identity(mu, z):
    h, hm = special.hankel1(mu, z), special.hankel1(mu - 1, z)
    lhs = h * np.conj(hm) - hm * np.conj(h)
    scale = max(abs(h * hm), 2 / (math.pi * z))
    assert abs(lhs - (-4j / (math.pi * z))) <= 1e-9 * scale


def test_vectorised_broadcast():
    out = special.hankel1(np.array([[0.0], [1.0]]), np.array([1.0, 2.0, 3.0]))
    assert out.shape == (2, 3)
    assert np.isscalar(special.bessel_j(0.0, 1.0)) or np.ndim(special.bessel_j(0.0, 1.0)) == 0


@pytest.mark.parametrize("fn", [special.bessel_j, special.bessel_y, special.hankel1, special.hankel2])
@pytest.mark.parametrize("z", [0.0, -1.0, float("nan"), float("inf")])
def test_rejects_bad_arguments(fn, z):
    with pytest.raises(DomainError):
        fn(0.5, z)


def test_y0_near_origin_is_diagnosed_not_nan():
    # finite but large just above zero; exactly at zero it is an error
    assert special.bessel_y(0.0, 1e-300) < -400
    with pytest.raises(DomainError, match="positive"):
        special.bessel_y(0.0, 0.0)


def test_overflow_is_diagnosed():
    with pytest.raises(DomainError, match="overflows"):
        special.bessel_y(30.0, 1e-20)


def test_unknown_kind():
    with pytest.raises(ValueError, match="kind"):
        special.bessel("K", 0.0, 1.0)


@pytest.mark.parametrize("mu", [2.2250738585e-313, -1e-310, 5e-324])
def test_subnormal_order_behaves_like_order_zero(mu):
    assert special.bessel_y(mu, 1.0) == special.bessel_y(0.0, 1.0)
