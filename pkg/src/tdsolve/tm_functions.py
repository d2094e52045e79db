r"""TM-picture mode functions, written directly in the TM time ``t``.

The TM pair ``(xi_hat, xi_hat_dot)`` equals the TO pair evaluated at ``t'(t)``;
``xi_hat_dot`` is still the derivative with respect to ``t'``, which is what
the TM generators need.  In terms of ``r = t/t_o``, ``chi = (1-a)/2 ln r``
and ``tau = 2 omega t_o/|b-a+2| r^((b-a+2)/2)`` the rows are

* ``b != a-2``: ``r^((1-a)/2) H_mu(tau)`` with ``mu = (1-a)/(b-a+2)``
  (the ``a = 1`` member of this row has ``mu = 0``);
* ``{1;-1}`` and ``b = -a``: plane waves in ``t'``;
* ``b = a-2``: powers and logarithms of ``r`` through ``chi``.

``phi3_hat = 2 |xi_hat|^2`` together with its first two ``t'``-derivatives.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DomainError
from .regimes import Params, Picture, Row, SystemKey, classify
from .timemaps import _positive_time, tprime_offset
from .to_functions import _abs2, _out, bessel_order, critical_delta, hankel_pair

__all__ = ["tm_xi", "tm_phi", "tm_aux"]


def _key(p: Params, key: SystemKey | None) -> SystemKey:
    return classify(p, Picture.TM) if key is None else key


def _check_t(t, p: Params):
    t = _positive_time(t)
    if np.any(t < p.t_o * (1.0 - 1e-15)):
        raise DomainError(f"t must satisfy t >= t_o = {p.t_o!r}, got min t = {float(np.min(t))!r}")
    return t


def tm_aux(t, p: Params):
    """``(r, chi, tau)`` with ``tau`` set to ``None`` on the critical line."""
    t = _check_t(t, p)
    r = t / p.t_o
    lr = np.log(r)
    chi = 0.5 * (1.0 - p.a) * lr
    Q = p.b - p.a + 2.0
    tau = None
    if Q != 0.0:
        tau = 2.0 * p.omega * p.t_o / abs(Q) * np.exp(0.5 * Q * lr)
    return r, chi, tau


def _plane_wave(t, p: Params):
    s = tprime_offset(t, p)
    xi = np.exp(1j * p.omega * s) / math.sqrt(2.0 * p.omega)
    return xi, 1j * p.omega * xi


def tm_xi(t, p: Params, key: SystemKey | None = None):
    """``(xi_hat, xi_hat_dot)`` at TM time ``t >= t_o``."""
    key = _key(p, key)
    r, chi, tau = tm_aux(t, p)
    row = key.row
    if row is Row.SHO or key.special:
        xi, xi_dot = _plane_wave(t, p)
        return _out(xi), _out(xi_dot)

    one_a = 1.0 - p.a
    up = np.exp(chi)          # r^((1-a)/2)
    down = np.exp(-chi)       # r^((a-1)/2)
    if row in (Row.BESSEL_GT, Row.BESSEL_LT):
        Q = p.b - p.a + 2.0
        c = math.sqrt(math.pi * p.t_o / (2.0 * abs(Q)))
        k = 0.5 * math.sqrt(math.pi * abs(Q) / (2.0 * p.t_o))
        h, hm1 = hankel_pair(bessel_order(p), tau, conjugate=row is Row.BESSEL_LT)
        sign = 1.0 if row is Row.BESSEL_GT else -1.0
        return _out(c * up * h), _out(sign * k * down * tau * hm1)

    eps = 1.0 if one_a > 0 else -1.0
    if row is Row.CRIT_LT:
        D = critical_delta(p)
        em, ep = np.exp(-D * chi), np.exp(D * chi)
        xi = math.sqrt(p.t_o / (2.0 * abs(one_a) * D)) * up * (em + 1j * eps * ep)
        xi_dot = (
            0.5 * math.sqrt(abs(one_a) / (2.0 * p.t_o * D)) * down
            * (eps * (1.0 - D) * em + 1j * (1.0 + D) * ep)
        )
    elif row is Row.CRIT_EQ:
        xi = math.sqrt(p.t_o / (2.0 * abs(one_a))) * up * (1.0 + 2j * eps * chi)
        xi_dot = math.sqrt(abs(one_a) / (2.0 * p.t_o)) * down * (0.5 * eps + 1j * (1.0 + chi))
    else:
        D = critical_delta(p)
        phase = np.exp(1j * eps * D * chi)
        xi = math.sqrt(p.t_o / (abs(one_a) * D)) * up * phase
        xi_dot = 0.5 * math.sqrt(abs(one_a) / (p.t_o * D)) * down * (eps + 1j * D) * phase
    return _out(xi), _out(xi_dot)


def tm_phi(t, p: Params, key: SystemKey | None = None):
    """``(phi3_hat, phi3_hat_dot, phi3_hat_ddot)``; dots are ``t'``-derivatives."""
    key = _key(p, key)
    r, chi, tau = tm_aux(t, p)
    row = key.row
    zeros = np.zeros_like(r)
    if row is Row.SHO or key.special:
        return _out(zeros + 1.0 / p.omega), _out(zeros), _out(zeros.copy())

    one_a = 1.0 - p.a
    up2 = np.exp(2.0 * chi)   # r^(1-a)
    down2 = np.exp(-2.0 * chi)
    if row in (Row.BESSEL_GT, Row.BESSEL_LT):
        Q = p.b - p.a + 2.0
        h, hm1 = hankel_pair(bessel_order(p), tau, conjugate=False)
        phi3 = math.pi * p.t_o / abs(Q) * up2 * _abs2(h)
        phi3_dot = math.copysign(1.0, Q) * math.pi * tau * (hm1 * np.conj(h)).real
        phi3_ddot = math.pi * abs(Q) / (2.0 * p.t_o) * down2 * tau**2 * (_abs2(hm1) - _abs2(h))
        return _out(phi3), _out(phi3_dot), _out(phi3_ddot)

    eps = 1.0 if one_a > 0 else -1.0
    if row is Row.CRIT_LT:
        D = critical_delta(p)
        em, ep = np.exp(-2.0 * D * chi), np.exp(2.0 * D * chi)
        phi3 = p.t_o / (abs(one_a) * D) * up2 * (em + ep)
        phi3_dot = eps / D * ((1.0 - D) * em + (1.0 + D) * ep)
        phi3_ddot = abs(one_a) / p.t_o * down2 * (-(1.0 - D) * em + (1.0 + D) * ep)
    elif row is Row.CRIT_EQ:
        phi3 = p.t_o / abs(one_a) * up2 * (1.0 + 4.0 * chi**2)
        phi3_dot = eps * (1.0 + 2.0 * chi) ** 2
        phi3_ddot = 2.0 * abs(one_a) / p.t_o * down2 * (1.0 + 2.0 * chi)
    else:
        D = critical_delta(p)
        phi3 = 2.0 * p.t_o / (abs(one_a) * D) * up2
        phi3_dot = zeros + 2.0 * eps / D
        phi3_ddot = zeros.copy()
    return _out(phi3), _out(phi3_dot), _out(phi3_ddot)
