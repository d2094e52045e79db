r"""TQ-picture mode functions and generator coefficients.

In the TQ picture the annihilation-type generator reads
``J_- = i (Xi_P P - Xi_X X)`` with ``Xi_P = xi_hat e^nu`` and
``Xi_X = xi_hat_dot e^-nu``, and the third generator is

    M = C3T * T - C3D * D + C3X2 * X^2

with ``C3T = phi3_hat e^(2 nu)``, ``C3D = dC3T/dt / 2`` and
``C3X2 = phi3_hat_ddot e^(-2 nu) / 4``.  The rows below are written in
``r = t/t_o``; ``e^nu = r^(a/2)``.
"""

from __future__ import annotations

import math

import numpy as np

from .regimes import Params, Picture, Row, SystemKey, classify
from .timemaps import tprime_offset
from .tm_functions import tm_aux
from .to_functions import _abs2, _out, bessel_order, critical_delta, hankel_pair

__all__ = ["tq_xi", "tq_coeffs"]


def _key(p: Params, key: SystemKey | None) -> SystemKey:
    return classify(p, Picture.TQ) if key is None else key


def tq_xi(t, p: Params, key: SystemKey | None = None):
    """``(Xi_P, Xi_X)`` at TQ time ``t >= t_o``."""
    key = _key(p, key)
    r, chi, tau = tm_aux(t, p)
    row = key.row
    if row is Row.SHO or key.special:
        # r^(a/2) covers both {1;-1} (a = 1) and b = -a
        wave = np.exp(1j * p.omega * tprime_offset(t, p)) / math.sqrt(2.0 * p.omega)
        scale = np.exp(0.5 * p.a * np.log(r))
        return _out(scale * wave), _out(1j * p.omega * wave / scale)

    one_a = 1.0 - p.a
    up = np.sqrt(r)
    if row in (Row.BESSEL_GT, Row.BESSEL_LT):
        Q = p.b - p.a + 2.0
        c = math.sqrt(math.pi * p.t_o / (2.0 * abs(Q)))
        k = 0.5 * math.sqrt(math.pi * abs(Q) / (2.0 * p.t_o))
        h, hm1 = hankel_pair(bessel_order(p), tau, conjugate=row is Row.BESSEL_LT)
        sign = 1.0 if row is Row.BESSEL_GT else -1.0
        return _out(c * up * h), _out(sign * k * tau * hm1 / up)

    eps = 1.0 if one_a > 0 else -1.0
    if row is Row.CRIT_LT:
        D = critical_delta(p)
        em, ep = np.exp(-D * chi), np.exp(D * chi)
        xp = math.sqrt(p.t_o / (2.0 * abs(one_a) * D)) * up * (em + 1j * eps * ep)
        xx = (
            0.5 * math.sqrt(abs(one_a) / (2.0 * p.t_o * D)) / up
            * (eps * (1.0 - D) * em + 1j * (1.0 + D) * ep)
        )
    elif row is Row.CRIT_EQ:
        xp = math.sqrt(p.t_o / (2.0 * abs(one_a))) * up * (1.0 + 2j * eps * chi)
        xx = math.sqrt(abs(one_a) / (2.0 * p.t_o)) / up * (0.5 * eps + 1j * (1.0 + chi))
    else:
        D = critical_delta(p)
        phase = np.exp(1j * eps * D * chi)
        xp = math.sqrt(p.t_o / (abs(one_a) * D)) * up * phase
        xx = 0.5 * math.sqrt(abs(one_a) / (p.t_o * D)) / up * (eps + 1j * D) * phase
    return _out(xp), _out(xx)


def tq_coeffs(t, p: Params, key: SystemKey | None = None):
    """``(C3T, C3D, C3X2)`` at TQ time ``t >= t_o``.

    On the critical line ``t_o`` against ``|1-a|/(2 omega)`` the ``X^2``
    coefficient is ``+|1-a|/(4 t_o r) [...]``; with the opposite sign the
    commutation relations of the generators fail.
    """
    key = _key(p, key)
    r, chi, tau = tm_aux(t, p)
    row = key.row
    a = p.a
    zeros = np.zeros_like(r)
    if row is Row.SHO or key.special:
        ra = np.exp(a * np.log(r))
        c3t = ra / p.omega
        c3d = a / (2.0 * p.omega * p.t_o) * ra / r
        return _out(c3t), _out(c3d), _out(zeros)

    one_a = 1.0 - a
    if row in (Row.BESSEL_GT, Row.BESSEL_LT):
        Q = p.b - a + 2.0
        h, hm1 = hankel_pair(bessel_order(p), tau, conjugate=False)
        c3t = math.pi * p.t_o / abs(Q) * r * _abs2(h)
        c3d = a * math.pi / (2.0 * abs(Q)) * _abs2(h) + math.copysign(
            0.5 * math.pi, Q
        ) * tau * (hm1 * np.conj(h)).real
        c3x2 = math.pi * abs(Q) / (8.0 * p.t_o) / r * tau**2 * (_abs2(hm1) - _abs2(h))
        return _out(c3t), _out(c3d), _out(c3x2)

    eps = 1.0 if one_a > 0 else -1.0
    if row is Row.CRIT_LT:
        D = critical_delta(p)
        em, ep = np.exp(-2.0 * D * chi), np.exp(2.0 * D * chi)
        c3t = p.t_o / (abs(one_a) * D) * r * (em + ep)
        c3d = a / (2.0 * abs(one_a) * D) * (em + ep) + eps / (2.0 * D) * ((1.0 - D) * em + (1.0 + D) * ep)
        c3x2 = abs(one_a) / (4.0 * p.t_o) / r * (-(1.0 - D) * em + (1.0 + D) * ep)
    elif row is Row.CRIT_EQ:
        c3t = p.t_o / abs(one_a) * r * (1.0 + 4.0 * chi**2)
        c3d = a / (2.0 * abs(one_a)) * (1.0 + 4.0 * chi**2) + eps * (0.5 + 2.0 * chi * (1.0 + chi))
        c3x2 = abs(one_a) / (2.0 * p.t_o) / r * (1.0 + 2.0 * chi)
    else:
        D = critical_delta(p)
        c3t = 2.0 * p.t_o / (abs(one_a) * D) * r
        c3d = zeros + a / (abs(one_a) * D) + eps / D
        c3x2 = zeros.copy()
    return _out(c3t), _out(c3d), _out(c3x2)
