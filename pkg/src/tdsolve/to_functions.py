r"""TO-picture mode functions.

``xi(t')`` is the complex solution of :math:`\ddot\gamma + 2 g_2(t') \gamma = 0`
normalised so that :math:`\xi\dot{\bar\xi} - \dot\xi\bar\xi = -i`.  Per row:

* ``a = 1, b != -1``: zero-order Hankel function of
  ``sigma = 2 omega t_o/|b+1| exp[(b+1)(t'-t_o')/(2 t_o)]``
  (``H`` for ``b+1 > 0``, its conjugate otherwise);
* ``b = -a``: the constant-frequency form ``exp(i omega (t'-t_o'))/sqrt(2 omega)``;
* ``a != 1, b != a-2``: ``sqrt(v) H_{1/q}(tau)`` with ``tau = 2 omega t_o/|b-a+2| v^(q/2)``;
* ``b = a-2``: Euler-type power/log solutions in ``v``, split by the sign of
  ``1 - 4 omega^2 t_o^2/(1-a)^2``.

The real bilinears are ``phi1 = xi^2``, ``phi2 = conj(xi)^2``,
``phi3 = 2 |xi|^2``.  Everything is vectorised over the offset ``t' - t_o'``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import special
from .regimes import Params, Picture, Row, SystemKey, classify
from .timemaps import _check_offset, g2, g2_dot, scaled_time

__all__ = [
    "AuxVariables",
    "SolutionFunctions",
    "to_aux",
    "to_xi",
    "to_phi",
    "to_phi3_third",
    "to_solution",
    "phi_from_xi",
    "hankel_pair",
]


def _out(x):
    return x[()] if isinstance(x, np.ndarray) and x.ndim == 0 else x


@dataclass(frozen=True)
class AuxVariables:
    """Auxiliary variables of the TO rows; ``None`` where not applicable."""

    sigma: float | np.ndarray | None = None
    v: float | np.ndarray | None = None
    tau: float | np.ndarray | None = None
    q: float | None = None
    Delta: float | None = None


@dataclass(frozen=True)
class SolutionFunctions:
    xi: complex | np.ndarray
    xi_dot: complex | np.ndarray
    phi1: complex | np.ndarray
    phi2: complex | np.ndarray
    phi3: float | np.ndarray
    phi3_dot: float | np.ndarray
    phi3_ddot: float | np.ndarray


def _key(p: Params, key: SystemKey | None) -> SystemKey:
    if key is None:
        return classify(p, Picture.TO)
    return key


def critical_delta(p: Params) -> float:
    """``Delta = sqrt|1 - 4 omega^2 t_o^2 / (1-a)^2|``."""
    return math.sqrt(abs(1.0 - 4.0 * p.omega**2 * p.t_o**2 / (1.0 - p.a) ** 2))


def bessel_order(p: Params) -> float:
    """Order ``1/q = (1-a)/(b-a+2)`` of the Case-2 Bessel rows (0 for ``a = 1``)."""
    return (1.0 - p.a) / (p.b - p.a + 2.0)


def hankel_pair(mu, z, conjugate: bool):
    """``(H_mu(z), H_{mu-1}(z))``, conjugated for the ``b < a-2`` rows."""
    h = special.hankel1(mu, z)
    h1 = special.hankel1(mu - 1.0, z)
    if conjugate:
        return np.conj(h), np.conj(h1)
    return h, h1


def to_aux(tprime_offset, p: Params, key: SystemKey | None = None) -> AuxVariables:
    """Auxiliary variables at ``t' - t_o'``."""
    key = _key(p, key)
    s = _check_offset(tprime_offset, p)
    if key.row in (Row.CASE1_GT, Row.CASE1_LT) or (key.row is Row.SHO):
        bp1 = p.b + 1.0
        if key.row is Row.SHO:
            return AuxVariables()
        sigma = 2.0 * p.omega * p.t_o / abs(bp1) * np.exp(bp1 * s / (2.0 * p.t_o))
        return AuxVariables(sigma=_out(sigma))
    v = scaled_time(s, p)
    q = (p.b - p.a + 2.0) / (1.0 - p.a)
    if key.row in (Row.BESSEL_GT, Row.BESSEL_LT):
        tau = 2.0 * p.omega * p.t_o / abs(p.b - p.a + 2.0) * np.exp(0.5 * q * np.log(v))
        return AuxVariables(v=_out(v), tau=_out(tau), q=q)
    return AuxVariables(v=_out(v), q=q, Delta=critical_delta(p))


def _sho_xi(s, omega):
    xi = np.exp(1j * omega * s) / math.sqrt(2.0 * omega)
    return xi, 1j * omega * xi


def to_xi(tprime_offset, p: Params, key: SystemKey | None = None, simple_special: bool = True):
    """``(xi, xi_dot)`` at ``t' - t_o'``; the derivative is with respect to ``t'``.

    Parameters
    ----------
    simple_special : bool
        For ``b = -a`` use the constant-frequency exponential rather than the
        equivalent half-order Hankel row (they differ by a unit-modulus
        constant).
    """
    key = _key(p, key)
    s = _check_offset(tprime_offset, p)
    row = key.row
    if row is Row.SHO or (key.special and simple_special):
        xi, xi_dot = _sho_xi(s, p.omega)
        return _out(xi), _out(xi_dot)

    if row in (Row.CASE1_GT, Row.CASE1_LT):
        bp1 = p.b + 1.0
        sigma = to_aux(s, p, key).sigma
        c = math.sqrt(math.pi * p.t_o / (2.0 * abs(bp1)))
        k = 0.5 * math.sqrt(math.pi * abs(bp1) / (2.0 * p.t_o))
        h0, hm1 = hankel_pair(0.0, sigma, conjugate=row is Row.CASE1_LT)
        sign = 1.0 if row is Row.CASE1_GT else -1.0
        return _out(c * h0), _out(sign * k * sigma * hm1)

    v = scaled_time(s, p)
    sv = np.sqrt(v)
    one_a = 1.0 - p.a
    if row in (Row.BESSEL_GT, Row.BESSEL_LT):
        Q = p.b - p.a + 2.0
        tau = to_aux(s, p, key).tau
        c = math.sqrt(math.pi * p.t_o / (2.0 * abs(Q)))
        k = 0.5 * math.sqrt(math.pi * abs(Q) / (2.0 * p.t_o))
        h, hm1 = hankel_pair(bessel_order(p), tau, conjugate=row is Row.BESSEL_LT)
        sign = 1.0 if row is Row.BESSEL_GT else -1.0
        return _out(c * sv * h), _out(sign * k * tau * hm1 / sv)

    eps = 1.0 if one_a > 0 else -1.0
    L = np.log(v)
    if row is Row.CRIT_LT:
        D = critical_delta(p)
        em, ep = np.exp(-0.5 * D * L), np.exp(0.5 * D * L)
        xi = math.sqrt(p.t_o / (2.0 * abs(one_a) * D)) * sv * (em + 1j * eps * ep)
        xi_dot = (
            0.5 * math.sqrt(abs(one_a) / (2.0 * p.t_o * D)) / sv
            * (eps * (1.0 - D) * em + 1j * (1.0 + D) * ep)
        )
    elif row is Row.CRIT_EQ:
        xi = math.sqrt(p.t_o / (2.0 * abs(one_a))) * sv * (1.0 + 1j * eps * L)
        xi_dot = math.sqrt(abs(one_a) / (2.0 * p.t_o)) / sv * (0.5 * eps + 1j * (1.0 + 0.5 * L))
    else:
        D = critical_delta(p)
        phase = np.exp(1j * eps * 0.5 * D * L)
        xi = math.sqrt(p.t_o / (abs(one_a) * D)) * sv * phase
        xi_dot = 0.5 * math.sqrt(abs(one_a) / (p.t_o * D)) / sv * (eps + 1j * D) * phase
    return _out(xi), _out(xi_dot)


def _abs2(z):
    return z.real**2 + z.imag**2


def to_phi(tprime_offset, p: Params, key: SystemKey | None = None):
    """``(phi1, phi2, phi3, phi3_dot, phi3_ddot)`` at ``t' - t_o'``.

    ``phi3`` and its derivatives are the closed-form rows; ``phi1``/``phi2`` are
    built from :func:`to_xi`.
    """
    key = _key(p, key)
    s = _check_offset(tprime_offset, p)
    xi, _ = to_xi(s, p, key)
    phi1 = xi * xi
    phi2 = np.conj(phi1)
    row = key.row
    zeros = np.zeros_like(np.asarray(s, dtype=float))

    if row is Row.SHO or key.special:
        phi3 = zeros + 1.0 / p.omega
        return _out(phi1), _out(phi2), _out(phi3), _out(zeros), _out(zeros.copy())

    if row in (Row.CASE1_GT, Row.CASE1_LT):
        bp1 = p.b + 1.0
        sigma = to_aux(s, p, key).sigma
        h0, hm1 = hankel_pair(0.0, sigma, conjugate=False)
        phi3 = math.pi * p.t_o / abs(bp1) * _abs2(h0)
        phi3_dot = math.copysign(1.0, bp1) * math.pi * sigma * (hm1 * np.conj(h0)).real
        phi3_ddot = math.pi * abs(bp1) / (2.0 * p.t_o) * sigma**2 * (_abs2(hm1) - _abs2(h0))
        return _out(phi1), _out(phi2), _out(phi3), _out(phi3_dot), _out(phi3_ddot)

    v = scaled_time(s, p)
    one_a = 1.0 - p.a
    if row in (Row.BESSEL_GT, Row.BESSEL_LT):
        Q = p.b - p.a + 2.0
        tau = to_aux(s, p, key).tau
        h, hm1 = hankel_pair(bessel_order(p), tau, conjugate=False)
        phi3 = math.pi * p.t_o / abs(Q) * v * _abs2(h)
        phi3_dot = math.copysign(1.0, Q) * math.pi * tau * (hm1 * np.conj(h)).real
        phi3_ddot = math.pi * abs(Q) / (2.0 * p.t_o) / v * tau**2 * (_abs2(hm1) - _abs2(h))
        return _out(phi1), _out(phi2), _out(phi3), _out(phi3_dot), _out(phi3_ddot)

    eps = 1.0 if one_a > 0 else -1.0
    L = np.log(v)
    if row is Row.CRIT_LT:
        D = critical_delta(p)
        em, ep = np.exp(-D * L), np.exp(D * L)
        phi3 = p.t_o / (abs(one_a) * D) * v * (em + ep)
        phi3_dot = eps / D * ((1.0 - D) * em + (1.0 + D) * ep)
        phi3_ddot = abs(one_a) / p.t_o / v * (-(1.0 - D) * em + (1.0 + D) * ep)
    elif row is Row.CRIT_EQ:
        phi3 = p.t_o / abs(one_a) * v * (1.0 + L**2)
        phi3_dot = eps * (1.0 + L) ** 2
        phi3_ddot = 2.0 * abs(one_a) / p.t_o / v * (1.0 + L)
    else:
        D = critical_delta(p)
        phi3 = 2.0 * p.t_o / (abs(one_a) * D) * v
        phi3_dot = zeros + 2.0 * eps / D
        phi3_ddot = zeros.copy()
    return _out(phi1), _out(phi2), _out(phi3), _out(phi3_dot), _out(phi3_ddot)


def phi_from_xi(xi, xi_dot, g):
    """``phi3`` and its first two derivatives from ``(xi, xi_dot)`` and ``g2``.

    Uses ``xi'' = -2 g2 xi``:  ``phi3' = 4 Re(xi' conj(xi))`` and
    ``phi3'' = 4 |xi'|^2 - 8 g2 |xi|^2``.
    """
    phi3 = 2.0 * _abs2(xi)
    phi3_dot = 4.0 * (xi_dot * np.conj(xi)).real
    phi3_ddot = 4.0 * _abs2(xi_dot) - 8.0 * g * _abs2(xi)
    return phi3, phi3_dot, phi3_ddot


def to_phi3_third(tprime_offset, p: Params, key: SystemKey | None = None):
    """Third derivative of ``phi3``: ``-8 g2 phi3' - 4 g2' phi3``."""
    _, _, phi3, phi3_dot, _ = to_phi(tprime_offset, p, key)
    return _out(-8.0 * g2(tprime_offset, p) * phi3_dot - 4.0 * g2_dot(tprime_offset, p) * phi3)


def to_solution(tprime_offset, p: Params, key: SystemKey | None = None) -> SolutionFunctions:
    """All TO functions at once."""
    key = _key(p, key)
    xi, xi_dot = to_xi(tprime_offset, p, key)
    phi1, phi2, phi3, phi3_dot, phi3_ddot = to_phi(tprime_offset, p, key)
    return SolutionFunctions(xi, xi_dot, phi1, phi2, phi3, phi3_dot, phi3_ddot)
