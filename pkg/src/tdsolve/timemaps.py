"""Maps between the TQ/TM time ``t`` and the TO time offset ``t' - t_o'``.

``nu(t) = (a/2) ln(t/t_o)`` is the dilation exponent relating TQ and TM.  The
TO time satisfies ``dt'/dt = (t_o/t)^a``, which integrates to

* ``a == 1``: ``t' - t_o' = t_o ln(t/t_o)``
* ``a != 1``: ``t' - t_o' = t_o/(1-a) [(t/t_o)^(1-a) - 1]``

and the TO potential coefficient is ``g2 = omega^2/2 (t/t_o)^(a+b)`` expressed
in ``t'``.  In Case 2 the natural variable is ``v = 1 + (1-a)(t'-t_o')/t_o =
(t/t_o)^(1-a)``.

Functions are vectorised over the time argument.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .regimes import DEFAULT_EPS, Params, _cmp

__all__ = [
    "MappedTime",
    "V_MIN",
    "nu",
    "nu_dot",
    "t_prime",
    "tprime_offset",
    "t_from_tprime",
    "scaled_time",
    "g2",
    "g2_dot",
    "is_case1",
]

# Case-2 endpoint guard: powers of v are not evaluated below this.
V_MIN = 1e-12


@dataclass(frozen=True)
class MappedTime:
    t: float | np.ndarray
    tprime_offset: float | np.ndarray


def is_case1(p: Params, eps: float = DEFAULT_EPS) -> bool:
    return _cmp(p.a, 1.0, eps) == 0


def _positive_time(t):
    t = np.asarray(t, dtype=float)
    if np.any(~np.isfinite(t)) or np.any(t <= 0):
        raise DomainError(f"time must be positive and finite, got min t = {float(np.min(t))!r}")
    return t


def _out(x):
    return x[()] if isinstance(x, np.ndarray) and x.ndim == 0 else x


def nu(t, p: Params):
    """Dilation exponent ``(a/2) ln(t/t_o)``."""
    t = _positive_time(t)
    return _out(0.5 * p.a * np.log(t / p.t_o))


def nu_dot(t, p: Params):
    """``d nu/dt = a / (2 t)``."""
    t = _positive_time(t)
    return _out(0.5 * p.a / t)


def tprime_offset(t, p: Params):
    """``t' - t_o'`` as a function of ``t``."""
    t = _positive_time(t)
    r = t / p.t_o
    if is_case1(p):
        return _out(p.t_o * np.log(r))
    return _out(p.t_o / (1.0 - p.a) * np.expm1((1.0 - p.a) * np.log(r)))


def t_prime(t, p: Params) -> MappedTime:
    """TO time offset for TM/TQ time ``t`` (strictly increasing in ``t``)."""
    return MappedTime(t=_out(np.asarray(t, dtype=float)), tprime_offset=tprime_offset(t, p))


def scaled_time(offset, p: Params):
    """Case-2 variable ``v = 1 + (1-a)(t'-t_o')/t_o``.

    Raises
    ------
    DomainError
        If ``v < V_MIN`` (at or past the saturation point for ``a > 1``).
    """
    offset = np.asarray(offset, dtype=float)
    v = 1.0 + (1.0 - p.a) * offset / p.t_o
    if np.any(v < V_MIN) or np.any(~np.isfinite(v)):
        raise DomainError(
            f"t'-t_o' = {float(np.max(offset))!r} reaches the end of the TO domain "
            f"[0, {p.t_o / (p.a - 1.0) if p.a > 1 else np.inf!r}) (v = {float(np.min(v))!r})"
        )
    return v


def _check_offset(offset, p: Params):
    offset = np.asarray(offset, dtype=float)
    if np.any(~np.isfinite(offset)) or np.any(offset < 0):
        raise DomainError(f"t'-t_o' must be a finite non-negative offset, got {float(np.min(offset))!r}")
    return offset


def t_from_tprime(mt, p: Params):
    """Inverse of :func:`t_prime`; accepts a :class:`MappedTime` or a bare offset."""
    offset = mt.tprime_offset if isinstance(mt, MappedTime) else mt
    offset = _check_offset(offset, p)
    if is_case1(p):
        return _out(p.t_o * np.exp(offset / p.t_o))
    v = scaled_time(offset, p)
    return _out(p.t_o * v ** (1.0 / (1.0 - p.a)))


def g2(offset, p: Params):
    """TO potential coefficient ``g2(t')``; equals ``omega^2/2`` at ``t' = t_o'``."""
    offset = _check_offset(offset, p)
    half_w2 = 0.5 * p.omega**2
    if is_case1(p):
        return _out(half_w2 * np.exp((1.0 + p.b) * offset / p.t_o))
    v = scaled_time(offset, p)
    return _out(half_w2 * v ** ((p.a + p.b) / (1.0 - p.a)))


def g2_dot(offset, p: Params):
    """``d g2 / dt'``."""
    offset = _check_offset(offset, p)
    if is_case1(p):
        return _out((1.0 + p.b) / p.t_o * g2(offset, p))
    v = scaled_time(offset, p)
    return _out((p.a + p.b) / (p.t_o * v) * g2(offset, p))
