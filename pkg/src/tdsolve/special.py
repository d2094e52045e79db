r"""Real-order Bessel and Hankel functions of a positive real argument.

The kernels are thin wrappers over :mod:`scipy.special` (AMOS/Cephes), with
argument validation and the conventions used throughout the package:

* ``hankel1(mu, z) = J_mu(z) + i Y_mu(z)`` is assembled from ``jv`` and ``yv``
  so that ``hankel2`` is *bitwise* its complex conjugate.
* Derivatives use the lowering recursion

  .. math:: F_\mu'(z) = F_{\mu-1}(z) - \frac{\mu}{z} F_\mu(z),

  valid for :math:`F \in \{J, Y, H^{(1)}, H^{(2)}\}`.

All functions accept scalars or numpy arrays and broadcast like ufuncs.
"""

from __future__ import annotations

import numpy as np
from scipy import special as sc

from .errors import DomainError

__all__ = [
    "bessel_j",
    "bessel_y",
    "hankel1",
    "hankel2",
    "bessel_derivative",
    "bessel",
]

KINDS = ("J", "Y", "H1", "H2")


def _check(mu, z):
    mu = np.asarray(mu, dtype=float)
    z = np.asarray(z, dtype=float)
    if not np.all(np.isfinite(mu)):
        raise DomainError("Bessel order must be finite")
    if not np.all(np.isfinite(z)):
        raise DomainError("Bessel argument must be finite")
    if np.any(z <= 0.0):
        raise DomainError(
            f"Bessel argument must be positive, got min z = {float(np.min(z))!r}; "
            "Y and H diverge at z = 0"
        )
    # scipy's yv returns 0 for subnormal orders; those are order 0 to double precision
    mu = np.where(np.abs(mu) < np.finfo(float).tiny, 0.0, mu)
    return mu, z


def _finite(values, what, mu, z):
    if not np.all(np.isfinite(values)):
        bad = ~np.isfinite(values)
        raise DomainError(
            f"{what} overflows at mu={np.broadcast_to(mu, bad.shape)[bad].ravel()[:3]}, "
            f"z={np.broadcast_to(z, bad.shape)[bad].ravel()[:3]} "
            "(function diverges as z -> 0+)"
        )
    return values


def _out(values):
    return values[()] if isinstance(values, np.ndarray) and values.ndim == 0 else values


def bessel_j(mu, z):
    """Bessel function of the first kind ``J_mu(z)`` for ``z > 0``."""
    mu, z = _check(mu, z)
    return _out(_finite(sc.jv(mu, z), "J", mu, z))


def bessel_y(mu, z):
    """Bessel function of the second kind ``Y_mu(z)`` for ``z > 0``.

    Raises
    ------
    DomainError
        If ``z <= 0`` or the value overflows double precision (``Y`` is
        singular at the origin).
    """
    mu, z = _check(mu, z)
    return _out(_finite(sc.yv(mu, z), "Y", mu, z))


def hankel1(mu, z):
    """Hankel function of the first kind, ``J_mu(z) + 1j * Y_mu(z)``."""
    mu, z = _check(mu, z)
    j = _finite(sc.jv(mu, z), "J", mu, z)
    y = _finite(sc.yv(mu, z), "Y", mu, z)
    return _out(j + 1j * y)


def hankel2(mu, z):
    """Hankel function of the second kind; the exact conjugate of :func:`hankel1`."""
    return np.conj(hankel1(mu, z))


def bessel(kind: str, mu, z):
    """Dispatch to one of ``J``, ``Y``, ``H1``, ``H2``."""
    try:
        fn = {"J": bessel_j, "Y": bessel_y, "H1": hankel1, "H2": hankel2}[kind]
    except KeyError:
        raise ValueError(f"kind must be one of {KINDS}, got {kind!r}") from None
    return fn(mu, z)


def bessel_derivative(mu, z, kind: str = "J"):
    """Derivative ``dF_mu/dz`` of the Bessel-type function ``kind``.

    Parameters
    ----------
    mu : float or array_like
        Real order.
    z : float or array_like
        Positive real argument.
    kind : {"J", "Y", "H1", "H2"}

    Returns
    -------
    float, complex or ndarray
        ``F_{mu-1}(z) - (mu / z) F_mu(z)``.
    """
    mu_arr, z_arr = _check(mu, z)
    return bessel(kind, mu_arr - 1.0, z_arr) - (mu_arr / z_arr) * bessel(kind, mu_arr, z_arr)
