r"""Symmetry generators as coefficient vectors over ``{T, D, X^2, P^2, X, P, I}``.

``T = i d/dt`` (``hbar = 1``) and ``D = (XP + PX)/2``.  A generator is a list
of time-dependent coefficients, one per basis element, stored together with
their analytic time derivatives so that commutators with ``T`` are exact:

    [T, c(t) A] = i c'(t) A      for a time-independent basis element ``A``.

The remaining brackets follow from ``[X, P] = i``::

    [D, X] = -iX     [D, P] = iP      [D, X^2] = -2iX^2   [D, P^2] = 2iP^2
    [X^2, P^2] = 4iD [X^2, P] = 2iX   [P^2, X] = -2iP     [X, P] = iI
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .regimes import Params, Picture, SystemKey, classify
from .timemaps import _positive_time, g2, g2_dot, nu_dot
from .tm_functions import tm_phi, tm_xi
from .to_functions import to_phi, to_xi
from .tq_functions import tq_coeffs, tq_xi

__all__ = [
    "BASIS",
    "STRUCTURE",
    "OperatorCoeffs",
    "Generators",
    "commutator",
    "commutator_operator",
    "build_generators",
    "schroedinger_operator",
    "algebra_residuals",
    "jacobi_residual",
]

BASIS = ("T", "D", "X2", "P2", "X", "P", "I")
T, D, X2, P2, X, P, I = range(7)


def _structure() -> np.ndarray:
    c = np.zeros((7, 7, 7), dtype=complex)
    table = {
        (D, X): {X: -1j},
        (D, P): {P: 1j},
        (D, X2): {X2: -2j},
        (D, P2): {P2: 2j},
        (X2, P2): {D: 4j},
        (X2, P): {X: 2j},
        (P2, X): {P: -2j},
        (X, P): {I: 1j},
    }
    for (i, j), out in table.items():
        for k, v in out.items():
            c[i, j, k] = v
            c[j, i, k] = -v
    return c


STRUCTURE = _structure()
STRUCTURE.setflags(write=False)


@dataclass(frozen=True)
class OperatorCoeffs:
    """Coefficient functions and their time derivatives over :data:`BASIS`."""

    value: Callable[[float], np.ndarray]
    derivative: Callable[[float], np.ndarray]
    name: str = ""

    def __call__(self, t: float) -> np.ndarray:
        return np.asarray(self.value(t), dtype=complex)

    def d(self, t: float) -> np.ndarray:
        return np.asarray(self.derivative(t), dtype=complex)

    def __add__(self, other: "OperatorCoeffs") -> "OperatorCoeffs":
        return OperatorCoeffs(lambda t: self(t) + other(t), lambda t: self.d(t) + other.d(t))

    def __neg__(self) -> "OperatorCoeffs":
        return self.scaled(-1.0)

    def __sub__(self, other: "OperatorCoeffs") -> "OperatorCoeffs":
        return self + (-other)

    def scaled(self, c: complex) -> "OperatorCoeffs":
        return OperatorCoeffs(lambda t: c * self(t), lambda t: c * self.d(t), self.name)

    @classmethod
    def constant(cls, coeffs) -> "OperatorCoeffs":
        arr = np.asarray(coeffs, dtype=complex)
        return cls(lambda t: arr, lambda t: np.zeros(7, dtype=complex))


def _bracket(a, da, b, db):
    out = np.einsum("i,j,ijk->k", a, b, STRUCTURE)
    return out + 1j * a[T] * db - 1j * b[T] * da


def commutator(A: OperatorCoeffs, B: OperatorCoeffs, t: float) -> np.ndarray:
    """Coefficients of ``[A, B]`` at time ``t``."""
    return _bracket(A(t), A.d(t), B(t), B.d(t))


def commutator_operator(A: OperatorCoeffs, B: OperatorCoeffs, rel_step: float = 1e-5) -> OperatorCoeffs:
    """``[A, B]`` as an operator; its derivative is a central difference.

    Only needed for nested brackets (Jacobi identity).
    """

    def deriv(t):
        h = rel_step * max(abs(t), 1.0)
        return (commutator(A, B, t + h) - commutator(A, B, t - h)) / (2.0 * h)

    return OperatorCoeffs(lambda t: commutator(A, B, t), deriv, f"[{A.name},{B.name}]")


@dataclass(frozen=True)
class Generators:
    M: OperatorCoeffs
    J_minus: OperatorCoeffs
    J_plus: OperatorCoeffs
    S: OperatorCoeffs
    picture: Picture
    key: SystemKey


def _vec(**kw) -> np.ndarray:
    out = np.zeros(7, dtype=complex)
    for name, val in kw.items():
        out[BASIS.index(name)] = val
    return out


def _scalar(x):
    return complex(np.asarray(x)) if np.iscomplexobj(x) else float(np.asarray(x))


def _to_generators(p: Params, key: SystemKey):
    def mode(s):
        xi, xd = to_xi(s, p, key)
        return _scalar(xi), _scalar(xd), float(g2(s, p))

    def phis(s):
        _, _, f, fd, fdd = to_phi(s, p, key)
        fddd = -8.0 * float(g2(s, p)) * fd - 4.0 * float(g2_dot(s, p)) * f
        return float(f), float(fd), float(fdd), float(fddd)

    def jm(s):
        xi, xd, _ = mode(s)
        return _vec(P=1j * xi, X=-1j * xd)

    def djm(s):
        xi, xd, g = mode(s)
        return _vec(P=1j * xd, X=2j * g * xi)

    def m(s):
        f, fd, fdd, _ = phis(s)
        return _vec(T=f, D=-0.5 * fd, X2=0.25 * fdd)

    def dm(s):
        _, fd, fdd, fddd = phis(s)
        return _vec(T=fd, D=-0.5 * fdd, X2=0.25 * fddd)

    def sv(s):
        return _vec(T=1.0, P2=-0.5, X2=-float(g2(s, p)))

    def dsv(s):
        return _vec(X2=-float(g2_dot(s, p)))

    return m, dm, jm, djm, sv, dsv


def _tm_generators(p: Params, key: SystemKey):
    a, b, w, t_o = p.a, p.b, p.omega, p.t_o

    def mass(t):  # (t_o/t)^a = dt'/dt
        return math.exp(-a * math.log(t / t_o))

    def spring(t):  # omega^2 (t/t_o)^b
        return w * w * math.exp(b * math.log(t / t_o))

    def phis(t):
        f, fd, fdd = (float(x) for x in tm_phi(t, p, key))
        r = t / t_o
        g = 0.5 * w * w * r ** (a + b)
        gd = 0.5 * w * w * (a + b) / t_o * r ** (2.0 * a + b - 1.0)
        return f, fd, fdd, -8.0 * g * fd - 4.0 * gd * f

    def jm(t):
        xi, xd = (_scalar(x) for x in tm_xi(t, p, key))
        return _vec(P=1j * xi, X=-1j * xd)

    def djm(t):
        xi, xd = (_scalar(x) for x in tm_xi(t, p, key))
        return _vec(P=1j * mass(t) * xd, X=1j * spring(t) * xi)

    def m(t):
        f, fd, fdd, _ = phis(t)
        return _vec(T=f / mass(t), D=-0.5 * fd, X2=0.25 * fdd)

    def dm(t):
        f, fd, fdd, fddd = phis(t)
        c3t_dot = fd + a / t * f / mass(t)  # d(phi3_hat (t/t_o)^a)/dt
        return _vec(T=c3t_dot, D=-0.5 * mass(t) * fdd, X2=0.25 * mass(t) * fddd)

    def sv(t):
        return _vec(T=1.0, P2=-0.5 * mass(t), X2=-0.5 * spring(t))

    def dsv(t):
        return _vec(P2=0.5 * a / t * mass(t), X2=-0.5 * b / t * spring(t))

    return m, dm, jm, djm, sv, dsv


def _tq_generators(p: Params, key: SystemKey):
    a, b, w, t_o = p.a, p.b, p.omega, p.t_o

    def spring(t):  # omega^2 (t/t_o)^(b-a)
        return w * w * math.exp((b - a) * math.log(t / t_o))

    def third(t):
        # phi3_hat''' in t' at t'(t), scaled by (t_o/t)^a e^{-2 nu} / 4 below
        f, fd, _ = (float(x) for x in tm_phi(t, p, key))
        r = t / t_o
        g = 0.5 * w * w * r ** (a + b)
        gd = 0.5 * w * w * (a + b) / t_o * r ** (2.0 * a + b - 1.0)
        return -8.0 * g * fd - 4.0 * gd * f

    def jm(t):
        xp, xx = (_scalar(x) for x in tq_xi(t, p, key))
        return _vec(P=1j * xp, X=-1j * xx)

    def djm(t):
        xp, xx = (_scalar(x) for x in tq_xi(t, p, key))
        nd = float(nu_dot(t, p))
        dxp = xx + nd * xp
        dxx = -spring(t) * xp - nd * xx
        return _vec(P=1j * dxp, X=-1j * dxx)

    def m(t):
        c3t, c3d, c3x2 = (float(x) for x in tq_coeffs(t, p, key))
        return _vec(T=c3t, D=-c3d, X2=c3x2)

    def dm(t):
        c3t, c3d, c3x2 = (float(x) for x in tq_coeffs(t, p, key))
        nd = float(nu_dot(t, p))
        ndd = -0.5 * a / (t * t)
        r2a = math.exp(-2.0 * a * math.log(t / t_o))  # (t_o/t)^a e^{-2 nu}
        d_c3d = 2.0 * c3x2 + ndd * c3t + 2.0 * nd * c3d
        d_c3x2 = 0.25 * third(t) * r2a - 2.0 * nd * c3x2
        return _vec(T=2.0 * c3d, D=-d_c3d, X2=d_c3x2)

    def sv(t):
        return _vec(T=1.0, P2=-0.5, X2=-0.5 * spring(t), D=-0.5 * a / t)

    def dsv(t):
        return _vec(X2=-0.5 * (b - a) / t * spring(t), D=0.5 * a / (t * t))

    return m, dm, jm, djm, sv, dsv


def build_generators(picture, p: Params, key: SystemKey | None = None) -> Generators:
    """``M``, ``J_-``, ``J_+`` and the Schroedinger operator ``S`` of a picture.

    Time is the offset ``t' - t_o'`` for TO and ``t`` for TM/TQ.  ``J_+`` is the
    coefficient-wise complex conjugate of ``J_-``.
    """
    picture = Picture.parse(picture)
    key = classify(p, picture) if key is None else key
    builder = {Picture.TO: _to_generators, Picture.TM: _tm_generators, Picture.TQ: _tq_generators}[picture]
    m, dm, jm, djm, sv, dsv = builder(p, key)
    M = OperatorCoeffs(m, dm, "M")
    Jm = OperatorCoeffs(jm, djm, "J-")
    Jp = OperatorCoeffs(lambda t: np.conj(jm(t)), lambda t: np.conj(djm(t)), "J+")
    S = OperatorCoeffs(sv, dsv, "S")
    return Generators(M, Jm, Jp, S, picture, key)


def schroedinger_operator(picture, p: Params) -> OperatorCoeffs:
    """``S = T - H`` of the picture."""
    return build_generators(picture, p).S


def _mod_s(res: np.ndarray, s: np.ndarray) -> float:
    """Norm of ``res`` after removing its least-squares multiple of ``s``."""
    lam = np.vdot(s, res) / np.vdot(s, s)
    return float(np.linalg.norm(res - lam * s))


def algebra_residuals(gens: Generators, t: float) -> dict:
    """Residual norms of ``[M, J-] = -J-``, ``[M, J+] = J+``, ``[J-, J+] = I``.

    ``off_shell`` compares coefficient vectors directly; ``on_shell`` first
    removes any multiple of the Schroedinger operator.
    """
    one = np.zeros(7, dtype=complex)
    one[I] = 1.0
    res = {
        "M,J-": commutator(gens.M, gens.J_minus, t) + gens.J_minus(t),
        "M,J+": commutator(gens.M, gens.J_plus, t) - gens.J_plus(t),
        "J-,J+": commutator(gens.J_minus, gens.J_plus, t) - one,
    }
    s = gens.S(t)
    return {
        name: {"off_shell": float(np.linalg.norm(r)), "on_shell": _mod_s(r, s)}
        for name, r in res.items()
    }


def jacobi_residual(A: OperatorCoeffs, B: OperatorCoeffs, C: OperatorCoeffs, t: float) -> float:
    """Norm of ``[A,[B,C]] + [B,[C,A]] + [C,[A,B]]``."""
    total = (
        commutator(A, commutator_operator(B, C), t)
        + commutator(B, commutator_operator(C, A), t)
        + commutator(C, commutator_operator(A, B), t)
    )
    return float(np.linalg.norm(total))
