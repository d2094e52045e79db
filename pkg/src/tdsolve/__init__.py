"""Closed-form solutions of the oscillator family
``H = 1/2 (t_o/t)^a P^2 + 1/2 omega^2 (t/t_o)^b X^2`` in three equivalent pictures.

* ``TQ``: the quadratic Hamiltonian itself, with a dilation (``D``) term.
* ``TM``: time-dependent mass, obtained from TQ by the dilation ``exp(i nu D)``.
* ``TO``: unit mass with a time-dependent spring, obtained from TM by the
  time change ``dt' = (t_o/t)^a dt``.
"""

from .errors import ConvergenceError, DomainError, RegimeError
from .lie import OperatorCoeffs, build_generators, commutator
from .observables import PhasePoint, SqueezeState, expval_p, expval_x, trace, uncertainties
from .oracle import IntegratorConfig, integrate_classical, integrate_gamma
from .regimes import Params, Picture, SystemKey, TimeDomain, classify, tprime_domain
from .special import bessel_derivative, bessel_j, bessel_y, hankel1, hankel2
from .timemaps import g2, nu, scaled_time, t_from_tprime, t_prime, tprime_offset
from .tm_functions import tm_phi, tm_xi
from .to_functions import to_aux, to_phi, to_xi
from .tq_functions import tq_coeffs, tq_xi

__version__ = "0.1.0"

__all__ = [
    "ConvergenceError", "DomainError", "RegimeError",
    "OperatorCoeffs", "build_generators", "commutator",
    "PhasePoint", "SqueezeState", "expval_p", "expval_x", "trace", "uncertainties",
    "IntegratorConfig", "integrate_classical", "integrate_gamma",
    "Params", "Picture", "SystemKey", "TimeDomain", "classify", "tprime_domain",
    "bessel_derivative", "bessel_j", "bessel_y", "hankel1", "hankel2",
    "g2", "nu", "scaled_time", "t_from_tprime", "t_prime", "tprime_offset",
    "tm_phi", "tm_xi", "to_aux", "to_phi", "to_xi", "tq_coeffs", "tq_xi",
]
