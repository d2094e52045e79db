"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain where a function is defined."""


class RegimeError(ValueError):
    """A parameter tuple cannot be classified for the requested picture."""


class ConvergenceError(RuntimeError):
    """Step halving changed an integration result by more than the tolerance."""
