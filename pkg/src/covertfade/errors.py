"""Exception types shared across the library."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class NumericError(RuntimeError):
    """A numerical routine (quadrature, root-finding, minimization) failed."""


class DegenerateHypothesesError(ValueError):
    """The two detection hypotheses coincide; no unique optimum exists."""
