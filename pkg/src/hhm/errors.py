"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class NonNegativeRicciError(DomainError):
    """The model has kappa >= 0, so no rescaling reaches Ric = -(n-1)."""


class NotNormalizedError(DomainError):
    """An operation requiring Ric = -(n-1) received an unnormalized model."""


class NotAdmissibleError(DomainError):
    """(k, m) is not an admissible generalized Heisenberg dimension pair."""


class StepTooLargeError(DomainError):
    """Integration step exceeds the documented ceiling."""


class GridTooShortError(DomainError):
    """A sampled grid has too few points for the requested stencil."""


class NoConvergenceError(RuntimeError):
    """Series evaluation hit the term ceiling before reaching tolerance."""


class MaxSubdivisionsError(RuntimeError):
    """Adaptive quadrature could not reach tolerance within the panel budget."""
