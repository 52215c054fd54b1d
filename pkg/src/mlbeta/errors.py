"""Exception hierarchy shared by every module."""


class MLBetaError(Exception):
    """Base class for all library errors."""


class ParameterError(MLBetaError, ValueError):
    """A parameter violates a stated precondition."""


class DomainError(ParameterError):
    """An argument lies outside the region where the function is defined."""


class PoleError(DomainError):
    """A gamma argument hit a nonpositive integer."""


class ConvergenceError(MLBetaError, ArithmeticError):
    """A series or quadrature did not reach its tolerance within the budget."""

    def __init__(self, message, partial=None, terms_used=None):
        super().__init__(message)
        self.partial = partial
        self.terms_used = terms_used


class QuadratureError(ConvergenceError):
    """The tanh-sinh refinement hit its node cap before agreeing."""
