"""Exceptions shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain an operation is defined on."""


class ConvergenceError(RuntimeError):
    """An adaptive summation hit its term cap before certifying its tolerance.

    The partially converged evaluation, when available, is attached as
    ``report`` so callers can inspect the best estimate and its warnings.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report
