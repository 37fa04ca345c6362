"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain where the model is defined."""


class NumericError(ArithmeticError):
    """A numerical procedure failed (quadrature, denominator, route mismatch).

    Extra keyword arguments are kept on ``diagnostics`` so callers can report
    node counts, residuals or the disagreeing values.
    """

    def __init__(self, message, **diagnostics):
        if diagnostics:
            detail = ", ".join(f"{k}={v!r}" for k, v in diagnostics.items())
            message = f"{message} ({detail})"
        super().__init__(message)
        self.diagnostics = diagnostics


class UsageError(Exception):
    """Invalid command-line or configuration input."""
