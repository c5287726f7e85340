"""Exception types shared across the package.

The CLI maps these onto exit statuses: configuration problems exit 1,
data problems exit 2, and failed identity or inequality checks exit 3.
"""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class DataIntegrityError(ValueError):
    """Input data violates an invariant it is guaranteed to satisfy (e.g. Hasse)."""


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ValidationError(ValueError):
    pass


class CacheCorruptionError(RuntimeError):
    pass


class EmptySampleError(ValueError):
    pass


class TruncationError(ValueError):
    """A requested cutoff lies beyond the range the data covers."""


class IdentityViolation(AssertionError):
    """An exact algebraic identity failed numerically beyond tolerance."""


class SandwichViolation(AssertionError):
    pass


class DegreeMismatch(AssertionError):
    pass
