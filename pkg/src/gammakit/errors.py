"""Exception types shared across gammakit."""


class GammakitError(Exception):
    """Base class for all gammakit errors."""


class DegenerateOperator(GammakitError, ValueError):
    """Raised when an operator with beta == 0 is mapped to an algebra."""


class AlgebraMismatch(GammakitError, ValueError):
    """Raised when operands live in algebras with different (l1, l2)."""


class NotInvertible(GammakitError, ZeroDivisionError):
    """Raised when inverting zero or a zero divisor."""


class NotASolution(GammakitError, ValueError):
    """Raised when a polynomial fails a required PDE-solution precondition."""


class UnderDetermined(GammakitError, ValueError):
    """Raised when a collocation system has too few boundary samples."""


class DegenerateBasis(GammakitError, ValueError):
    """Raised when every collocation column is rank deficient."""
