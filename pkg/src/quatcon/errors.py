"""Exception hierarchy shared by all quatcon modules."""


class QuatconError(Exception):
    """Base class for every error raised by this package."""


class ParseError(QuatconError, ValueError):
    """Malformed quaternion literal or matrix file.

    ``line`` and ``col`` are 1-based; ``line`` is None for a bare literal.
    """

    def __init__(self, message, line=None, col=None):
        self.message = message
        self.line = line
        self.col = col
        where = ""
        if line is not None:
            where = f"line {line}, col {col}: "
        elif col is not None:
            where = f"col {col}: "
        super().__init__(where + message)


class ShapeMismatch(QuatconError, ValueError):
    pass


class NotSquare(ShapeMismatch):
    pass


class DivisionByZero(QuatconError, ZeroDivisionError):
    pass


class NotInvolutive(QuatconError, ValueError):
    pass


class ExactFrameUnavailable(QuatconError, ValueError):
    pass


class EigenvaluesNotGaussianRational(QuatconError, ArithmeticError):
    """The characteristic polynomial has a factor with no roots in Q(i)."""

    def __init__(self, residual):
        self.residual = residual
        super().__init__(
            "characteristic polynomial does not split over Q(i); "
            f"residual factor coefficients (low to high): {residual}"
        )


class CertificateError(QuatconError, RuntimeError):
    """A computed certificate failed its own substitution check (a bug)."""
