"""Exception hierarchy shared by all modules."""


class ZetaAuditError(Exception):
    """Base class for every error raised by this package."""


class PoleError(ZetaAuditError, ValueError):
    """Argument sits on (or numerically at) a pole."""


class NearZeroError(ZetaAuditError, ValueError):
    """A divisor such as zeta(s) is too close to zero to be trusted."""


class DomainError(ZetaAuditError, ValueError):
    """Arguments violate the documented precondition."""


class NoConvergence(ZetaAuditError, RuntimeError):
    """Adaptive refinement budget exhausted before meeting tolerance."""


class NonFinite(ZetaAuditError, FloatingPointError):
    """An integrand produced nan or inf at a quadrature node."""


class TruncationInsufficient(ZetaAuditError, ValueError):
    """The tail bound cannot be met inside the allowed truncation window."""


class ParseError(ZetaAuditError, ValueError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ValidationError(ZetaAuditError, ValueError):
    def __init__(self, message, index=None, value=None):
        self.index = index
        self.value = value
        super().__init__(message)


class OrderError(ZetaAuditError, ValueError):
    """Zero ordinates are not strictly ascending."""


class NotFound(ZetaAuditError, LookupError):
    """No sign change located inside the search window."""
