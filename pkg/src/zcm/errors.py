"""Exception hierarchy shared by every numerical module."""


class ZcmError(Exception):
    """Base class for all errors raised by this package."""


class PoleError(ZcmError, ValueError):
    """Evaluation requested at a pole of the function."""


class DomainError(ZcmError, ValueError):
    """Argument outside the domain where the operation is defined."""


class NonConvergence(ZcmError, ArithmeticError):
    """An iterative or adaptive procedure exhausted its budget.

    Quadrature attaches its best result so far as ``partial``.
    """

    partial = None


class NonFiniteResult(ZcmError, ArithmeticError):
    """A result overflowed or became NaN; never returned silently."""


class SingularJacobian(ZcmError, ArithmeticError):
    """|zeta'(s)| too small for the Jacobian weight 1/|zeta'(s)|."""


class BoundaryTooClose(ZcmError, ArithmeticError):
    """A zero lies too close to the contour for reliable phase tracking."""


class NotBracketed(ZcmError, ArithmeticError):
    """The search interval does not contain a solution."""
