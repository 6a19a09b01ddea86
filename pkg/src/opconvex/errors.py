"""Exception hierarchy shared by all modules."""


class OpConvexError(Exception):
    """Base class for all toolkit errors."""


class InputError(OpConvexError):
    """Malformed operand: wrong shape, non-finite entries, invalid rank."""


class ConfigError(OpConvexError):
    """Invalid configuration value (unknown catalog name, bad parameter,
    unbounded sampling interval, out-of-range run settings)."""


class DomainError(OpConvexError):
    """Scalar evaluation point outside the function's interval."""


class SpectrumDomainError(OpConvexError):
    """An eigenvalue of a matrix argument escapes the function's domain."""

    def __init__(self, message, eigenvalue=None):
        super().__init__(message)
        self.eigenvalue = eigenvalue


class ConstructionError(OpConvexError):
    """A constructor precondition failed; carries the witness point."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class DerivativeRequiredError(OpConvexError):
    """The operation needs deriv1/deriv2 but the function lacks them."""


class StepTooLargeError(OpConvexError):
    """Finite-difference step pushed the perturbed spectrum out of domain."""


class SingularityError(OpConvexError):
    """A block that must be inverted is not strictly positive definite."""


class PreconditionError(OpConvexError):
    """Structural precondition of a check violated (not an inequality
    failure): p not a projection, weights not a probability measure, ..."""


class StructureError(OpConvexError):
    """Shape-level mismatch, e.g. isometry complement not one-dimensional."""


class FnSpecParseError(OpConvexError):
    """Syntax error in a function-spec string; carries byte offset and the
    token set that would have been accepted."""

    def __init__(self, message, position, expected=()):
        super().__init__(message)
        self.position = position
        self.expected = tuple(expected)
