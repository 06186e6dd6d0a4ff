"""Exception hierarchy shared by all modules."""


class BstarError(Exception):
    """Base class for every error raised by this package."""


class NonExact(BstarError, ArithmeticError):
    """A polynomial division that was required to be exact left a remainder."""


class InternalInconsistency(BstarError):
    """An identity guaranteed by the mathematics failed: this is a bug."""


class ComposeVerificationFailure(InternalInconsistency):
    pass


class VariableClash(BstarError, ValueError):
    """Two objects that must live on disjoint variable sets share a variable."""


class ParameterMismatch(BstarError, ValueError):
    pass


class ZeroBase(BstarError, ValueError):
    pass


class BaseMismatch(BstarError, ValueError):
    pass


class BadExponent(BstarError, ValueError):
    pass


class NotWeightedHomogeneous(BstarError, ValueError):
    pass


class NotApplicable(BstarError, ValueError):
    pass


class ExprSyntaxError(BstarError, ValueError):
    """Malformed expression text. ``position`` is a 0-based character offset."""

    def __init__(self, message, position=None, text=None):
        self.position = position
        self.text = text
        if position is not None:
            message = f"{message} at position {position}"
        super().__init__(message)


class UndeclaredVariable(ExprSyntaxError):
    pass


class NonRationalRoot(ExprSyntaxError):
    pass
