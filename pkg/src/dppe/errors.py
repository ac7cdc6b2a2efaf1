"""Exception hierarchy shared by all modules."""


class DPPEError(Exception):
    """Base class for errors raised by this package."""


class DivisionByZero(DPPEError, ZeroDivisionError):
    pass


class DivisionByZeroOperator(DPPEError, ZeroDivisionError):
    pass


class AllZeroOperators(DPPEError, ValueError):
    pass


class ZeroPolynomial(DPPEError, ValueError):
    pass


class ZeroDivisor(DPPEError, ZeroDivisionError):
    pass


class NonRepresentable(DPPEError, ValueError):
    """A polynomial in X is not of the form sum L_i(x_i - a_i)."""


class EmptyHomogeneousSet(DPPEError, ValueError):
    """The homogeneous resultant needs N >= 1."""


class OrderEscalation(DPPEError, ValueError):
    """A perturbation changed the orders or completeness indices of the system."""


class ZeroResultant(DPPEError, ArithmeticError):
    def __init__(self, message, tried=()):
        super().__init__(message)
        self.tried = tuple(tried)


class InvalidSystem(DPPEError, ValueError):
    pass


class DPPESyntaxError(DPPEError, SyntaxError):
    def __init__(self, message, line=None, column=None):
        loc = ""
        if line is not None:
            loc = f" (line {line}, column {column})"
        super().__init__(message + loc)
        self.message = message
        self.line = line
        self.column = column


class SemanticError(DPPEError, ValueError):
    def __init__(self, message, line=None):
        super().__init__(message if line is None else f"{message} (line {line})")
        self.message = message
        self.line = line


class InconsistentResult(DPPEError, RuntimeError):
    """An internal bound that the theory guarantees was violated."""
