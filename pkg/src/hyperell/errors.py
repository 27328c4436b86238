"""Exception hierarchy shared by all modules."""


class HyperellError(Exception):
    """Base class for all library errors."""


class DomainMismatchError(HyperellError):
    """Operands from different coefficient domains were combined."""


class DivisionByZeroError(HyperellError, ZeroDivisionError):
    """Exact division or inverse of zero was requested."""


class ReduciblePolynomialError(HyperellError):
    """A polynomial required to be irreducible factors nontrivially."""

    def __init__(self, message, factor=None):
        super().__init__(message)
        self.factor = factor


class ResourceLimitError(HyperellError):
    """A configured budget (tower degree, enumeration size, time) was exceeded."""

    def __init__(self, message, stage=None, detail=None):
        super().__init__(message)
        self.stage = stage
        self.detail = detail


class NotDecomposableError(HyperellError):
    """The integration pipeline could not reduce the integrand (FAIL outcome)."""

    def __init__(self, message, stage=None):
        super().__init__(message)
        self.stage = stage


class SingularSystemError(HyperellError):
    """A linear system that should be solvable for generic data was singular."""


class ExtensionRequiredError(HyperellError):
    """The base field lacks a needed root; ``factor`` is what to adjoin."""

    def __init__(self, message, factor=None):
        super().__init__(message)
        self.factor = factor


class BadReductionError(HyperellError):
    """The curve has bad reduction at the requested prime."""


class ParseError(HyperellError):
    """Input text did not match the polynomial grammar."""
