"""Exception hierarchy shared by all modules."""


class QSL4Error(Exception):
    """Base class for every error raised by the package."""


class InputError(QSL4Error, ValueError):
    """Malformed or invalid user input (parse errors, bad degrees, bad parameters)."""

    def __init__(self, message: str, position: int | None = None):
        super().__init__(message if position is None else f"{message} (at position {position})")
        self.position = position


class DegreeError(InputError):
    pass


class ConstraintViolation(InputError):
    """Family parameters violate a declared domain constraint."""

    def __init__(self, message: str, constraint: str):
        super().__init__(message)
        self.constraint = constraint


class DegenerateInput(QSL4Error, ValueError):
    """Input lacks the structure an operation requires (e.g. zero degree in the eliminated variable)."""


class InexactDivision(QSL4Error, ArithmeticError):
    pass


class InternalInconsistency(QSL4Error, AssertionError):
    """Two independent computations that must agree did not."""


class NotInvariant(QSL4Error):
    """A proposed line fails the cofactor test."""


class NonSplit(QSL4Error):
    """Roots left the exact scalar tower and numeric certification failed."""


class IncompatibleExtension(QSL4Error, ArithmeticError):
    """Arithmetic between two different quadratic extensions was attempted."""


class UnsupportedSystem(QSL4Error):
    """The line at infinity consists only of singular points (C2 = 0)."""


class NoPerturbation(QSL4Error, KeyError):
    pass
