"""Exception hierarchy shared by every module of the package."""


class FuchsianError(Exception):
    """Base class for all package errors."""


class DomainError(FuchsianError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class NumericError(FuchsianError, ArithmeticError):
    pass


class UnsupportedGroup(FuchsianError, KeyError):
    pass


class NoCircle(FuchsianError, ValueError):
    """The element fixes infinity (lower-left entry zero) and has no isometric circle."""


class CapError(FuchsianError, ValueError):
    pass


class CenterError(FuchsianError, ValueError):
    pass


class DuplicateError(FuchsianError, ValueError):
    pass


class NonTermination(FuchsianError, RuntimeError):
    pass


class NotInImage(FuchsianError, ValueError):
    pass


class Unsupported(FuchsianError, NotImplementedError):
    pass
