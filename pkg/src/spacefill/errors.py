"""Exception hierarchy shared by every module."""


class SpaceFillError(Exception):
    """Base class for all errors raised by :mod:`spacefill`."""


class ArgumentError(SpaceFillError, ValueError):
    pass


class SizeError(SpaceFillError, ValueError):
    """A cell or pattern would exceed the configured node budget."""


class PathValidationError(SpaceFillError, ValueError):
    """The node sequence is not a usable Manhattan Hamiltonian path.

    ``index`` names the first offending node (or step), when there is one.
    """

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class OrientationRuleError(SpaceFillError):
    """The entry/exit orientation rules do not work for this cell.

    ``t`` is the first node index at which they break down.
    """

    def __init__(self, message, t=None):
        super().__init__(message)
        self.t = t


class ParseError(SpaceFillError, ValueError):
    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class RangeError(SpaceFillError, ValueError):
    """A lattice coordinate lies outside the range an operation accepts."""


class DomainError(SpaceFillError, ValueError):
    """A real-valued argument lies outside the unit (or centered) domain."""


class UnsupportedClassError(SpaceFillError):
    """The operation is not defined for this class of cell."""


class FitError(SpaceFillError, ValueError):
    pass
