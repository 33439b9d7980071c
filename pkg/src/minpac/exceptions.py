"""Exception hierarchy shared by every module."""


class MinPACError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInstance(MinPACError, ValueError):
    """Malformed instance data (self-loops, duplicate arcs, bad weights)."""


class NotStronglyConnected(MinPACError, ValueError):
    """A solver entry point received a digraph that is not strongly connected."""


class InvalidArc(MinPACError, KeyError):
    """An arc referenced by a solution or arc set is absent from the instance."""

    def __str__(self):
        return Exception.__str__(self)


class MissingOutArc(MinPACError, ValueError):
    """A vertex has no outgoing arc in an arc set although ``n >= 2``."""


class WeightOverflow(MinPACError, OverflowError):
    """A weight, cost or offset left the unsigned 64-bit range."""


class CapExceeded(MinPACError):
    """A configured resource cap would be exceeded.

    ``value`` holds the offending quantity (component count or number of
    threshold combinations) and ``cap`` the configured limit.
    """

    def __init__(self, message, value=None, cap=None):
        super().__init__(message)
        self.value = value
        self.cap = cap


class Infeasible(MinPACError):
    """No strongly connected spanning subgraph exists."""


class InvalidCover(MinPACError, ValueError):
    """The supplied vertex set is not a vertex cover of the underlying graph."""


class InvalidKernelSolution(MinPACError, ValueError):
    """A kernel solution handed to a lifting routine failed verification."""


class UncoverableElement(MinPACError, ValueError):
    """A Set Cover element belongs to no set, so no cover exists."""


class FormatError(MinPACError, ValueError):
    """A text file violates its line format.  ``line`` is 1-based (0 if unknown)."""

    def __init__(self, line, reason):
        super().__init__(f"line {line}: {reason}" if line else reason)
        self.line = line
        self.reason = reason
