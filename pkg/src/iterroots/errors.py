"""Exception types shared across the package."""


class IterrootsError(Exception):
    """Base class for all errors raised by this package."""


class ContextMismatch(IterrootsError):
    """Operands belong to different rings, or to the wrong ring for an operation."""


class OrderMismatch(IterrootsError):
    """Series or matrix operands have different truncation orders."""


class NotAUnit(IterrootsError):
    """A ring element that must be invertible is not."""


class CompositionDomain(IterrootsError):
    """The inner series of a composition has a nonzero constant term."""


class NotInSubstitutionGroup(IterrootsError):
    """Series is not of the form x + c2*x^2 + ... (constant term 0, linear term 1)."""


class NotRiordanPair(IterrootsError):
    """A generating pair (f, g) violates f(0) = 1, g(0) = 0 or g'(0) = 1."""


class NotRiordan(IterrootsError):
    """A matrix is not generated by any valid pair.

    ``position`` holds the first (row, column) at which reconstruction from
    the extracted pair fails, or at which the shape requirements (lower
    triangular, unit diagonal) are violated.
    """

    def __init__(self, message, position=None):
        super().__init__(message)
        self.position = position


class BranchingUnsupported(IterrootsError):
    """Branch enumeration was requested over an infinite ring."""


class EnumerationBoundExceeded(IterrootsError):
    """An exhaustive enumeration is larger than the configured bound."""


class InternalInconsistency(IterrootsError):
    """Two redundant computations of the same object disagreed (a bug, not bad input)."""
