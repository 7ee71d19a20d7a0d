"""Exception types shared across the package."""


class KernelWalkError(Exception):
    """Base class for all errors raised by this package."""


class NotSemisimple(KernelWalkError):
    """ker(I-P) meets im(I-P) nontrivially; no spectral projection at 1."""


class SingularMatrix(KernelWalkError):
    pass


class InconsistentSystem(KernelWalkError):
    pass


class DimensionMismatch(KernelWalkError):
    pass


class StructureViolation(KernelWalkError):
    """Kernel cell structure is not the expected rectangular group grid."""


class IndexOutOfRange(KernelWalkError):
    pass


class SupportLeak(KernelWalkError):
    """Limit measure puts mass outside the kernel."""


class SizeCap(KernelWalkError):
    """Permanent requested for a submatrix above the configured cap."""


class NotSymmetricZeroDiag(KernelWalkError):
    pass


class NotStochastic(KernelWalkError):
    pass


class TwoColorOnly(KernelWalkError):
    """Operation is defined only for exactly two colors."""


class ZeroTopLevel(KernelWalkError):
    """Marginal descent started from a vanishing top-level projection."""


class CrossCheckMismatch(KernelWalkError):
    """Two independent computation routes disagree."""


class ParseError(KernelWalkError):
    pass


class NotRegular(KernelWalkError):
    """Adjacency input is not d-out regular or colors do not partition it."""


class NotStronglyConnected(KernelWalkError):
    pass


class NotAperiodic(KernelWalkError):
    pass


class BudgetExceeded(KernelWalkError):
    """Enumeration stopped at the budget before exhausting the space."""
