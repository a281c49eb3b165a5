"""Exception types shared across the package."""


class PresentationError(ValueError):
    """A ring presentation or map has the wrong shape or out-of-range data.

    Structural problems raise; axiom failures are reported instead, see
    the validation report types in :mod:`skewsep.rings`.
    """


class ContextMismatchError(ValueError):
    """Two elements from different rings or contexts were combined."""


class CapExceededError(RuntimeError):
    """An enumeration or degree bound was exceeded."""

    def __init__(self, what, size, cap):
        super().__init__(f"{what}: size {size} exceeds cap {cap}")
        self.what = what
        self.size = size
        self.cap = cap


class AssumptionError(RuntimeError):
    """A precondition on the twist maps or coefficients does not hold."""


class NotInvariantError(ValueError):
    """The modulus polynomial does not generate a two-sided ideal."""


class WitnessDomainError(ValueError):
    """A proposed witness lies outside the required centralizer."""
