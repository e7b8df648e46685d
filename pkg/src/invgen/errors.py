"""Exception hierarchy shared by every invgen module."""


class InvgenError(Exception):
    """Base class for all library errors."""


class AmbientMismatch(InvgenError, ValueError):
    pass


class NoSolution(InvgenError):
    pass


class NotTotallyIsotropic(InvgenError, ValueError):
    pass


class NonSquareScalar(InvgenError):
    """A square root needed for normalization does not exist in the field."""


class ProfileMismatch(InvgenError, ValueError):
    pass


class FormMismatch(InvgenError):
    pass


class FieldNotFinite(InvgenError, ValueError):
    pass


class EnumerationTooLarge(InvgenError):
    def __init__(self, size, cap):
        super().__init__(f"enumeration size {size} exceeds cap {cap}")
        self.size = size
        self.cap = cap


class EigenvaluesNotDistinctOrNotRational(InvgenError, ValueError):
    pass


class FieldTooSmall(InvgenError):
    pass


class EmptyStratum(InvgenError, ValueError):
    pass


class InsufficientData(InvgenError, ValueError):
    pass


class AllZeroCounts(InvgenError, ValueError):
    pass


class SchemaError(InvgenError, ValueError):
    """Malformed JSON input."""
