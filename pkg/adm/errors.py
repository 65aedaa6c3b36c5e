"""Exception hierarchy shared by every adm module."""


class AdmError(Exception):
    """Base class for all library errors."""


class LatticeMismatchError(AdmError):
    """Two fields live on different wave lattices."""


class FieldInvariantError(AdmError):
    """A spectral field violates zero-mean, Hermitian or solenoidal invariants."""


class NonInvertibleFilterError(AdmError):
    """The filter has no bounded inverse on the truncated lattice."""

    def __init__(self, kind: str):
        super().__init__(f"non-invertible filter: {kind}")
        self.kind = kind


class FilterVariantError(AdmError):
    """The operation is only defined for some filter variants."""


class BlowUpError(AdmError):
    """Non-finite values appeared during time stepping."""

    def __init__(self, step: int, run: str = "dns"):
        super().__init__(f"blow-up in {run} run at step {step}")
        self.step = step
        self.run = run


class DomainError(AdmError):
    """Arguments outside the domain of a scalar inequality."""


class EmptyGridError(AdmError):
    """A sweep or property check received no sample points."""


class ConfigError(AdmError):
    """Configuration file missing, unreadable or invalid."""


class SnapshotFormatError(AdmError):
    """An ADMF snapshot could not be decoded."""
