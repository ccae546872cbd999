"""Exception types shared across the package."""


class SymtomoError(Exception):
    """Base class for all library errors."""


class ConfigError(SymtomoError, ValueError):
    """Invalid configuration (grid parameters, file formats, CLI input)."""


class DomainError(SymtomoError, ValueError):
    """Operation called outside its mathematical domain."""


class NotFreeError(DomainError):
    """The upper-right block of a symplectic matrix is singular."""


class UnsupportedOperation(SymtomoError, ValueError):
    """Requested variant is outside the implemented scope."""


class ModelMismatchError(SymtomoError, ValueError):
    """Input data is inconsistent with the assumed pure-Gaussian model."""


class AmbiguousSignError(SymtomoError, ValueError):
    """The covariance sign cannot be resolved from the supplied data."""


class AccuracyWarning(UserWarning):
    """The requested computation ran outside its stated accuracy envelope."""
