"""Exception types raised across the package."""

import numpy as np


class InvalidParameterError(ValueError):
    """A distribution or model parameter is outside its admissible range."""


class DomainError(ValueError):
    """A function was evaluated outside its mathematical domain."""


class DimensionMismatchError(ValueError):
    pass


class FactorizationError(np.linalg.LinAlgError):
    """A matrix that must be symmetric positive definite is not."""


class NumericalCorruptionError(ArithmeticError):
    """Posterior state became inconsistent (e.g. non-positive beta)."""


class ConfigurationError(ValueError):
    pass
