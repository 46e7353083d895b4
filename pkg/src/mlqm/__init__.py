"""Deformed harmonic oscillators solved through Poschl-Teller ladder algebras, with numerical oracles."""
from .errors import ComputationError, ConfigurationError, DomainError
from .params import ModelParams1D, derive_params
from .ddim import DdimParams, ddim_derive

__version__ = "0.1.0"

__all__ = [
    "ComputationError",
    "ConfigurationError",
    "DomainError",
    "ModelParams1D",
    "derive_params",
    "DdimParams",
    "ddim_derive",
    "__version__",
]
