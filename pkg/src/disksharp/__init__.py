"""Sharp pointwise gradient constants for harmonic Hardy-space functions on the disk."""
from .constants import (
    ConstantReport,
    Exponent,
    Method,
    directional_constant,
    global_constant,
    gradient_constant,
    gradient_constant_closed,
    mr_factor,
    wirtinger_constant,
    wirtinger_constant_global,
)
from .errors import ConsistencyError, ConvergenceError, DiskSharpError, DomainError, NumericalError
from .hardy import HarmonicExtension, Sampled, TrigPoly, bloch_constant, hardy_norm, lp_norm
from .kernel import DiskPoint, Direction

__all__ = [
    "ConstantReport",
    "Exponent",
    "Method",
    "directional_constant",
    "global_constant",
    "gradient_constant",
    "gradient_constant_closed",
    "mr_factor",
    "wirtinger_constant",
    "wirtinger_constant_global",
    "ConsistencyError",
    "ConvergenceError",
    "DiskSharpError",
    "DomainError",
    "NumericalError",
    "HarmonicExtension",
    "Sampled",
    "TrigPoly",
    "bloch_constant",
    "hardy_norm",
    "lp_norm",
    "DiskPoint",
    "Direction",
]

__version__ = "0.1.0"
