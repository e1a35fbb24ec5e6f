"""Coherent and cat states of the rationally extended oscillator built on
type-III Hermite exceptional polynomials."""

from .coherent import (CatSpec, CoherentSpec, cat_state, coherent_a, coherent_c, coherent_ctilde,
                       coherent_state, overlap_D)
from .config import DEFAULT_CONFIG, SystemConfig
from .dynamics import (DensityField, EnergyCurve, cat_density_report, density, density_field,
                       energy_closed_form_c, energy_expectation, evolve)
from .errors import (BadIndex, BadMu, DegenerateCat, ExhoError, LadderMismatch, ParameterPole,
                     SingularRegion, TruncationCapError)
from .ladder import CoefficientVector, LadderKind
from .spectrum import SpatialGrid, SystemTag

__all__ = [
    "BadIndex", "BadMu", "CatSpec", "CoefficientVector", "CoherentSpec", "DEFAULT_CONFIG",
    "DegenerateCat", "DensityField", "EnergyCurve", "ExhoError", "LadderKind", "LadderMismatch",
    "ParameterPole", "SingularRegion", "SpatialGrid", "SystemConfig", "SystemTag",
    "TruncationCapError", "cat_density_report", "cat_state", "coherent_a", "coherent_c",
    "coherent_ctilde", "coherent_state", "density", "density_field", "energy_closed_form_c",
    "energy_expectation", "evolve", "overlap_D",
]
