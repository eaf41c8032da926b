"""Positive predictor-corrector solver for cadmium-sulfide photodegradation.

The package integrates the rescaled integro-differential degradation model
with two explicit exponential schemes and provides the tooling used to run
the standard scenarios (base case, absorptivity ratio, UV band, water
penetration), convergence studies and local sensitivity analyses.
"""
from .errors import (CadmiaError, CapacityError, ConfigError, DomainError, FixtureError,
                     GridError)
from .kernel import (ConcentrationField, Grid, discretize, integrate_total, pc_step,
                     predictor_step, saturation, simulate, sulfate_field)
from .scenario import (BCT_PARAMETERS, DimensionalParameters, DimensionlessModel,
                       HumidityProfile, assemble_model, humidity_value, nondimensionalize,
                       toy_model)
from .spectral import (SpectralBand, SpectralCurve, absorptivity_from_reflectance,
                       band_gap_wavelength, epsilon_nu, load_curve,
                       proportional_sulfate_absorptivity)

__version__ = "0.1.0"
