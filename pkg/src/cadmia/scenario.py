"""Dimensional parameters, nondimensionalization and humidity profiles.

The rescaled model depends on three groups,

* ``nu = eps_c_ref / eps_g_ref`` (absorptivity ratio),
* ``mu = L * c_ref * eps_g_ref`` (optical thickness scale),
* ``xi = (lambda_M - lambda_m) * w_ref * T_ref * A * exp(-E_a / (R T))``
  (lumped kinetic rate),

together with the dimensionless irradiance, absorptivities and humidity.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, fields, replace
from typing import Callable, Optional, Tuple

import numpy as np

from . import spectral
from .errors import ConfigError, DomainError, FixtureError
from .spectral import SpectralBand, SpectralCurve

NM_TO_CM = 1e-7


@dataclass(frozen=True)
class DimensionalParameters:
    """Physical inputs of a scenario (units as in the parameter table)."""

    L: float          # paint depth, cm
    T_ref: float      # reference time, s
    lambda_m: float   # nm
    lambda_M: float   # nm
    A: float          # cm^2 mol^-1 s^-1
    E_a: float        # activation energy, used as tabulated
    R_gas: float      # J K^-1 mol^-1
    Temp: float       # K
    c_ref: float      # mol cm^-3
    w_ref: float      # mol cm^-3
    w_b: float        # mol cm^-3
    eps_c_ref: float  # cm^2 mol^-1
    eps_g_ref: float  # cm^2 mol^-1
    I_ref: float      # irradiance reference

    def __post_init__(self):
        for f in fields(self):
            v = getattr(self, f.name)
            if not (isinstance(v, (int, float)) and math.isfinite(v) and v > 0):
                raise ConfigError(f"parameter {f.name} must be a positive number, got {v!r}")
        if self.w_b > self.w_ref:
            raise ConfigError(f"w_b ({self.w_b}) must not exceed w_ref ({self.w_ref})")
        if self.lambda_m >= self.lambda_M:
            raise ConfigError("lambda_m must be smaller than lambda_M")

    @property
    def band(self) -> SpectralBand:
        return SpectralBand(self.lambda_m, self.lambda_M)

    @property
    def humidity_ratio(self) -> float:
        return self.w_b / self.w_ref


# Base case values; lambda_M is the CdS band-gap wavelength at 2.42 eV.
BCT_PARAMETERS = DimensionalParameters(
    L=7.00e-3, T_ref=2.30e6, lambda_m=380.0, lambda_M=512.331, A=1.00e8,
    E_a=7.78e-19, R_gas=8.31, Temp=2.98e2, c_ref=3.34e-2, w_ref=1.22e-6,
    w_b=5.77e-7, eps_c_ref=1.64e5, eps_g_ref=6.56e5, I_ref=3.48,
)

# Thickness of the sulfate crust used when converting reflectance, cm.
CRUST_THICKNESS_CM = 1e-4


def nondimensionalize(p: DimensionalParameters) -> Tuple[float, float, float]:
    """Return ``(nu, mu, xi)`` for the given physical parameters.

    The wavelength span is converted from nm to cm inside ``xi`` so that it
    cancels the cm^2 of the Arrhenius pre-factor against ``w_ref``.
    """
    nu = p.eps_c_ref / p.eps_g_ref
    mu = p.L * p.c_ref * p.eps_g_ref
    xi = ((p.lambda_M - p.lambda_m) * NM_TO_CM * p.w_ref * p.T_ref * p.A
          * math.exp(-p.E_a / (p.R_gas * p.Temp)))
    return nu, mu, xi


@dataclass(frozen=True, eq=False)
class HumidityProfile:
    """Dimensionless water content ``w(z)`` on the paint depth [0, 1].

    Variants
    --------
    ``linear_bct``  ``(1 - w_b/w_ref) (1 - z)``
    ``sheet``       ``linear_bct`` restricted to the surface sheet ``z <= L_s``
    ``constant``    ``1 - w_b/w_ref``
    ``tabulated``   piecewise-linear through ``knots`` (pairs ``(z, w)``)
    """

    variant: str = "linear_bct"
    w_b_over_w_ref: float = 0.0
    L_s: Optional[float] = None
    knots: Optional[Tuple[Tuple[float, float], ...]] = None

    VARIANTS = ("linear_bct", "sheet", "constant", "tabulated")

    def __post_init__(self):
        if self.variant not in self.VARIANTS:
            raise ConfigError(f"unknown humidity variant {self.variant!r}")
        if not 0.0 <= self.w_b_over_w_ref <= 1.0:
            raise ConfigError("w_b / w_ref must lie in [0, 1]")
        if self.variant == "sheet":
            if self.L_s is None or not 0.0 < self.L_s <= 1.0:
                raise ConfigError(f"sheet profile needs 0 < L_s <= 1, got {self.L_s!r}")
        if self.variant == "tabulated":
            if not self.knots:
                raise ConfigError("tabulated profile needs knots")
            z, w = np.asarray(self.knots, dtype=float).T
            if z[0] != 0.0 or z[-1] != 1.0 or np.any(np.diff(z) <= 0):
                raise FixtureError("humidity knots must increase strictly from 0 to 1")
            if np.any(w < 0) or np.any(w > 1):
                raise FixtureError("humidity values must lie in [0, 1]")
            object.__setattr__(self, "knots", tuple(map(tuple, self.knots)))

    @property
    def amplitude(self) -> float:
        return 1.0 - self.w_b_over_w_ref

    def __call__(self, z):
        z = np.asarray(z, dtype=float)
        if np.any(z < 0.0) or np.any(z > 1.0) or np.any(np.isnan(z)):
            raise DomainError("depth must lie in [0, 1]")
        a = self.amplitude
        if self.variant == "linear_bct":
            out = a * (1.0 - z)
        elif self.variant == "sheet":
            out = np.where(z <= self.L_s, a * (1.0 - z), 0.0)
        elif self.variant == "constant":
            out = np.full_like(z, a)
        else:
            kz, kw = np.asarray(self.knots, dtype=float).T
            out = np.interp(z, kz, kw)
        return float(out) if out.ndim == 0 else out


def humidity_value(profile: HumidityProfile, z):
    """Evaluate ``profile`` at depth(s) ``z``."""
    return profile(z)


Curve = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True, eq=False)
class DimensionlessModel:
    """Right-hand-side data of the rescaled degradation model.

    ``irradiance``, ``eps_g`` and ``eps_nu`` are callables on [0, 1]
    (usually :class:`~cadmia.spectral.SpectralCurve`).  ``eps_c`` is kept
    when known so that ``nu`` can be changed consistently.  The initial
    concentration is identically one.
    """

    nu: float
    mu: float
    xi: float
    irradiance: Curve
    eps_g: Curve
    eps_nu: Curve
    humidity: Callable[[np.ndarray], np.ndarray]
    eps_c: Optional[Curve] = None
    name: str = ""
    band: Optional[SpectralBand] = field(default=None, compare=False)

    def __post_init__(self):
        if not (self.nu > 0 and self.mu > 0):
            raise DomainError(f"nu and mu must be positive, got {self.nu}, {self.mu}")
        if not self.xi >= 0:
            raise DomainError(f"xi must be non-negative, got {self.xi}")

    def with_parameters(self, nu: Optional[float] = None, mu: Optional[float] = None,
                        xi: Optional[float] = None) -> "DimensionlessModel":
        """Copy of the model with some of ``(nu, mu, xi)`` replaced."""
        changes = {}
        if mu is not None:
            changes["mu"] = mu
        if xi is not None:
            changes["xi"] = xi
        if nu is not None and nu != self.nu:
            if not isinstance(self.eps_c, SpectralCurve) or \
                    not isinstance(self.eps_g, SpectralCurve):
                raise DomainError("changing nu requires tabulated eps_c and eps_g")
            changes["nu"] = nu
            changes["eps_nu"] = spectral.epsilon_nu(self.eps_c, self.eps_g, nu)
        return replace(self, **changes)

    @property
    def parameters(self) -> Tuple[float, float, float]:
        return self.nu, self.mu, self.xi


def assemble_model(p: DimensionalParameters, irradiance: SpectralCurve,
                   eps_c: SpectralCurve, profile: HumidityProfile,
                   eps_g: Optional[SpectralCurve] = None,
                   overrides: Optional[dict] = None, name: str = "") -> DimensionlessModel:
    """Assemble the dimensionless model for a scenario.

    Parameters
    ----------
    p : DimensionalParameters
    irradiance : SpectralCurve
        Lamp irradiance in the units of ``p.I_ref``; divided by ``I_ref`` here.
    eps_c : SpectralCurve
        Dimensionless CdS absorptivity.
    profile : HumidityProfile
    eps_g : SpectralCurve, optional
        Dimensionless sulfate absorptivity; proportional to ``eps_c`` if omitted.
    overrides : dict, optional
        Replacement values for any of ``nu``, ``mu``, ``xi``.

    Raises
    ------
    ConfigError
        If a curve was rescaled against a band other than ``p.band`` or an
        override is invalid.
    """
    band = p.band
    for label, curve in (("irradiance", irradiance), ("eps_c", eps_c), ("eps_g", eps_g)):
        if curve is not None and curve.band is not None and curve.band != band:
            raise ConfigError(
                f"{label} curve was rescaled to {curve.band}, scenario band is {band}")
    nu, mu, xi = nondimensionalize(p)
    for key, v in (overrides or {}).items():
        if key not in ("nu", "mu", "xi"):
            raise ConfigError(f"unknown override {key!r}")
        if v is None:
            continue
        if not (math.isfinite(v) and (v > 0 or (key == "xi" and v == 0))):
            raise ConfigError(f"override {key} must be positive, got {v!r}")
        if key == "nu":
            nu = v
        elif key == "mu":
            mu = v
        else:
            xi = v
    if eps_g is None:
        eps_g = spectral.proportional_sulfate_absorptivity(eps_c)
    return DimensionlessModel(
        nu=nu, mu=mu, xi=xi,
        irradiance=irradiance.scaled(1.0 / p.I_ref),
        eps_g=eps_g,
        eps_nu=spectral.epsilon_nu(eps_c, eps_g, nu),
        humidity=profile,
        eps_c=eps_c,
        name=name,
        band=band,
    )


def _toy_irradiance(lam):
    return np.expm1(lam)


def _toy_eps_nu(lam):
    return (lam - 0.9) / (1.2 - lam)


def _toy_eps_g(lam):
    return 1.0 - lam + 2.0 * lam**2 - 0.8 * lam**3


def toy_model() -> DimensionlessModel:
    """Smooth test problem without physical meaning, used for convergence runs.

    ``xi = mu = 1``, ``w(z) = 1 - z``, ``I(lam) = exp(lam) - 1``,
    ``eps_nu(lam) = (lam - 0.9) / (1.2 - lam)`` and
    ``eps_g(lam) = 1 - lam + 2 lam^2 - 4/5 lam^3``.
    """
    return DimensionlessModel(
        nu=1.0, mu=1.0, xi=1.0,
        irradiance=_toy_irradiance, eps_g=_toy_eps_g, eps_nu=_toy_eps_nu,
        humidity=HumidityProfile("linear_bct", 0.0),
        name="toy",
    )
