"""Spectral functions on the dimensionless wavelength interval [0, 1].

Irradiance and molar absorptivities enter the attenuation integral as
tabulated, piecewise-linear curves.  Raw records are given in nanometres and
are mapped affinely onto [0, 1] against a :class:`SpectralBand`.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Tuple

import numpy as np

from .errors import DomainError, FixtureError

PLANCK_EV_S = 4.13567e-15
SPEED_OF_LIGHT_NM_S = 2.99792e17


def band_gap_wavelength(E_bg: float) -> float:
    """Return the wavelength (nm) of a photon with energy ``E_bg`` (eV)."""
    if not E_bg > 0:
        raise DomainError(f"band-gap energy must be positive, got {E_bg!r}")
    return PLANCK_EV_S * SPEED_OF_LIGHT_NM_S / E_bg


@dataclass(frozen=True)
class SpectralBand:
    """Wavelength window ``[lambda_min, lambda_max]`` in nanometres."""

    lambda_min: float
    lambda_max: float

    def __post_init__(self):
        if not 0 < self.lambda_min < self.lambda_max:
            raise DomainError(
                f"invalid band ({self.lambda_min}, {self.lambda_max}): "
                "need 0 < lambda_min < lambda_max")

    @property
    def width(self) -> float:
        return self.lambda_max - self.lambda_min

    def rescale(self, wavelength_nm):
        return (np.asarray(wavelength_nm, dtype=float) - self.lambda_min) / self.width


def _frozen(a) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class SpectralCurve:
    """Piecewise-linear function of the dimensionless wavelength.

    Parameters
    ----------
    lam : array_like
        Strictly increasing knot abscissae, starting at 0 and ending at 1.
    values : array_like
        Knot values.  Must be non-negative unless ``signed`` is set.
    band : SpectralBand, optional
        Band the abscissae were rescaled against, if known.
    signed : bool
        Allow negative values (used for the combined absorptivity
        ``nu * eps_c - eps_g``).
    """

    lam: np.ndarray
    values: np.ndarray
    band: Optional[SpectralBand] = None
    signed: bool = False

    def __post_init__(self):
        lam = _frozen(self.lam)
        values = _frozen(self.values)
        if lam.ndim != 1 or lam.shape != values.shape or lam.size < 2:
            raise FixtureError("curve needs matching 1-d knot arrays with >= 2 entries")
        if not np.all(np.isfinite(lam)) or not np.all(np.isfinite(values)):
            raise FixtureError("curve knots must be finite")
        if np.any(np.diff(lam) <= 0):
            raise FixtureError("knot abscissae must be strictly increasing")
        if lam[0] != 0.0 or lam[-1] != 1.0:
            raise FixtureError(f"knots must span [0, 1], got [{lam[0]}, {lam[-1]}]")
        if not self.signed and np.any(values < 0):
            bad = int(np.argmax(values < 0))
            raise FixtureError(f"negative value {values[bad]} at knot lambda={lam[bad]}")
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "values", values)

    def __call__(self, lam):
        x = np.asarray(lam, dtype=float)
        if np.any(x < 0.0) or np.any(x > 1.0) or np.any(np.isnan(x)):
            raise DomainError("dimensionless wavelength must lie in [0, 1]")
        out = np.interp(x, self.lam, self.values)
        return float(out) if out.ndim == 0 else out

    def map_values(self, func, signed: Optional[bool] = None) -> "SpectralCurve":
        """Apply ``func`` knot-wise and return a new curve on the same knots."""
        return SpectralCurve(self.lam, func(self.values), self.band,
                             self.signed if signed is None else signed)

    def scaled(self, factor: float) -> "SpectralCurve":
        return self.map_values(lambda v: v * factor)

    def resample(self, lam) -> "SpectralCurve":
        return SpectralCurve(lam, self(lam), self.band, self.signed)

    def __repr__(self):
        return (f"SpectralCurve(knots={self.lam.size}, "
                f"range=[{self.values.min():.4g}, {self.values.max():.4g}])")


def eval(curve: SpectralCurve, lam):  # noqa: A001 - mirrors the operation name
    """Evaluate ``curve`` at dimensionless wavelength(s) ``lam``."""
    return curve(lam)


def _line_at(x, x0, y0, x1, y1):
    return max(y0 + (y1 - y0) * (x - x0) / (x1 - x0), 0.0)


def load_curve(records: Iterable[Tuple[float, float]], band: SpectralBand) -> SpectralCurve:
    """Build a :class:`SpectralCurve` from ``(wavelength_nm, value)`` records.

    Records outside ``band`` are discarded.  Missing band edges are filled
    by linear interpolation against the nearest out-of-band record, or by
    linear extrapolation of the two nearest in-band records (clamped at 0)
    when no such record exists.

    Raises
    ------
    FixtureError
        On negative values, duplicate wavelengths or fewer than two in-band
        records.
    """
    arr = np.array(list(records), dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise FixtureError("records must be (wavelength, value) pairs")
    order = np.argsort(arr[:, 0], kind="stable")
    wl, vals = arr[order, 0], arr[order, 1]
    if not np.all(np.isfinite(arr)):
        raise FixtureError("records must be finite")
    if np.any(vals < 0):
        bad = int(np.argmax(vals < 0))
        raise FixtureError(f"negative value {vals[bad]} at {wl[bad]} nm")
    dup = np.flatnonzero(np.diff(wl) == 0)
    if dup.size:
        raise FixtureError(f"duplicate wavelength {wl[dup[0]]} nm")

    lo, hi = band.lambda_min, band.lambda_max
    inside = np.flatnonzero((wl >= lo) & (wl <= hi))
    if inside.size < 2:
        raise FixtureError(
            f"need at least 2 records inside [{lo}, {hi}] nm, found {inside.size}")
    first, last = inside[0], inside[-1]

    knots_wl = list(wl[inside])
    knots_val = list(vals[inside])
    if wl[first] > lo:
        # interpolate against the record just below the band, else extrapolate
        i, k = (first - 1, first) if first > 0 else (first, inside[1])
        knots_wl.insert(0, lo)
        knots_val.insert(0, _line_at(lo, wl[i], vals[i], wl[k], vals[k]))
    if wl[last] < hi:
        i, k = (last, last + 1) if last + 1 < wl.size else (inside[-2], last)
        knots_wl.append(hi)
        knots_val.append(_line_at(hi, wl[i], vals[i], wl[k], vals[k]))

    lam = band.rescale(knots_wl)
    lam[0], lam[-1] = 0.0, 1.0
    return SpectralCurve(lam, knots_val, band)


def absorptivity_from_reflectance(R: SpectralCurve, c_ref: float, L_c: float,
                                  eps_ref: float) -> SpectralCurve:
    """Dimensionless molar absorptivity from a diffuse reflectance spectrum.

    Assumes zero transmittance through a crust of thickness ``L_c`` (cm):
    ``eps(lam) = -ln R(lam) / (c_ref * L_c * eps_ref)``, applied knot-wise.
    """
    for name, v in (("c_ref", c_ref), ("L_c", L_c), ("eps_ref", eps_ref)):
        if not v > 0:
            raise DomainError(f"{name} must be positive, got {v!r}")
    bad = np.flatnonzero((R.values <= 0) | (R.values > 1))
    if bad.size:
        i = bad[0]
        raise FixtureError(
            f"reflectance {R.values[i]} at knot lambda={R.lam[i]} is outside (0, 1]")
    scale = c_ref * L_c * eps_ref
    # -log(1) is -0.0; keep the curve free of negative zeros
    return R.map_values(lambda v: np.abs(np.log(v)) / scale, signed=False)


def proportional_sulfate_absorptivity(eps_c_dimless: SpectralCurve) -> SpectralCurve:
    """Dimensionless sulfate absorptivity under ``eps_g = eps_c / nu``.

    With the sulfate reference value chosen as ``eps_c_ref / nu`` the
    proportionality factor cancels, so the curve is a copy of the input.
    """
    return SpectralCurve(eps_c_dimless.lam, eps_c_dimless.values, eps_c_dimless.band)


def epsilon_nu(eps_c: SpectralCurve, eps_g: SpectralCurve, nu: float) -> SpectralCurve:
    """Return ``nu * eps_c - eps_g`` on the union of both knot sets."""
    lam = np.union1d(eps_c.lam, eps_g.lam)
    return SpectralCurve(lam, nu * eps_c(lam) - eps_g(lam), eps_c.band, signed=True)


def merge_knots(curves: Sequence[SpectralCurve]) -> np.ndarray:
    lam = curves[0].lam
    for c in curves[1:]:
        lam = np.union1d(lam, c.lam)
    return lam
