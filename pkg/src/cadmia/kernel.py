"""Explicit exponential time stepping for the rescaled degradation model.

Two schemes are provided on uniform meshes ``z_j = j dz``, ``t_n = n dt``,
``lam_l = l dl``:

``"P"``
    First-order predictor: left-rectangle rules in depth and wavelength.
``"PC"``
    Second-order predictor-corrector: the predictor row is fed into
    trapezoidal rules in depth and wavelength at both time levels.

Both updates have the form ``c_{n+1} = c_n * exp(-x)`` with ``x >= 0``, so
the numerical concentration stays positive and non-increasing for every
choice of stepsizes.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Iterator

import numpy as np
from numba import njit

from .errors import CapacityError, DomainError, GridError
from .scenario import DimensionlessModel

# Smallest positive normal double.  Concentrations are floored here so that
# an underflowing exp() cannot turn a positive value into an exact zero.
CONCENTRATION_FLOOR = float(np.finfo(float).tiny)

# Default ceiling on the memory used to materialise a full field.
MAX_FIELD_BYTES = 2 * 1024**3

SCHEMES = ("P", "PC")


def _reciprocal_count(step, name: str) -> int:
    """Integer ``N`` with ``N * step == 1``; accepts ``"1/N"`` strings."""
    if isinstance(step, str):
        s = step.strip()
        if s.startswith("1/"):
            try:
                n = int(s[2:])
            except ValueError:
                raise GridError(f"{name}: cannot parse {step!r}") from None
            if n <= 0:
                raise GridError(f"{name}: count must be positive, got {n}")
            return n
        try:
            step = float(s)
        except ValueError:
            raise GridError(f"{name}: cannot parse {step!r}") from None
    if not step > 0 or not math.isfinite(step):
        raise GridError(f"{name} must be positive, got {step!r}")
    n = round(1.0 / step)
    if n < 1 or abs(step - 1.0 / n) > 1e-12:
        raise GridError(f"{name}={step!r} is not the reciprocal of an integer")
    return n


@dataclass(frozen=True)
class Grid:
    """Uniform space-time-wavelength mesh with ``N * step == 1`` on each axis."""

    nz: int
    nt: int
    nl: int

    def __post_init__(self):
        for name in ("nz", "nt", "nl"):
            v = getattr(self, name)
            if not (isinstance(v, (int, np.integer)) and v >= 1):
                raise GridError(f"{name} must be a positive integer, got {v!r}")

    @classmethod
    def uniform(cls, n: int) -> "Grid":
        return cls(n, n, n)

    @classmethod
    def dyadic(cls, k: int) -> "Grid":
        return cls.uniform(2**k)

    @classmethod
    def from_steps(cls, dz, dt=None, dl=None) -> "Grid":
        """Grid from stepsizes given as floats or ``"1/N"`` strings."""
        dt = dz if dt is None else dt
        dl = dz if dl is None else dl
        return cls(_reciprocal_count(dz, "dz"), _reciprocal_count(dt, "dt"),
                   _reciprocal_count(dl, "dl"))

    @property
    def dz(self) -> float:
        return 1.0 / self.nz

    @property
    def dt(self) -> float:
        return 1.0 / self.nt

    @property
    def dl(self) -> float:
        return 1.0 / self.nl

    @property
    def z(self) -> np.ndarray:
        return np.arange(self.nz + 1) / self.nz

    @property
    def t(self) -> np.ndarray:
        return np.arange(self.nt + 1) / self.nt

    @property
    def lam(self) -> np.ndarray:
        return np.arange(self.nl + 1) / self.nl

    def nests_in(self, other: "Grid") -> bool:
        """True when every node of ``self`` is also a node of ``other``."""
        return (other.nz % self.nz == 0 and other.nt % self.nt == 0
                and other.nl % self.nl == 0)

    def describe(self) -> dict:
        return {"nz": self.nz, "nt": self.nt, "nl": self.nl,
                "dz": str(Fraction(1, self.nz)), "dt": str(Fraction(1, self.nt)),
                "dl": str(Fraction(1, self.nl))}


@dataclass(frozen=True, eq=False)
class SampledModel:
    """Model data evaluated on the nodes of a mesh.

    ``dt`` is stored separately from the grid counts so that step-size
    studies can drive the update with steps that do not tile [0, 1].
    """

    irradiance: np.ndarray  # I(lam_l), l = 0..nl
    eps_nu: np.ndarray
    eps_g: np.ndarray
    humidity: np.ndarray    # w(z_j), j = 0..nz
    mu: float
    xi: float
    dz: float
    dt: float
    dl: float

    @property
    def nz(self) -> int:
        return self.humidity.size - 1

    @property
    def nl(self) -> int:
        return self.irradiance.size - 1


def discretize(model: DimensionlessModel, grid: Grid, validate: bool = True) -> SampledModel:
    """Sample ``model`` on the nodes of ``grid``.

    With ``validate`` set, the total absorbance ``eps_nu S + z eps_g`` is
    checked to be non-negative for every ``0 <= S <= z``, which bounds the
    attenuated intensity by the incident one.
    """
    lam = grid.lam
    irr = np.ascontiguousarray(model.irradiance(lam), dtype=float)
    enu = np.ascontiguousarray(model.eps_nu(lam), dtype=float)
    eg = np.ascontiguousarray(model.eps_g(lam), dtype=float)
    w = np.ascontiguousarray(model.humidity(grid.z), dtype=float)
    if validate:
        if np.any(irr < 0):
            raise DomainError("irradiance must be non-negative")
        if np.any(eg < 0) or np.any(eg + enu < 0):
            raise DomainError("absorbance must be non-negative for all admissible profiles")
        if np.any(w < 0) or np.any(w > 1):
            raise DomainError("humidity must lie in [0, 1]")
    return SampledModel(irr, enu, eg, w, float(model.mu), float(model.xi),
                        grid.dz, grid.dt, grid.dl)


def saturation(x):
    """``F(x) = 2x / (x^2 + 1)``; maps [0, inf) into [0, 1], maximal at 1."""
    a = np.asarray(x, dtype=float)
    if np.any(a < 0) or np.any(np.isnan(a)):
        raise DomainError("saturation is defined for x >= 0")
    out = 2.0 * a / (a * a + 1.0)
    return float(out) if out.ndim == 0 else out


def attenuation_rect(sm: SampledModel, row, j: int, l: int, prefix) -> float:
    """Attenuated intensity with the left-rectangle depth rule.

    ``prefix[j]`` must hold ``sum(row[:j])``.
    """
    s = 0.0 if j == 0 else prefix[j]
    return sm.irradiance[l] * math.exp(
        -sm.mu * sm.dz * (sm.eps_nu[l] * s + j * sm.eps_g[l]))


def attenuation_trap(sm: SampledModel, row, j: int, l: int) -> float:
    """Attenuated intensity with the trapezoidal depth rule (zero depth at j=0)."""
    if j == 0:
        return float(sm.irradiance[l])
    s = row[0] + 2.0 * sum(row[1:j]) + row[j]
    return sm.irradiance[l] * math.exp(
        -sm.mu * sm.dz / 2.0 * (sm.eps_nu[l] * s + 2.0 * j * sm.eps_g[l]))


@njit(cache=True)
def _sat(a):
    return 2.0 * a / (a * a + 1.0)


@njit(cache=True)
def _rect_sums(row, irr, enu, eg, mu, dz, out):
    # out[j] = sum_{l < nl} F(alpha^{j,l}), alpha from the left-rectangle depth rule
    nl = irr.shape[0] - 1
    s = 0.0
    for j in range(row.shape[0]):
        acc = 0.0
        for l in range(nl):
            a = irr[l] * math.exp(-mu * dz * (enu[l] * s + j * eg[l]))
            acc += _sat(a)
        out[j] = acc
        s += row[j]


@njit(cache=True)
def _trap_sums(row, irr, enu, eg, mu, dz, out):
    # out[j] = F(b^0) + 2 sum_{0<l<nl} F(b^l) + F(b^nl), b from the trapezoidal depth rule
    nl = irr.shape[0] - 1
    inner = 0.0  # sum_{r=1}^{j-1} row[r]
    for j in range(row.shape[0]):
        if j == 0:
            q = 0.0
        else:
            q = row[0] + 2.0 * inner + row[j]
        acc = 0.0
        for l in range(nl + 1):
            b = irr[l] * math.exp(-mu * dz / 2.0 * (enu[l] * q + 2.0 * j * eg[l]))
            if l == 0 or l == nl:
                acc += _sat(b)
            else:
                acc += 2.0 * _sat(b)
        out[j] = acc
        if j >= 1:
            inner += row[j]


@njit(cache=True)
def _exp_update(row, rate, w, factor, floor, out):
    for j in range(row.shape[0]):
        v = row[j] * math.exp(-factor * w[j] * rate[j])
        out[j] = v if v > floor else floor


def _workspace(sm: SampledModel):
    return np.empty(sm.nz + 1), np.empty(sm.nz + 1)


def predictor_step(sm: SampledModel, row) -> np.ndarray:
    """First-order step ``p = c * exp(-dt dl xi w sum_l F(alpha))``."""
    row = np.ascontiguousarray(row, dtype=float)
    rate = np.empty_like(row)
    out = np.empty_like(row)
    _rect_sums(row, sm.irradiance, sm.eps_nu, sm.eps_g, sm.mu, sm.dz, rate)
    _exp_update(row, rate, sm.humidity, sm.dt * sm.dl * sm.xi, CONCENTRATION_FLOOR, out)
    return out


def pc_step(sm: SampledModel, row) -> np.ndarray:
    """Second-order predictor-corrector step from ``row`` (time level n)."""
    row = np.ascontiguousarray(row, dtype=float)
    pred = predictor_step(sm, row)
    gamma_n = np.empty_like(row)
    gamma_p = np.empty_like(row)
    _trap_sums(row, sm.irradiance, sm.eps_nu, sm.eps_g, sm.mu, sm.dz, gamma_n)
    _trap_sums(pred, sm.irradiance, sm.eps_nu, sm.eps_g, sm.mu, sm.dz, gamma_p)
    out = np.empty_like(row)
    _exp_update(row, gamma_n + gamma_p, sm.humidity,
                sm.dt / 2.0 * (sm.dl / 2.0) * sm.xi, CONCENTRATION_FLOOR, out)
    return out


def _stepper(scheme: str):
    s = scheme.upper()
    if s == "P":
        return predictor_step
    if s == "PC":
        return pc_step
    raise DomainError(f"unknown scheme {scheme!r}; expected one of {SCHEMES}")


def iter_rows(sm: SampledModel, nt: int, scheme: str = "PC") -> Iterator[np.ndarray]:
    """Yield the rows ``c_0, c_1, ..., c_nt`` without storing the field."""
    step = _stepper(scheme)
    row = np.ones(sm.nz + 1)
    yield row
    for _ in range(nt):
        row = step(sm, row)
        yield row


@dataclass(frozen=True, eq=False)
class ConcentrationField:
    """Dimensionless CdS concentration ``values[n, j]`` on a grid."""

    values: np.ndarray
    grid: Grid
    scheme: str = "PC"

    def __post_init__(self):
        expected = (self.grid.nt + 1, self.grid.nz + 1)
        if self.values.shape != expected:
            raise GridError(f"field shape {self.values.shape} does not match grid {expected}")

    @property
    def final(self) -> np.ndarray:
        return self.values[-1]

    def check_invariants(self) -> None:
        """Raise ``AssertionError`` unless ``0 < c <= 1``, ``c_0 == 1`` and rows decrease."""
        v = self.values
        assert np.all(v[0] == 1.0), "initial row must be identically 1"
        assert np.all(v > 0.0), "concentration must stay positive"
        assert np.all(v <= 1.0), "concentration must not exceed 1"
        assert np.all(np.diff(v, axis=0) <= 0.0), "concentration must not increase in time"


def simulate(model: DimensionlessModel, grid: Grid, scheme: str = "PC",
             max_bytes: int = MAX_FIELD_BYTES) -> ConcentrationField:
    """Integrate ``model`` over [0, 1] x [0, 1] and return the full field.

    Raises
    ------
    CapacityError
        If the field would need more than ``max_bytes`` bytes.
    """
    nbytes = (grid.nt + 1) * (grid.nz + 1) * 8
    if nbytes > max_bytes:
        raise CapacityError(
            f"field of {grid.nt + 1} x {grid.nz + 1} doubles needs {nbytes} bytes "
            f"(limit {max_bytes})")
    _stepper(scheme)
    sm = discretize(model, grid)
    values = np.empty((grid.nt + 1, grid.nz + 1))
    for n, row in enumerate(iter_rows(sm, grid.nt, scheme)):
        values[n] = row
    return ConcentrationField(values, grid, scheme.upper())


def integrate_total(model: DimensionlessModel, grid: Grid, scheme: str = "PC") -> float:
    """``dt * dz * sum_n sum_j c[n, j]`` computed in streaming mode."""
    sm = discretize(model, grid)
    total = 0.0
    for row in iter_rows(sm, grid.nt, scheme):
        total += math.fsum(row)
    return grid.dt * grid.dz * total


def sulfate_field(field: ConcentrationField) -> np.ndarray:
    """Sulfate concentration ``g = 1 - c`` implied by mass conservation."""
    return 1.0 - field.values


def with_steps(sm: SampledModel, **steps) -> SampledModel:
    """Copy of ``sm`` with some of ``dz``, ``dt``, ``dl`` replaced."""
    return replace(sm, **steps)
