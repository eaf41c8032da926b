"""Separation fronts, their logarithmic fits and cumulative concentrations."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..errors import DomainError, GridError
from ..kernel import ConcentrationField


@dataclass(frozen=True, eq=False)
class Front:
    """Front depths ``sigma`` at times ``t``; ``omitted`` counts rows without a front."""

    psi: float
    t: np.ndarray
    sigma: np.ndarray
    omitted: int = 0

    def __iter__(self):
        return iter(zip(self.t.tolist(), self.sigma.tolist()))

    def __len__(self):
        return self.t.size


def separation_front(field: ConcentrationField, psi: float) -> Front:
    """Smallest grid depth at which ``c >= psi``, for every time level.

    Rows in which the concentration stays below ``psi`` everywhere have no
    front; they are dropped and counted in ``Front.omitted``.
    """
    if not 0.0 < psi < 1.0:
        raise DomainError(f"psi must lie in (0, 1), got {psi}")
    mask = field.values >= psi
    has = mask.any(axis=1)
    idx = np.argmax(mask, axis=1)
    z = field.grid.z
    return Front(float(psi), field.grid.t[has], z[idx[has]], int((~has).sum()))


@dataclass(frozen=True)
class FrontFit:
    """Logarithmic front model ``S(t) = b + a log t``.

    ``a`` is the growth rate per unit of ``log t`` and ``b`` the front depth
    at ``t = 1``; this is the labelling under which the tabulated base-case
    coefficients are physically consistent (see the README).
    """

    psi: float
    a: float
    b: float
    mean_fit_error: float
    n_points: int = 0

    def __call__(self, t):
        return self.b + self.a * np.log(t)


def front_log_fit(front, psi: Optional[float] = None, exclude_t_zero: bool = True) -> FrontFit:
    """Least-squares fit of the front depth against ``log t``.

    ``t = 0`` is always excluded (the flag is kept for explicitness), as are
    the leading entries with ``sigma == 0`` before the front has left the
    surface.

    Parameters
    ----------
    front : Front or sequence of (t, sigma)
    psi : float, optional
        Stored on the result; taken from ``front`` when it is a :class:`Front`.
    """
    if isinstance(front, Front):
        psi = front.psi if psi is None else psi
        t, s = front.t, front.sigma
    else:
        pts = np.asarray(list(front), dtype=float).reshape(-1, 2)
        t, s = pts[:, 0], pts[:, 1]
    keep = t > 0
    t, s = t[keep], s[keep]
    nz = np.flatnonzero(s > 0)
    if nz.size and nz[0] > 0:
        t, s = t[nz[0]:], s[nz[0]:]
    if t.size < 2:
        raise DomainError(f"need at least 2 points with t > 0 for the fit, got {t.size}")
    x = np.log(t)
    xm, sm = x.mean(), s.mean()
    dx = x - xm
    sxx = float(dx @ dx)
    if sxx == 0.0:
        raise DomainError("fit needs at least two distinct times")
    a = float(dx @ (s - sm)) / sxx
    b = float(sm - a * xm)
    err = float(np.mean(np.abs(b + a * x - s)))
    return FrontFit(float("nan") if psi is None else float(psi), a, b, err, int(t.size))


def cumulative_concentration(field: ConcentrationField, n: int) -> float:
    """``dz * sum_{j=0}^{Nz} c[n, j]`` (equals ``1 + dz`` on the initial row)."""
    if not 0 <= n <= field.grid.nt:
        raise DomainError(f"time index {n} outside 0..{field.grid.nt}")
    return field.grid.dz * math.fsum(field.values[n])


def cumulative_series(field: ConcentrationField) -> np.ndarray:
    """:func:`cumulative_concentration` for every time level."""
    return np.array([cumulative_concentration(field, n) for n in range(field.grid.nt + 1)])


def normalized_cumulative_series(field: ConcentrationField) -> np.ndarray:
    """Trapezoidal depth integral of ``c``; equals 1 on the initial row."""
    v = field.values
    dz = field.grid.dz
    return dz * (v.sum(axis=1) - 0.5 * (v[:, 0] + v[:, -1]))


def deterioration_increase(reference: ConcentrationField,
                           other: ConcentrationField) -> np.ndarray:
    """Relative extra loss of cumulative CdS of ``other`` over ``reference``.

    With ``D(t) = C_L(0) - C_L(t)`` the result is ``D_other / D_ref - 1``
    per time level (NaN at ``t = 0``, where both losses vanish).
    """
    if reference.grid != other.grid:
        raise GridError("fields must share a grid")
    cr, co = cumulative_series(reference), cumulative_series(other)
    dr, do = cr[0] - cr, co[0] - co
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.where(dr > 0, do / dr - 1.0, np.nan)
    return out
