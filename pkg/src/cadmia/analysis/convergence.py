"""Mean space-time errors, experimental orders and work-precision data."""
from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence

import numpy as np

from ..errors import DomainError, GridError
from ..kernel import ConcentrationField, Grid, simulate
from ..scenario import DimensionlessModel

WEIGHTINGS = ("quadrature", "nodal")


def _sample(reference: ConcentrationField, grid: Grid) -> np.ndarray:
    rg = reference.grid
    if not (rg.nz % grid.nz == 0 and rg.nt % grid.nt == 0):
        raise GridError(f"grid {grid.nz}x{grid.nt} does not nest in reference {rg.nz}x{rg.nt}")
    return reference.values[::rg.nt // grid.nt, ::rg.nz // grid.nz]


def mean_spacetime_error(coarse: ConcentrationField, reference: ConcentrationField,
                         weighting: str = "quadrature") -> float:
    """l1 discrepancy between ``coarse`` and ``reference`` on the coarse nodes.

    Parameters
    ----------
    coarse, reference : ConcentrationField
        The reference mesh must contain every coarse node.
    weighting : {"quadrature", "nodal"}
        ``"quadrature"`` multiplies the double sum over all
        ``(Nz+1)(Nt+1)`` nodes by ``dz*dt``.  ``"nodal"`` divides it by the
        node count instead, i.e. returns the plain average.  The two differ
        by the factor ``(1+dz)(1+dt)``.
    """
    if weighting not in WEIGHTINGS:
        raise DomainError(f"weighting must be one of {WEIGHTINGS}")
    ref = _sample(reference, coarse.grid)
    diff = np.abs(coarse.values - ref)
    total = math.fsum(diff.ravel())
    g = coarse.grid
    if weighting == "quadrature":
        return g.dz * g.dt * total
    return total / diff.size


def experimental_order(e_coarse: float, e_fine: float) -> float:
    """``log2(e_coarse / e_fine)`` for errors at steps ``h`` and ``h/2``."""
    if not (e_coarse > 0 and e_fine > 0):
        raise DomainError(f"errors must be positive, got {e_coarse}, {e_fine}")
    return math.log2(e_coarse / e_fine)


@dataclass(frozen=True)
class ConvergenceRow:
    step: float
    error_P: float
    error_PC: float
    order_P: Optional[float] = None
    order_PC: Optional[float] = None
    time_P: Optional[float] = None
    time_PC: Optional[float] = None

    def as_csv_row(self):
        return (self.step, self.error_P, self.error_PC, self.order_P, self.order_PC)


CONVERGENCE_HEADER = ("step", "E_P", "E_C", "rho_P", "rho_C")


def reference_solution(problem: DimensionlessModel, ref_level: int) -> ConcentrationField:
    return simulate(problem, Grid.dyadic(ref_level), "PC")


def warm_up(problem: DimensionlessModel, schemes: Sequence[str] = ("P", "PC")) -> None:
    """Trigger JIT compilation so that later timings measure the stepping only."""
    for scheme in schemes:
        simulate(problem, Grid.uniform(2), scheme)


def _timed(problem, grid, scheme):
    t0 = time.perf_counter()
    f = simulate(problem, grid, scheme)
    return f, time.perf_counter() - t0


def convergence_study(problem: DimensionlessModel, levels: Iterable[int], ref_level: int = 11,
                      weighting: str = "nodal",
                      reference: Optional[ConcentrationField] = None) -> List[ConvergenceRow]:
    """P and PC errors at ``dz = dt = dl = 2**-k`` against a fine PC solution.

    The reference is computed once at level ``ref_level`` unless supplied.
    The default ``"nodal"`` weighting is the one that reproduces the
    published error magnitudes; see :func:`mean_spacetime_error`.
    """
    levels = sorted(levels)
    if not levels:
        return []
    if ref_level <= levels[-1]:
        raise GridError(f"reference level {ref_level} must exceed the finest level {levels[-1]}")
    if reference is None:
        reference = reference_solution(problem, ref_level)
    elif reference.grid != Grid.dyadic(ref_level):
        raise GridError("supplied reference does not match ref_level")
    warm_up(problem)
    rows = []
    prev = None
    for k in levels:
        g = Grid.dyadic(k)
        fp, tp = _timed(problem, g, "P")
        fc, tc = _timed(problem, g, "PC")
        ep = mean_spacetime_error(fp, reference, weighting)
        ec = mean_spacetime_error(fc, reference, weighting)
        op = oc = None
        if prev is not None and prev[0] == k - 1:
            op = experimental_order(prev[1], ep)
            oc = experimental_order(prev[2], ec)
        rows.append(ConvergenceRow(g.dz, ep, ec, op, oc, tp, tc))
        prev = (k, ep, ec)
    return rows


@dataclass(frozen=True)
class WorkRecord:
    scheme: str
    level: int
    wall_time: float
    error: float


def work_precision(problem: DimensionlessModel, levels: Iterable[int], ref_level: int = 11,
                   schemes: Sequence[str] = ("P", "PC"), weighting: str = "nodal",
                   reference: Optional[ConcentrationField] = None,
                   repeats: int = 1) -> List[WorkRecord]:
    """Wall time of ``simulate`` and the resulting error, per scheme and level.

    With ``repeats > 1`` the fastest of the repeated timings is kept.
    """
    levels = sorted(levels)
    if not levels:
        return []
    if reference is None:
        if ref_level <= levels[-1]:
            raise GridError("reference level must exceed the finest level")
        reference = reference_solution(problem, ref_level)
    warm_up(problem, schemes)
    out = []
    for scheme in schemes:
        for k in levels:
            best, field = math.inf, None
            for _ in range(max(1, repeats)):
                field, dt = _timed(problem, Grid.dyadic(k), scheme)
                best = min(best, dt)
            out.append(WorkRecord(scheme.upper(), k, best,
                                  mean_spacetime_error(field, reference, weighting)))
    return out


def matched_time_ratios(records: Sequence[WorkRecord], fast: str = "PC",
                        slow: str = "P") -> List[tuple]:
    """Error ratios ``E_fast / E_slow`` at matched wall time.

    The error of the ``slow`` scheme is interpolated log-log in wall time
    at the runtime of every ``fast`` record that falls inside the ``slow``
    timing range.  Returns ``(level, wall_time, E_fast, E_slow_interp, ratio)``.
    """
    s = sorted((r for r in records if r.scheme == slow), key=lambda r: r.wall_time)
    f = [r for r in records if r.scheme == fast]
    if len(s) < 2:
        return []
    lt = np.log([r.wall_time for r in s])
    le = np.log([r.error for r in s])
    out = []
    for r in f:
        x = math.log(r.wall_time)
        if lt[0] <= x <= lt[-1]:
            e = math.exp(float(np.interp(x, lt, le)))
            out.append((r.level, r.wall_time, r.error, e, r.error / e))
    return out
