"""Local sensitivity of the overall CdS concentration to ``(nu, mu, xi)``."""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .. import io
from ..errors import DomainError
from ..kernel import Grid, integrate_total
from ..scenario import DimensionlessModel

PARAMETERS = ("nu", "mu", "xi")
# perturbations in percent: -10..-1, +1..+10
PERCENTS = tuple(range(-10, 0)) + tuple(range(1, 11))
OAT_HEADER = ("param", "delta", "C", "dC")
SWEEP_HEADER = ("dnu", "dmu", "dxi", "C")


def perturbed(base: DimensionlessModel, dnu=0.0, dmu=0.0, dxi=0.0) -> DimensionlessModel:
    """``base`` with each parameter scaled by ``1 + delta`` (zero deltas keep it exact)."""
    nu, mu, xi = base.parameters
    return base.with_parameters(nu=nu * (1.0 + dnu) if dnu else None,
                                mu=mu * (1.0 + dmu) if dmu else None,
                                xi=xi * (1.0 + dxi) if dxi else None)


def relative_overall_concentration(model: DimensionlessModel, base: DimensionlessModel,
                                   grid: Grid, scheme: str = "PC",
                                   base_total: Optional[float] = None) -> float:
    """Ratio of the space-time sums of ``c`` for ``model`` and ``base``.

    Both runs use ``grid``; the common ``dt*dz`` factor cancels but is kept
    so that ``base_total`` can be the value returned by
    :func:`~cadmia.kernel.integrate_total`.
    """
    if base_total is None:
        base_total = integrate_total(base, grid, scheme)
    if model is base:
        return 1.0
    return integrate_total(model, grid, scheme) / base_total


class OverallConcentration:
    """Callable ``C(nu, mu, xi)`` around a base model with a cached denominator."""

    def __init__(self, base: DimensionlessModel, grid: Grid, scheme: str = "PC"):
        self.base = base
        self.grid = grid
        self.scheme = scheme
        self.base_total = integrate_total(base, grid, scheme)

    def at_deltas(self, dnu=0.0, dmu=0.0, dxi=0.0) -> float:
        if dnu == dmu == dxi == 0:
            return 1.0
        m = perturbed(self.base, dnu, dmu, dxi)
        return integrate_total(m, self.grid, self.scheme) / self.base_total

    def __call__(self, nu: float, mu: float, xi: float) -> float:
        if (nu, mu, xi) == self.base.parameters:
            return 1.0
        m = self.base.with_parameters(nu=nu, mu=mu, xi=xi)
        return integrate_total(m, self.grid, self.scheme) / self.base_total


@dataclass(frozen=True)
class SensitivityRecord:
    """One OAT evaluation.

    ``derivative_estimate`` is the difference quotient of ``C`` between this
    perturbation level and the adjacent one closer to the base value,
    divided by the signed parameter increment.  It is ``None`` for the base.
    """

    parameter: str
    delta: float
    value_C: float
    derivative_estimate: Optional[float] = None

    def as_csv_row(self):
        return (self.parameter, self.delta, self.value_C, self.derivative_estimate)


def _check_percents(percents: Sequence[int]) -> Tuple[int, ...]:
    out = tuple(sorted(set(int(k) for k in percents)))
    if any(k == 0 or abs(k) > 100 for k in out):
        raise DomainError("perturbation percents must be non-zero and at most 100 in size")
    return out


def oat_study(base: DimensionlessModel, grid: Grid, percents: Sequence[int] = PERCENTS,
              evaluator: Optional[Callable[[float, float, float], float]] = None,
              scheme: str = "PC") -> List[SensitivityRecord]:
    """One-at-a-time study: the base record followed by one record per parameter and level.

    Parameters
    ----------
    base : DimensionlessModel
    grid : Grid
    percents : sequence of int
        Perturbation levels in percent; the default gives 60 records.
    evaluator : callable, optional
        ``C(nu, mu, xi)``; defaults to :class:`OverallConcentration` on ``grid``.
        Handy for checking the bookkeeping with a cheap stub.
    """
    percents = _check_percents(percents)
    if evaluator is None:
        evaluator = OverallConcentration(base, grid, scheme)
    p0 = dict(zip(PARAMETERS, base.parameters))
    c0 = evaluator(*base.parameters)
    records = [SensitivityRecord("base", 0.0, c0, None)]
    for name in PARAMETERS:
        theta0 = p0[name]
        values = {0: c0}
        for k in percents:
            args = dict(p0)
            args[name] = theta0 * (1.0 + k / 100.0)
            values[k] = evaluator(args["nu"], args["mu"], args["xi"])
        for k in percents:
            # nearest computed level towards zero (k -/+ 1 for the default set)
            inner = max((j for j in values if 0 <= j < k), default=0) if k > 0 else \
                min((j for j in values if k < j <= 0), default=0)
            d = (values[k] - values[inner]) / (theta0 * (k - inner) / 100.0)
            records.append(SensitivityRecord(name, k / 100.0, values[k], d))
    return records


# sweep ---------------------------------------------------------------------

_WORKER: Dict[str, object] = {}


def _init_worker(base, grid, scheme, base_total):
    _WORKER["C"] = (base, grid, scheme, base_total)


def _sweep_task(key):
    base, grid, scheme, base_total = _WORKER["C"]
    dnu, dmu, dxi = (k / 100.0 for k in key)
    if key == (0, 0, 0):
        return key, 1.0
    return key, integrate_total(perturbed(base, dnu, dmu, dxi), grid, scheme) / base_total


def _key(row) -> Tuple[int, int, int]:
    return tuple(int(round(float(v) * 100)) for v in row[:3])


def read_sweep(path) -> Dict[Tuple[int, int, int], float]:
    """Completed cube entries of a (possibly partial) sweep file."""
    path = Path(path)
    done = {}
    if not path.exists():
        return done
    with open(path, encoding="utf-8") as fh:
        lines = fh.read().split("\n")
    if not lines or lines[0].strip() != ",".join(SWEEP_HEADER):
        raise DomainError(f"{path}: not a sweep file")
    # the last line may be cut short by an interrupt; only newline-terminated rows count
    for line in lines[1:-1]:
        parts = line.split(",")
        if len(parts) != 4 or "" in parts:
            continue
        try:
            done[_key(parts)] = float(parts[3])
        except ValueError:
            continue
    return done


def grid_sweep(base: DimensionlessModel, grid: Grid, path,
               axes: Optional[Sequence[Sequence[int]]] = None, jobs: int = 1,
               scheme: str = "PC", progress: Optional[Callable[[int, int], None]] = None
               ) -> Dict[Tuple[int, int, int], float]:
    """Joint perturbation cube of ``C``, resumable through the file at ``path``.

    Every finished entry is appended to ``path`` as soon as it is known, so an
    interrupted sweep restarts where it stopped.  When the cube is complete
    the file is rewritten in sorted order, which makes its content
    independent of scheduling.

    Parameters
    ----------
    axes : three sequences of int, optional
        Percent perturbations along ``nu``, ``mu`` and ``xi``; zero is
        allowed here.  Default: ``PERCENTS`` on each axis (8000 entries).
    jobs : int
        Worker processes; 1 runs in-process.
    """
    axes = [tuple(PERCENTS)] * 3 if axes is None else [tuple(sorted(set(a))) for a in axes]
    if len(axes) != 3 or any(not a for a in axes):
        raise DomainError("need three non-empty axes")
    keys = [(a, b, c) for a in axes[0] for b in axes[1] for c in axes[2]]
    path = Path(path)
    done = read_sweep(path)
    todo = [k for k in keys if k not in done]
    base_total = integrate_total(base, grid, scheme)

    if not path.exists() or path.stat().st_size == 0:
        path.write_text(",".join(SWEEP_HEADER) + "\n", encoding="utf-8")
    else:
        # drop a truncated trailing line before appending
        raw = path.read_bytes()
        if not raw.endswith(b"\n"):
            path.write_bytes(raw[: raw.rfind(b"\n") + 1])

    def record(fh, key, value):
        done[key] = value
        fh.write(",".join(io.FLOAT_FMT % (k / 100.0) for k in key)
                 + "," + io.FLOAT_FMT % value + "\n")
        fh.flush()
        if progress is not None:
            progress(len(done), len(keys))

    with open(path, "a", encoding="utf-8") as fh:
        if jobs <= 1 or len(todo) <= 1:
            _init_worker(base, grid, scheme, base_total)
            for k in todo:
                record(fh, *_sweep_task(k))
        else:
            with ProcessPoolExecutor(max_workers=jobs, initializer=_init_worker,
                                     initargs=(base, grid, scheme, base_total)) as pool:
                futures = [pool.submit(_sweep_task, k) for k in todo]
                for fut in as_completed(futures):
                    record(fh, *fut.result())

    cube = {k: done[k] for k in keys}
    write_sweep(path, cube)
    return cube


def write_sweep(path, cube: Dict[Tuple[int, int, int], float]) -> None:
    rows = [(k[0] / 100.0, k[1] / 100.0, k[2] / 100.0, v) for k, v in sorted(cube.items())]
    tmp = Path(str(path) + ".tmp")
    io.write_table(tmp, SWEEP_HEADER, rows)
    os.replace(tmp, path)


def default_jobs() -> int:
    return max(1, min(4, os.cpu_count() or 1))
