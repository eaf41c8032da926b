"""``cadmia`` command-line interface.

Commands
--------
simulate     run one scenario and dump field, cumulative series and fronts
convergence  P/PC errors and orders on the built-in toy problem
front        separation fronts and their logarithmic fits for a scenario
sensitivity  one-at-a-time study or full perturbation cube
nondim       print the dimensionless triple of a configuration

Exit codes: 0 success, 2 configuration or usage error, 3 fixture error,
4 capacity error.  Errors are reported on stderr as one JSON object.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path
from typing import List, Optional

from . import __version__, io
from .analysis import convergence as conv
from .analysis import fronts, sensitivity
from .config import Scenario, build_scenario, bundled_config, load_scenario
from .errors import CadmiaError, CapacityError, ConfigError, DomainError, FixtureError, GridError
from .kernel import MAX_FIELD_BYTES, Grid, simulate
from .scenario import toy_model

EXIT_OK, EXIT_CONFIG, EXIT_FIXTURE, EXIT_CAPACITY = 0, 2, 3, 4

# field dumps above this many nodes default to the binary layout
CSV_DUMP_LIMIT = 1_000_000

DEFAULT_STEP = {"simulate": "1/2000", "front": "1/2000", "sensitivity": "1/200"}


class UsageError(ConfigError):
    pass


def _exit_code(exc: BaseException) -> int:
    if isinstance(exc, CapacityError):
        return EXIT_CAPACITY
    if isinstance(exc, FixtureError):
        return EXIT_FIXTURE
    return EXIT_CONFIG


def _report(exc: BaseException) -> int:
    code = _exit_code(exc)
    print(json.dumps({"error": type(exc).__name__, "message": str(exc), "exit_code": code}),
          file=sys.stderr)
    return code


def parse_psi(text: str) -> List[float]:
    try:
        vals = [float(s) for s in text.split(",") if s.strip()]
    except ValueError:
        raise UsageError(f"cannot parse --psi {text!r}") from None
    if not vals or any(not 0 < v < 1 for v in vals):
        raise UsageError("--psi values must lie in (0, 1)")
    return vals


def parse_levels(text: str) -> List[int]:
    """``"3:8"`` (inclusive) or ``"3,4,5"``."""
    try:
        if ":" in text:
            lo, hi = (int(s) for s in text.split(":"))
            levels = list(range(lo, hi + 1))
        else:
            levels = [int(s) for s in text.split(",") if s.strip()]
    except ValueError:
        raise UsageError(f"cannot parse --levels {text!r}") from None
    if not levels or min(levels) < 0:
        raise UsageError("--levels must name non-negative levels")
    return levels


def _scenario(ref: Optional[str], default: Optional[str] = None) -> Scenario:
    ref = ref or default
    if ref is None:
        raise UsageError("--config is required")
    if ref.startswith("bundled:"):
        return build_scenario(bundled_config(ref[len("bundled:"):]))
    return load_scenario(ref)


def _grid(args, command: str) -> Grid:
    d = DEFAULT_STEP.get(command, "1/2000")
    dz = args.dz or d
    return Grid.from_steps(dz, args.dt or dz, args.dl or dz)


def _check_capacity(grid: Grid):
    nbytes = (grid.nt + 1) * (grid.nz + 1) * 8
    if nbytes > MAX_FIELD_BYTES:
        raise CapacityError(f"field of {grid.nt + 1} x {grid.nz + 1} doubles needs "
                            f"{nbytes} bytes (limit {MAX_FIELD_BYTES})")


class Outputs:
    """Output directory with a single manifest listing every artifact written."""

    def __init__(self, path, command: str):
        self.path = Path(path)
        self.path.mkdir(parents=True, exist_ok=True)
        self.command = command
        self.artifacts: List[str] = []
        self.t0 = time.perf_counter()

    def file(self, name: str) -> Path:
        if name not in self.artifacts:
            self.artifacts.append(name)
        return self.path / name

    def manifest(self, **info) -> Path:
        data = {
            "command": self.command,
            "version": __version__,
            **info,
            "output_dir": str(self.path.resolve()),
            "wall_time_s": time.perf_counter() - self.t0,
            "artifacts": {a: io.sha256_file(self.path / a) for a in sorted(self.artifacts)},
        }
        p = self.path / "manifest.json"
        p.write_text(json.dumps(data, indent=2, sort_keys=True) + "\n", encoding="utf-8")
        return p


def _scenario_info(sc: Scenario, grid: Optional[Grid], scheme: Optional[str], seed=None):
    return {"config_hash": sc.config_hash, "scenario": sc.name,
            "parameters": dict(zip(("nu", "mu", "xi"), sc.model.parameters)),
            "grid": grid.describe() if grid else None, "scheme": scheme,
            "fixtures": sc.fixtures, "seed": seed}


def _write_fronts(out: Outputs, field, psis):
    fits = []
    for psi in psis:
        fr = fronts.separation_front(field, psi)
        io.write_table(out.file(f"front_psi{psi:g}.csv"), ("t", "sigma"), list(fr))
        try:
            fit = fronts.front_log_fit(fr)
            fits.append((psi, fit.a, fit.b, fit.mean_fit_error))
        except DomainError:
            fits.append((psi, None, None, None))
    io.write_table(out.file("front_fits.csv"), ("psi", "a", "b", "mean_fit_error"), fits)


def cmd_simulate(args) -> int:
    sc = _scenario(args.config)
    grid = _grid(args, "simulate")
    scheme = args.scheme.upper()
    psis = parse_psi(args.psi)
    _check_capacity(grid)
    out = Outputs(args.out, "simulate")
    field = simulate(sc.model, grid, scheme)
    dump = args.dump
    if dump == "auto":
        dump = "csv" if (grid.nt + 1) * (grid.nz + 1) <= CSV_DUMP_LIMIT else "binary"
    if dump == "csv":
        io.write_field_csv(out.file("field.csv"), field)
    elif dump == "binary":
        io.write_field_binary(out.file("field.bin"), field)
    io.write_table(out.file("cumulative.csv"), ("t", "C_L"),
                   zip(grid.t, fronts.cumulative_series(field)))
    _write_fronts(out, field, psis)
    out.manifest(**_scenario_info(sc, grid, scheme, args.seed), dump=dump)
    return EXIT_OK


def cmd_front(args) -> int:
    sc = _scenario(args.config)
    grid = _grid(args, "front")
    scheme = args.scheme.upper()
    psis = parse_psi(args.psi)
    _check_capacity(grid)
    out = Outputs(args.out, "front")
    _write_fronts(out, simulate(sc.model, grid, scheme), psis)
    out.manifest(**_scenario_info(sc, grid, scheme, args.seed))
    return EXIT_OK


def cmd_convergence(args) -> int:
    levels = parse_levels(args.levels)
    if args.ref_level <= max(levels):
        raise GridError(f"--ref-level {args.ref_level} must exceed the finest level {max(levels)}")
    _check_capacity(Grid.dyadic(args.ref_level))
    out = Outputs(args.out, "convergence")
    problem = toy_model()
    ref = conv.reference_solution(problem, args.ref_level)
    rows = conv.convergence_study(problem, levels, args.ref_level, reference=ref,
                                  weighting=args.weighting)
    io.write_table(out.file("convergence.csv"), conv.CONVERGENCE_HEADER,
                   [r.as_csv_row() for r in rows])
    wp = []
    for r, k in zip(rows, sorted(levels)):
        wp.append(("P", k, r.step, r.time_P, r.error_P))
        wp.append(("PC", k, r.step, r.time_PC, r.error_PC))
    io.write_table(out.file("work_precision.csv"),
                   ("scheme", "level", "step", "wall_time", "error"), wp)
    out.manifest(config_hash=None, scenario="toy", grid={"levels": sorted(levels),
                 "ref_level": args.ref_level}, scheme="P,PC", fixtures={},
                 weighting=args.weighting, seed=args.seed)
    return EXIT_OK


def cmd_sensitivity(args) -> int:
    sc = _scenario(args.config, default="bundled:bct")
    grid = _grid(args, "sensitivity")
    jobs = args.jobs if args.jobs else sensitivity.default_jobs()
    if jobs < 1:
        raise UsageError("--jobs must be at least 1")
    out = Outputs(args.out, "sensitivity")
    if args.mode == "oat":
        recs = sensitivity.oat_study(sc.model, grid)
        io.write_table(out.file("sensitivity_oat.csv"), sensitivity.OAT_HEADER,
                       [r.as_csv_row() for r in recs])
    else:
        def progress(done, total):
            if args.verbose:
                print(f"{done}/{total}", file=sys.stderr)
        sensitivity.grid_sweep(sc.model, grid, out.file("sweep_cube.csv"), jobs=jobs,
                               progress=progress)
    out.manifest(**_scenario_info(sc, grid, "PC", args.seed), mode=args.mode, jobs=jobs)
    return EXIT_OK


def cmd_nondim(args) -> int:
    sc = _scenario(args.config)
    nu, mu, xi = sc.model.parameters
    print(json.dumps({"nu": nu, "mu": mu, "xi": xi}))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="scenario JSON file or bundled:<name>")
    common.add_argument("--out", default="out", help="output directory (default: out)")
    common.add_argument("--scheme", choices=("p", "pc", "P", "PC"), default="pc")
    for ax in ("dz", "dt", "dl"):
        common.add_argument(f"--{ax}", help="step as 1/N or a float equal to 1/N")
    common.add_argument("--psi", default="0.9,0.8,0.7", help="comma-separated thresholds")
    common.add_argument("--jobs", type=int, default=None, help="worker processes for sweeps")
    common.add_argument("--seed", type=int, default=None,
                        help="reserved; the model is deterministic")

    parser = argparse.ArgumentParser(prog="cadmia", description=__doc__.split("\n")[0])
    parser.add_argument("--version", action="version", version=f"cadmia {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", parents=[common], help="run one scenario")
    p.add_argument("--dump", choices=("auto", "csv", "binary", "none"), default="auto")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("convergence", parents=[common], help="toy-problem convergence study")
    p.add_argument("--levels", default="3:8")
    p.add_argument("--ref-level", type=int, default=11)
    p.add_argument("--weighting", choices=conv.WEIGHTINGS, default="nodal")
    p.set_defaults(func=cmd_convergence)

    p = sub.add_parser("front", parents=[common], help="separation fronts and log fits")
    p.set_defaults(func=cmd_front)

    p = sub.add_parser("sensitivity", parents=[common], help="OAT study or perturbation cube")
    p.add_argument("mode", choices=("oat", "sweep"))
    p.add_argument("--verbose", action="store_true")
    p.set_defaults(func=cmd_sensitivity)

    p = sub.add_parser("nondim", parents=[common], help="print (nu, mu, xi)")
    p.set_defaults(func=cmd_nondim)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (CadmiaError, ValueError, MemoryError, OSError) as exc:
        if isinstance(exc, MemoryError) and not isinstance(exc, CapacityError):
            exc = CapacityError(str(exc) or "out of memory")
        return _report(exc)


if __name__ == "__main__":
    sys.exit(main())
