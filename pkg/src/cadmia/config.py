"""Scenario configuration files (``cadmia-config v1``).

A configuration is a flat JSON object holding the dimensional parameters,
the spectral tables to use and the humidity profile.  Unknown keys are
rejected.  Curve paths are resolved relative to the configuration file; the
prefix ``bundled:`` refers to the tables shipped with the package.
"""
from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Optional, Union

from . import io, spectral
from .errors import CadmiaError, ConfigError, FixtureError
from .scenario import (CRUST_THICKNESS_CM, DimensionalParameters, DimensionlessModel,
                       HumidityProfile, assemble_model)

SCHEMA = "cadmia-config v1"

PARAMETER_KEYS = {
    "L_cm": "L", "T_ref_s": "T_ref", "lambda_m_nm": "lambda_m", "lambda_M_nm": "lambda_M",
    "A": "A", "E_a": "E_a", "R_gas": "R_gas", "Temp_K": "Temp", "c_ref": "c_ref",
    "w_ref": "w_ref", "w_b": "w_b", "eps_c_ref": "eps_c_ref", "eps_g_ref": "eps_g_ref",
    "I_ref": "I_ref",
}
OPTIONAL_KEYS = {"schema", "name", "description", "irradiance", "reflectance",
                 "absorptivity", "L_c_cm", "humidity", "L_s_cm", "humidity_table",
                 "override_nu", "override_mu", "override_xi"}

BUNDLED = ("bct", "uvt", "wpt_sheet", "wpt_constant", "apt_nu1", "apt_nu2", "apt_nu8", "apt_nu16")


@dataclass(frozen=True, eq=False)
class Scenario:
    """A validated configuration together with its assembled model."""

    name: str
    params: DimensionalParameters
    model: DimensionlessModel
    config: dict
    fixtures: dict = field(default_factory=dict)  # label -> sha256

    @property
    def config_hash(self) -> str:
        return config_hash(self.config)


def config_hash(cfg: dict) -> str:
    blob = json.dumps(cfg, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()


def data_path(name: str) -> Path:
    return Path(str(resources.files("cadmia") / "data" / name))


def _resolve(ref: str, base_dir: Optional[Path]) -> Path:
    if ref.startswith("bundled:"):
        return data_path(ref[len("bundled:"):])
    p = Path(ref)
    if not p.is_absolute() and base_dir is not None:
        p = base_dir / p
    return p


def _number(cfg, key, default=None):
    v = cfg.get(key, default)
    if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
        raise ConfigError(f"{key} must be a finite number, got {v!r}")
    return float(v)


def validate_config(cfg: dict) -> None:
    """Check keys and value types without touching any files."""
    if not isinstance(cfg, dict):
        raise ConfigError("configuration must be a JSON object")
    if cfg.get("schema", SCHEMA) != SCHEMA:
        raise ConfigError(f"unsupported schema {cfg.get('schema')!r}; expected {SCHEMA!r}")
    unknown = set(cfg) - set(PARAMETER_KEYS) - OPTIONAL_KEYS
    if unknown:
        raise ConfigError(f"unknown configuration keys: {', '.join(sorted(unknown))}")
    missing = [k for k in PARAMETER_KEYS if k not in cfg]
    if missing:
        raise ConfigError(f"missing parameters: {', '.join(missing)}")
    for k in PARAMETER_KEYS:
        _number(cfg, k)
    if "irradiance" not in cfg:
        raise ConfigError("missing curve reference 'irradiance'")
    if ("reflectance" in cfg) == ("absorptivity" in cfg):
        raise ConfigError("give exactly one of 'reflectance' or 'absorptivity'")
    variant = cfg.get("humidity", "linear_bct")
    if variant not in HumidityProfile.VARIANTS:
        raise ConfigError(f"unknown humidity variant {variant!r}")
    if variant == "sheet" and "L_s_cm" not in cfg:
        raise ConfigError("sheet humidity needs L_s_cm")
    if variant == "tabulated" and "humidity_table" not in cfg:
        raise ConfigError("tabulated humidity needs humidity_table")
    for k in ("L_c_cm", "L_s_cm", "override_nu", "override_mu", "override_xi"):
        if k in cfg and cfg[k] is not None:
            _number(cfg, k)


def _read_humidity_table(path: Path):
    hdr, rows = io.read_table(path)
    if [h.strip() for h in hdr] != ["z", "w"]:
        raise FixtureError(f"{path}: humidity table needs columns z,w")
    try:
        return tuple((float(a), float(b)) for a, b in rows)
    except ValueError:
        raise FixtureError(f"{path}: non-numeric humidity entry") from None


def _load_curve_file(path: Path, expected: tuple, band) -> tuple:
    meta, records = io.read_curve_csv(path)
    if meta["quantity"] not in expected:
        raise FixtureError(f"{path}: quantity {meta['quantity']!r}, expected {expected}")
    return meta, spectral.load_curve(records, band)


def build_scenario(cfg: dict, base_dir: Optional[Union[str, Path]] = None) -> Scenario:
    """Validate ``cfg``, load its curves and assemble the dimensionless model."""
    validate_config(cfg)
    base_dir = Path(base_dir) if base_dir is not None else None
    try:
        params = DimensionalParameters(
            **{attr: _number(cfg, key) for key, attr in PARAMETER_KEYS.items()})
    except CadmiaError as exc:
        raise ConfigError(str(exc)) from exc
    band = params.band
    fixtures = {}

    irr_path = _resolve(cfg["irradiance"], base_dir)
    _, irradiance = _load_curve_file(irr_path, ("irradiance",), band)
    fixtures[str(cfg["irradiance"])] = io.sha256_file(irr_path)

    if "reflectance" in cfg:
        p = _resolve(cfg["reflectance"], base_dir)
        _, refl = _load_curve_file(p, ("reflectance",), band)
        L_c = _number(cfg, "L_c_cm", CRUST_THICKNESS_CM)
        if L_c <= 0:
            raise ConfigError("L_c_cm must be positive")
        eps_c = spectral.absorptivity_from_reflectance(refl, params.c_ref, L_c,
                                                       params.eps_c_ref)
        fixtures[str(cfg["reflectance"])] = io.sha256_file(p)
    else:
        p = _resolve(cfg["absorptivity"], base_dir)
        meta, curve = _load_curve_file(p, ("absorptivity",), band)
        units = meta["units"].replace(" ", "")
        if units in ("cm2/mol", "cm2mol-1", "cm^2/mol"):
            eps_c = curve.scaled(1.0 / params.eps_c_ref)
        elif units in ("1", "dimensionless"):
            eps_c = curve
        else:
            raise FixtureError(f"{p}: unsupported absorptivity units {meta['units']!r}")
        fixtures[str(cfg["absorptivity"])] = io.sha256_file(p)

    variant = cfg.get("humidity", "linear_bct")
    L_s = _number(cfg, "L_s_cm") / params.L if variant == "sheet" else None
    knots = None
    if variant == "tabulated":
        hp = _resolve(cfg["humidity_table"], base_dir)
        knots = _read_humidity_table(hp)
        fixtures[str(cfg["humidity_table"])] = io.sha256_file(hp)
    profile = HumidityProfile(variant, params.humidity_ratio, L_s=L_s, knots=knots)

    overrides = {k: cfg.get(f"override_{k}") for k in ("nu", "mu", "xi")}
    name = cfg.get("name", "")
    try:
        model = assemble_model(params, irradiance, eps_c, profile,
                               overrides=overrides, name=name)
    except CadmiaError as exc:
        if isinstance(exc, (ConfigError, FixtureError)):
            raise
        raise ConfigError(str(exc)) from exc
    return Scenario(name, params, model, dict(cfg), fixtures)


def load_config(path: Union[str, Path]) -> dict:
    path = Path(path)
    try:
        cfg = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise ConfigError(f"cannot read configuration {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON ({exc})") from exc
    validate_config(cfg)
    return cfg


def load_scenario(path: Union[str, Path]) -> Scenario:
    path = Path(path)
    return build_scenario(load_config(path), path.parent)


def bundled_config(name: str) -> dict:
    if name not in BUNDLED:
        raise ConfigError(f"no bundled scenario {name!r}; choose from {BUNDLED}")
    return json.loads(data_path(f"{name}.json").read_text(encoding="utf-8"))


def bundled_scenario(name: str = "bct", **changes) -> Scenario:
    """Bundled scenario, optionally with some configuration keys replaced."""
    cfg = bundled_config(name)
    cfg.update(changes)
    return build_scenario(cfg)
