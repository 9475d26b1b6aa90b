"""Scenario configuration: flat ``key = value`` files with the reference defaults.

Values are in the units engineers quote (dBm, dBi, km); conversion to SI
happens once, in :func:`build_scenario`.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass, fields
from pathlib import Path

from .channel import LinkGains, SatelliteNode, SpectrumPlan, UserTerminal, link_gains
from .errors import ConfigError
from .fdd import FddResult, fdd_evaluate
from .geometry import PlaneGeometry
from .tdd import TddResult, tdd_evaluate
from .units import dbm_to_watts, from_db

__all__ = [
    "ISL_MODES",
    "ScenarioConfig",
    "Scenario",
    "build_scenario",
    "parse_config",
    "load_config",
    "dump_config",
    "apply_overrides",
]

ISL_MODES = ("fdd", "tdd", "both")


@dataclass(frozen=True)
class ScenarioConfig:
    carrier_frequency_hz: float = 2e9
    total_bandwidth_hz: float = 40e6
    fdd_fraction: float = 0.5
    altitude_km: float = 600.0
    num_satellites_per_plane: int = 30
    sat_antenna_gain_dbi: float = 32.0
    s2_antenna_gain_dbi: float | None = None
    interferer_gain_dbi: float | None = None
    ue_antenna_gain_dbi: float = 0.0
    sat_total_power_dbm: float = 30.0
    s2_power_dbm: float | None = None
    ue_tx_power_dbm: float = 20.0
    noise_psd_dbm_hz: float = -174.0
    min_access_rate_bps: float = 10e6
    earth_radius_km: float = 6371.0
    isl_mode: str = "both"

    def problems(self) -> list[str]:
        """Every constraint violation, not just the first."""
        out = []

        def positive(name):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                out.append(f"{name} must be finite and > 0, got {value!r}")

        for name in ("carrier_frequency_hz", "total_bandwidth_hz", "altitude_km", "earth_radius_km"):
            positive(name)
        if not 0 < self.fdd_fraction <= 1:
            out.append(f"fdd_fraction must satisfy 0 < fdd_fraction <= 1, got {self.fdd_fraction!r}")
        if self.num_satellites_per_plane < 2:
            out.append(f"num_satellites_per_plane must be >= 2, got {self.num_satellites_per_plane!r}")
        if not self.min_access_rate_bps >= 0:
            out.append(f"min_access_rate_bps must be >= 0, got {self.min_access_rate_bps!r}")
        for name in ("sat_antenna_gain_dbi", "ue_antenna_gain_dbi", "sat_total_power_dbm",
                     "noise_psd_dbm_hz", "s2_antenna_gain_dbi", "s2_power_dbm"):
            value = getattr(self, name)
            if value is not None and not math.isfinite(value):
                out.append(f"{name} must be finite, got {value!r}")
        # -inf is allowed for the two quantities that may legitimately vanish
        for name in ("interferer_gain_dbi", "ue_tx_power_dbm"):
            value = getattr(self, name)
            if value is not None and (math.isnan(value) or value == math.inf):
                out.append(f"{name} must be a number or -inf, got {value!r}")
        if self.isl_mode not in ISL_MODES:
            out.append(f"isl_mode must be one of {', '.join(ISL_MODES)}, got {self.isl_mode!r}")
        return out

    def validate(self) -> "ScenarioConfig":
        problems = self.problems()
        if problems:
            raise ConfigError(problems)
        return self

    def replace(self, **changes) -> "ScenarioConfig":
        return dataclasses.replace(self, **changes)


@dataclass(frozen=True)
class Scenario:
    """A configuration converted to SI model objects."""

    s1: SatelliteNode
    s2: SatelliteNode
    ue: UserTerminal
    plane: PlaneGeometry
    spectrum: SpectrumPlan
    interferer_gain_linear: float

    def gains(self) -> LinkGains:
        return link_gains(self.s1, self.s2, self.ue, self.plane, self.spectrum,
                          interferer_gain_linear=self.interferer_gain_linear)

    def evaluate_fdd(self, gains: LinkGains | None = None) -> FddResult:
        return fdd_evaluate(gains or self.gains(), self.s1, self.ue, self.spectrum)

    def evaluate_tdd(self, gains: LinkGains | None = None) -> TddResult:
        return tdd_evaluate(gains or self.gains(), self.s1, self.s2, self.ue, self.spectrum)


def build_scenario(cfg: ScenarioConfig) -> Scenario:
    cfg.validate()
    altitude_m = cfg.altitude_km * 1e3
    g_s1 = from_db(cfg.sat_antenna_gain_dbi)
    g_s2 = from_db(cfg.s2_antenna_gain_dbi) if cfg.s2_antenna_gain_dbi is not None else g_s1
    g_int = from_db(cfg.interferer_gain_dbi) if cfg.interferer_gain_dbi is not None else g_s2
    p_s1 = dbm_to_watts(cfg.sat_total_power_dbm)
    p_s2 = dbm_to_watts(cfg.s2_power_dbm) if cfg.s2_power_dbm is not None else p_s1
    return Scenario(
        s1=SatelliteNode(altitude_m, g_s1, p_s1),
        s2=SatelliteNode(altitude_m, g_s2, p_s2),
        ue=UserTerminal(from_db(cfg.ue_antenna_gain_dbi), dbm_to_watts(cfg.ue_tx_power_dbm),
                        cfg.min_access_rate_bps),
        plane=PlaneGeometry(altitude_m, cfg.num_satellites_per_plane, cfg.earth_radius_km * 1e3),
        spectrum=SpectrumPlan(
            carrier_hz=cfg.carrier_frequency_hz,
            total_bandwidth_hz=cfg.total_bandwidth_hz,
            fdd_bandwidth_hz=cfg.fdd_fraction * cfg.total_bandwidth_hz,
            noise_psd_w_per_hz=dbm_to_watts(cfg.noise_psd_dbm_hz),
        ),
        interferer_gain_linear=g_int,
    )


_FIELDS = {f.name: f for f in fields(ScenarioConfig)}


def _convert(name: str, raw: str):
    if name == "isl_mode":
        return raw.strip().lower()
    if name == "num_satellites_per_plane":
        value = float(raw)
        if not value.is_integer():
            raise ValueError(f"expected an integer, got {raw!r}")
        return int(value)
    return float(raw)


def parse_config(text: str, source: str = "<config>") -> ScenarioConfig:
    """Parse ``key = value`` lines; omitted keys keep their defaults.

    Raises
    ------
    ConfigError
        Listing every malformed line, unknown or repeated key and
        constraint violation found.
    """
    problems: list[str] = []
    values: dict = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            problems.append(f"{source}:{lineno}: expected 'key = value', got {line!r}")
            continue
        key, raw = (part.strip() for part in line.split("=", 1))
        if key not in _FIELDS:
            problems.append(f"{source}:{lineno}: unknown key {key!r}")
            continue
        if key in values:
            problems.append(f"{source}:{lineno}: duplicate key {key!r}")
            continue
        try:
            values[key] = _convert(key, raw)
        except ValueError:
            problems.append(f"{source}:{lineno}: invalid value {raw!r} for {key!r}")
    if problems:
        raise ConfigError(problems)
    cfg = ScenarioConfig(**values)
    problems = cfg.problems()
    if problems:
        raise ConfigError([f"{source}: {p}" for p in problems])
    return cfg


def load_config(path: str | Path) -> ScenarioConfig:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc.strerror or exc}") from exc
    return parse_config(text, source=str(path))


def dump_config(cfg: ScenarioConfig) -> str:
    """Serialise every set field; unset optional fields are left out."""
    lines = []
    for name in _FIELDS:
        value = getattr(cfg, name)
        if value is None:
            continue
        lines.append(f"{name} = {value!r}" if isinstance(value, float) else f"{name} = {value}")
    return "\n".join(lines) + "\n"


def apply_overrides(cfg: ScenarioConfig, pairs: list[str]) -> ScenarioConfig:
    """Apply ``key=value`` overrides (later ones win) and re-validate."""
    problems = []
    changes = {}
    for pair in pairs:
        if "=" not in pair:
            problems.append(f"override {pair!r}: expected key=value")
            continue
        key, raw = (part.strip() for part in pair.split("=", 1))
        if key not in _FIELDS:
            problems.append(f"override {pair!r}: unknown key {key!r}")
            continue
        try:
            changes[key] = _convert(key, raw)
        except ValueError:
            problems.append(f"override {pair!r}: invalid value {raw!r} for {key!r}")
    if problems:
        raise ConfigError(problems)
    return cfg.replace(**changes).validate()
