"""Parameter sweeps over a base scenario, emitted as CSV or JSON tables.

Each sweep point is independent, so points may be evaluated in worker
processes; rows are always emitted in the same order (swept value
ascending, FDD before TDD), which keeps the output byte-identical.
"""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import astuple, dataclass, fields
from pathlib import Path

from .config import ScenarioConfig, build_scenario
from .errors import ConfigError, InfeasibleError, IslNotVisibleError
from .channel import free_space_gain
from .geometry import solve_geometry
from .units import to_db

__all__ = [
    "SWEEP_VARIABLES",
    "SCENARIOS",
    "SweepSpec",
    "SweepRow",
    "sweep_values",
    "sweep_channel_gains",
    "sweep_power",
    "sweep_min_rate",
    "run_sweep",
    "emit_table",
    "write_table",
]

SWEEP_VARIABLES = ("sat_power_dbm", "min_rate_bps", "num_satellites", "altitude_m")
SCENARIOS = ("fdd", "tdd")
_CHANNEL_VARIABLES = ("num_satellites", "altitude_m")


@dataclass(frozen=True)
class SweepSpec:
    variable: str
    start: float
    stop: float
    step: float
    base_config: ScenarioConfig = ScenarioConfig()
    scenarios: tuple[str, ...] = SCENARIOS

    def __post_init__(self):
        problems = []
        if self.variable not in SWEEP_VARIABLES:
            problems.append(f"sweep variable must be one of {', '.join(SWEEP_VARIABLES)}, got {self.variable!r}")
        if not (math.isfinite(self.step) and self.step > 0):
            problems.append(f"sweep step must be > 0, got {self.step!r}")
        if not (math.isfinite(self.start) and math.isfinite(self.stop) and self.start <= self.stop):
            problems.append(f"sweep range needs from <= to, got from={self.start!r} to={self.stop!r}")
        if not self.scenarios:
            problems.append("sweep needs at least one scenario (fdd, tdd)")
        unknown = [s for s in self.scenarios if s not in SCENARIOS]
        if unknown:
            problems.append(f"unknown scenarios {unknown}; expected a subset of {SCENARIOS}")
        if self.variable == "num_satellites" and not (float(self.start).is_integer()
                                                      and float(self.step).is_integer()):
            problems.append("num_satellites sweeps need integer from and step")
        problems.extend(self.base_config.problems())
        if problems:
            raise ConfigError(problems)
        # canonical order so that row order never depends on how scenarios were listed
        object.__setattr__(self, "scenarios", tuple(s for s in SCENARIOS if s in self.scenarios))


@dataclass(frozen=True)
class SweepRow:
    """One output line. ``None`` marks a quantity that does not exist at this point."""

    swept_value: float
    scenario: str
    beta_ue1_db: float | None
    beta_isl_db: float | None
    p_access_w: float | None
    p_isl_w: float | None
    normalized_access_power: float | None
    rate_access_bps: float | None
    rate_isl_bps: float | None
    rate_total_bps: float | None
    feasible: bool
    beta_ue1: float | None = None
    beta_ue2: float | None = None
    beta_isl: float | None = None
    normalized_access_power_avg: float | None = None
    status: str = "ok"


COLUMNS = tuple(f.name for f in fields(SweepRow))


def sweep_values(spec: SweepSpec) -> list[float]:
    """Grid points, endpoints inclusive, computed from the index."""
    count = math.floor((spec.stop - spec.start) / spec.step + 1e-9) + 1
    values = [spec.start + i * spec.step for i in range(count)]
    if spec.variable == "num_satellites":
        return [int(round(v)) for v in values]
    return values


def _apply(cfg: ScenarioConfig, variable: str, value) -> ScenarioConfig:
    if variable == "sat_power_dbm":
        return cfg.replace(sat_total_power_dbm=float(value))
    if variable == "min_rate_bps":
        return cfg.replace(min_access_rate_bps=float(value))
    if variable == "num_satellites":
        return cfg.replace(num_satellites_per_plane=int(value))
    return cfg.replace(altitude_km=float(value) / 1e3)


def _row(value, scenario: str, status: str = "ok", **known) -> SweepRow:
    row = dict.fromkeys(COLUMNS)
    row.update(swept_value=value, scenario=scenario, feasible=status == "ok", status=status, **known)
    return SweepRow(**row)


def _gain_columns(gains) -> dict:
    return dict(beta_ue1=gains.beta_ue1, beta_ue1_db=to_db(gains.beta_ue1),
                beta_ue2=gains.beta_ue2,
                beta_isl=gains.beta_isl, beta_isl_db=to_db(gains.beta_isl))


def _channel_rows(cfg: ScenarioConfig, value) -> list[SweepRow]:
    sc = build_scenario(cfg)
    try:
        gains = sc.gains()
    except IslNotVisibleError:
        geo = solve_geometry(sc.plane)
        beta_ue1 = free_space_gain(geo.d1_m, sc.spectrum.carrier_hz,
                                   sc.s1.antenna_gain_linear, sc.ue.antenna_gain_linear)
        return [_row(value, "channel", "isl_not_visible", beta_ue1=beta_ue1, beta_ue1_db=to_db(beta_ue1))]
    return [_row(value, "channel", **_gain_columns(gains))]


def _allocation_rows(cfg: ScenarioConfig, value, scenarios: tuple[str, ...]) -> list[SweepRow]:
    sc = build_scenario(cfg)
    try:
        gains = sc.gains()
    except IslNotVisibleError:
        return [_row(value, name, "isl_not_visible") for name in scenarios]
    known = _gain_columns(gains)
    budget = sc.s1.total_power_w
    rows = []
    for name in scenarios:
        try:
            if name == "fdd":
                res = sc.evaluate_fdd(gains)
                share = res.allocation.p_access_w / budget
                rows.append(_row(value, name,
                                 p_access_w=res.allocation.p_access_w, p_isl_w=res.allocation.p_isl_w,
                                 normalized_access_power=share, normalized_access_power_avg=share,
                                 rate_access_bps=res.rate_access_bps, rate_isl_bps=res.rate_isl_bps,
                                 rate_total_bps=res.rate_total_bps, **known))
            else:
                res = sc.evaluate_tdd(gains)
                share = res.allocation.p_access_w / budget
                # in the S2-transmitting phase the whole budget serves access
                rows.append(_row(value, name,
                                 p_access_w=res.allocation.p_access_w, p_isl_w=res.allocation.p_isl_w,
                                 normalized_access_power=share, normalized_access_power_avg=(share + 1.0) / 2.0,
                                 rate_access_bps=res.rate_access_avg_bps, rate_isl_bps=res.rate_isl_bps,
                                 rate_total_bps=res.rate_total_bps, **known))
        except InfeasibleError:
            rows.append(_row(value, name, "rate_infeasible", **known))
    return rows


def _evaluate_point(args) -> list[SweepRow]:
    cfg, variable, value, scenarios = args
    cfg = _apply(cfg, variable, value)
    if variable in _CHANNEL_VARIABLES and scenarios == ():
        return _channel_rows(cfg, value)
    return _allocation_rows(cfg, value, scenarios)


def _run(spec: SweepSpec, scenarios: tuple[str, ...], workers: int) -> list[SweepRow]:
    tasks = [(spec.base_config, spec.variable, v, scenarios) for v in sweep_values(spec)]
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_evaluate_point, tasks, chunksize=max(1, len(tasks) // (4 * workers))))
    else:
        chunks = [_evaluate_point(t) for t in tasks]
    rows = [row for chunk in chunks for row in chunk]
    order = {name: i for i, name in enumerate(("channel",) + SCENARIOS)}
    return sorted(rows, key=lambda r: (r.swept_value, order[r.scenario]))


def sweep_channel_gains(spec: SweepSpec, workers: int = 1) -> list[SweepRow]:
    """Access and ISL gains against constellation size or altitude.

    Points where neighbours lose line of sight are kept and flagged
    ``isl_not_visible``.
    """
    if spec.variable not in _CHANNEL_VARIABLES:
        raise ConfigError(f"channel-gain sweeps vary num_satellites or altitude_m, not {spec.variable!r}")
    return _run(spec, (), workers)


def sweep_power(spec: SweepSpec, workers: int = 1) -> list[SweepRow]:
    if spec.variable != "sat_power_dbm":
        raise ConfigError(f"power sweeps vary sat_power_dbm, not {spec.variable!r}")
    return _run(spec, spec.scenarios, workers)


def sweep_min_rate(spec: SweepSpec, workers: int = 1) -> list[SweepRow]:
    if spec.variable != "min_rate_bps":
        raise ConfigError(f"minimum-rate sweeps vary min_rate_bps, not {spec.variable!r}")
    return _run(spec, spec.scenarios, workers)


def run_sweep(spec: SweepSpec, workers: int = 1, channel_only: bool | None = None) -> list[SweepRow]:
    """Run any sweep.

    Geometry variables produce channel-gain rows unless ``channel_only``
    is False, in which case both allocators run at every point.
    """
    if channel_only is None:
        channel_only = spec.variable in _CHANNEL_VARIABLES
    if channel_only:
        return sweep_channel_gains(spec, workers)
    return _run(spec, spec.scenarios, workers)


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return format(value, ".9g")
    return str(value)


def _json_value(value):
    if isinstance(value, float):
        return float(format(value, ".9g"))
    return value


def emit_table(rows: list[SweepRow], fmt: str = "csv") -> bytes:
    """Serialise rows as CSV (header + one line per row) or a JSON array.

    Numbers carry 9 significant digits; absent quantities are empty CSV
    cells or JSON nulls.
    """
    if not rows:
        raise ConfigError("nothing to emit: the sweep produced no rows")
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(COLUMNS)
        for row in rows:
            writer.writerow(_fmt(v) for v in astuple(row))
        return buf.getvalue().encode()
    if fmt == "json":
        records = [{k: _json_value(v) for k, v in zip(COLUMNS, astuple(row))} for row in rows]
        return (json.dumps(records, indent=2) + "\n").encode()
    raise ConfigError(f"unknown table format {fmt!r}; expected csv or json")


def write_table(rows: list[SweepRow], path: str | Path, fmt: str = "csv") -> None:
    data = emit_table(rows, fmt)
    path = Path(path)
    try:
        path.write_bytes(data)
    except OSError as exc:
        raise OSError(exc.errno, f"cannot write table to {path}: {exc.strerror}") from exc
