"""Command-line front end.

Exit status: 0 success, 1 I/O failure, 2 configuration error,
3 infeasible minimum rate, 4 ISL not visible.
"""

from __future__ import annotations

import argparse
import sys

from .config import ISL_MODES, ScenarioConfig, apply_overrides, build_scenario, load_config
from .errors import ConfigError, DomainError, InfeasibleError, IslNotVisibleError
from .experiments import SWEEP_VARIABLES, SweepSpec, emit_table, run_sweep, write_table
from .geometry import min_satellites_for_isl, solve_geometry
from .units import to_db

EXIT_OK = 0
EXIT_IO = 1
EXIT_CONFIG = 2
EXIT_INFEASIBLE = 3
EXIT_NOT_VISIBLE = 4


def _line(key: str, value) -> str:
    if isinstance(value, bool):
        value = "true" if value else "false"
    elif isinstance(value, float):
        value = format(value, ".9g")
    return f"{key} = {value}"


def _emit(pairs, out) -> None:
    out.write("".join(_line(k, v) + "\n" for k, v in pairs))


def _scenario_config(args) -> ScenarioConfig:
    cfg = load_config(args.config) if args.config else ScenarioConfig()
    return apply_overrides(cfg, args.set or [])


def cmd_geometry(cfg: ScenarioConfig, args, out) -> int:
    sc = build_scenario(cfg)
    geo = solve_geometry(sc.plane)
    _emit([
        ("d1_m", geo.d1_m),
        ("d2_m", geo.d2_m),
        ("d_isl_m", geo.d_isl_m),
        ("d_isl_max_m", geo.d_isl_max_m),
        ("d_isl_km", geo.d_isl_m / 1e3),
        ("isl_visible", geo.isl_visible),
        ("min_satellites_for_isl", min_satellites_for_isl(sc.plane.altitude_m, sc.plane.earth_radius_m)),
    ], out)
    return EXIT_OK


def cmd_gains(cfg: ScenarioConfig, args, out) -> int:
    gains = build_scenario(cfg).gains()
    pairs = []
    for name in ("beta_ue1", "beta_ue2", "beta_isl"):
        value = getattr(gains, name)
        pairs.append((name, value))
        pairs.append((f"{name}_db", to_db(value) if value > 0 else float("-inf")))
    pairs += [("d1_m", gains.geometry.d1_m), ("d2_m", gains.geometry.d2_m),
              ("d_isl_m", gains.geometry.d_isl_m)]
    _emit(pairs, out)
    return EXIT_OK


def cmd_allocate(cfg: ScenarioConfig, args, out) -> int:
    sc = build_scenario(cfg)
    gains = sc.gains()
    budget = sc.s1.total_power_w
    pairs = []
    if cfg.isl_mode in ("fdd", "both"):
        res = sc.evaluate_fdd(gains)
        pairs += [
            ("fdd.p_access_w", res.allocation.p_access_w),
            ("fdd.p_isl_w", res.allocation.p_isl_w),
            ("fdd.normalized_access_power", res.allocation.p_access_w / budget),
            ("fdd.snr_ue_db", to_db(res.snr_ue) if res.snr_ue > 0 else float("-inf")),
            ("fdd.snr_s2_db", to_db(res.snr_s2) if res.snr_s2 > 0 else float("-inf")),
            ("fdd.rate_access_bps", res.rate_access_bps),
            ("fdd.rate_isl_bps", res.rate_isl_bps),
            ("fdd.rate_total_bps", res.rate_total_bps),
        ]
    if cfg.isl_mode in ("tdd", "both"):
        res = sc.evaluate_tdd(gains)
        pairs += [
            ("tdd.p_access_w", res.allocation.p_access_w),
            ("tdd.p_isl_w", res.allocation.p_isl_w),
            ("tdd.normalized_access_power", res.allocation.p_access_w / budget),
            ("tdd.sinr_ue_phase0", res.sinr_ue_phase0),
            ("tdd.sinr_ue_phase1", res.sinr_ue_phase1),
            ("tdd.sinr_s2", res.sinr_s2),
            ("tdd.rate_access1_bps", res.rate_access1_bps),
            ("tdd.rate_access2_bps", res.rate_access2_bps),
            ("tdd.rate_access_avg_bps", res.rate_access_avg_bps),
            ("tdd.rate_isl_bps", res.rate_isl_bps),
            ("tdd.rate_total_bps", res.rate_total_bps),
        ]
    _emit(pairs, out)
    return EXIT_OK


def cmd_sweep(cfg: ScenarioConfig, args, out) -> int:
    scenarios = ("fdd", "tdd") if cfg.isl_mode == "both" else (cfg.isl_mode,)
    spec = SweepSpec(variable=args.var, start=args.start, stop=args.stop, step=args.step,
                     base_config=cfg, scenarios=scenarios)
    rows = run_sweep(spec, workers=args.workers, channel_only=False if args.allocate else None)
    if args.output and args.output != "-":
        write_table(rows, args.output, args.format)
    else:
        out.write(emit_table(rows, args.format).decode())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-c", "--config", help="scenario file of 'key = value' lines")
    common.add_argument("-s", "--set", action="append", metavar="KEY=VALUE",
                        help="override one configuration key (repeatable)")

    parser = argparse.ArgumentParser(
        prog="satiab",
        description="LEO satellite integrated access and backhaul with FDD or TDD inter-satellite links.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="{geometry,gains,allocate,sweep}")
    sub.add_parser("geometry", parents=[common], help="slant ranges and ISL visibility")
    sub.add_parser("gains", parents=[common], help="access, interference and ISL channel gains")
    sub.add_parser("allocate", parents=[common],
                   help=f"optimal power split and throughput per isl_mode ({'/'.join(ISL_MODES)})")
    sweep = sub.add_parser("sweep", parents=[common], help="parameter sweep written as a table")
    sweep.add_argument("--var", required=True, choices=SWEEP_VARIABLES)
    sweep.add_argument("--from", dest="start", type=float, required=True)
    sweep.add_argument("--to", dest="stop", type=float, required=True)
    sweep.add_argument("--step", type=float, required=True)
    sweep.add_argument("--output", "-o", help="output file (default: standard output)")
    sweep.add_argument("--format", choices=("csv", "json"), default="csv")
    sweep.add_argument("--workers", type=int, default=1, help="worker processes for point evaluation")
    sweep.add_argument("--allocate", action="store_true",
                       help="run the allocators on num_satellites/altitude_m sweeps instead of gains only")
    return parser


COMMANDS = {
    "geometry": cmd_geometry,
    "gains": cmd_gains,
    "allocate": cmd_allocate,
    "sweep": cmd_sweep,
}


def main(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = _scenario_config(args)
        return COMMANDS[args.command](cfg, args, out)
    except (ConfigError, DomainError) as exc:
        err.write(f"satiab: configuration error: {exc}\n")
        return EXIT_CONFIG
    except InfeasibleError as exc:
        err.write(f"satiab: {exc}; lower min_access_rate_bps or raise sat_total_power_dbm\n")
        return EXIT_INFEASIBLE
    except IslNotVisibleError as exc:
        n_min = min_satellites_for_isl(cfg.altitude_km * 1e3, cfg.earth_radius_km * 1e3)
        err.write(f"satiab: {exc}; num_satellites_per_plane must be at least {n_min} "
                  f"at {cfg.altitude_km:g} km\n")
        return EXIT_NOT_VISIBLE
    except OSError as exc:
        err.write(f"satiab: {exc}\n")
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
