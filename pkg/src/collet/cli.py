"""Command-line front end.

Exit codes: 0 success, 2 configuration or validation error, 3 numerical
failure (the failing step is reported on stderr).
"""

from __future__ import annotations

import argparse
import logging
import math
import sys
from typing import Sequence

from .config import RunConfig
from .designspace import PRESET_NAMES, Scenario, sweep
from .emit import (csv_text, curve_csv, fmt, grid_csv, grid_json, json_text, round9,
                   write_atomic)
from .errors import ColletError, ConfigError, DomainError
from .geometry import EllipseState
from .oracle import validate_step
from .section import section_at
from .solver import StopReason, grip_range, march

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC = 0, 2, 3

VERIFY_HEADER = ["step", "delta_mm", "b_mm", "gap_mm", "delta_tip_step_mm",
                 "fe_contact_mm", "fe_tip_mm", "contact_err", "tip_err", "absolute"]


class NumericalFailure(Exception):
    pass


def _load(args) -> RunConfig:
    if args.config is None and args.preset is None:
        raise ConfigError("give --config FILE or --preset S1..S5")
    if args.config is None:
        return RunConfig.for_preset(args.preset)
    return RunConfig.load(args.config, preset=args.preset)


def _march(cfg: RunConfig):
    r = cfg.run
    return march(cfg.collet_geometry(), cfg.travel(), r.n_steps, r.clearance)


def _check_failure(curve) -> None:
    if curve.stop_reason is StopReason.NO_SOLUTION:
        raise NumericalFailure(curve.failure)


def cmd_curve(args, cfg: RunConfig) -> None:
    curve = _march(cfg)
    path = write_atomic(args.out, curve_csv(curve))
    print(f"{path}: {len(curve.rows)} rows, stop={curve.stop_reason.value}, "
          f"delta={fmt(curve.final_delta)} mm, tip={fmt(curve.rows[-1].delta_tip)} mm")
    _check_failure(curve)


def cmd_design_space(args, cfg: RunConfig) -> None:
    scenario = Scenario.parse(args.scenario or cfg.sweep.scenario)
    if args.values:
        try:
            values = [float(v) for v in args.values.split(",") if v.strip()]
        except ValueError:
            raise ConfigError(f"--values must be comma-separated numbers, got {args.values!r}") from None
    else:
        values = list(cfg.sweep.values)
    if not values:
        raise ConfigError("no sweep values: use --values or the config sweep block")
    r = cfg.run
    grid = sweep(cfg.collet_geometry(), scenario, values, cfg.travel(), r.n_steps,
                 r.clearance, workers=args.workers)
    path = write_atomic(args.out, grid_csv(grid))
    print(f"{path}: {len(grid.curves)} curves over {scenario.field}")
    if args.json:
        print(write_atomic(args.json, json_text(grid_json(grid))))
    for value, curve in zip(grid.swept_values, grid.curves):
        if curve.stop_reason is StopReason.NO_SOLUTION:
            print(f"warning: {scenario.field}={fmt(value)}: {curve.failure}", file=sys.stderr)


def cmd_grip_range(args, cfg: RunConfig) -> None:
    geom = cfg.collet_geometry()
    curve = _march(cfg)
    low, high = grip_range(geom, curve)
    report = {
        "min": round9(low),
        "max": round9(high),
        "max_tip_mm": round9(curve.max_tip),
        "delta_mm": round9(curve.final_delta),
        "stop_reason": curve.stop_reason.value,
    }
    path = write_atomic(args.out, json_text(report))
    print(f"{path}: knob diameters {fmt(report['min'])} to {fmt(report['max'])} mm "
          f"({curve.stop_reason.value})")
    _check_failure(curve)


def cmd_verify(args, cfg: RunConfig) -> None:
    geom = cfg.collet_geometry()
    n_elems = args.elems or cfg.oracle.n_elems
    curve = _march(cfg)
    rows = []
    for k, sol in enumerate(curve.steps):
        state = EllipseState(geom.a, curve.rows[k].b, k)
        chk = validate_step(geom, state, sol, n_elems)
        rows.append([k, curve.rows[k + 1].delta, curve.rows[k].b, sol.gap,
                     sol.delta_tip_step, chk.contact_v, chk.tip_v, chk.contact_err,
                     chk.tip_err, int(chk.absolute)])
    path = write_atomic(args.out, csv_text(VERIFY_HEADER, rows))
    worst = max((row[8] for row in rows), default=0.0)
    status = "ok" if worst <= cfg.oracle.tolerance else "exceeds tolerance"
    print(f"{path}: {len(rows)} steps, max tip error {fmt(worst)} ({status})")
    _check_failure(curve)


def cmd_section(args, cfg: RunConfig) -> None:
    geom = cfg.collet_geometry()
    props = section_at(geom, geom.initial_state(), math.radians(args.theta))
    for name in ("theta", "R_bar", "alpha", "y_bar", "I_zz", "I_c"):
        print(f"{name}={fmt(getattr(props, name))}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="collet", description="Elliptical-jaw collet deflection model.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON run configuration")
    common.add_argument("--preset", choices=PRESET_NAMES, help="sample geometry")
    common.add_argument("--dump-config", metavar="FILE",
                        help="write the resolved configuration and exit")

    p = sub.add_parser("curve", parents=[common], help="tip deflection vs adaptor travel")
    p.add_argument("--out", default="curve.csv")
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("design-space", parents=[common], help="sweep chuck width or adaptor diameter")
    p.add_argument("--scenario", help="chuck | adaptor (or chuck_size | adaptor_diameter)")
    p.add_argument("--values", help="comma-separated swept values in mm")
    p.add_argument("--out", default="grid.csv")
    p.add_argument("--json")
    p.add_argument("--workers", type=int, default=None)
    p.set_defaults(func=cmd_design_space, preset_default="S3")

    p = sub.add_parser("grip-range", parents=[common], help="grippable knob diameters")
    p.add_argument("--out", default="report.json")
    p.set_defaults(func=cmd_grip_range)

    p = sub.add_parser("verify", parents=[common], help="per-step check against the frame model")
    p.add_argument("--elems", type=int, default=None)
    p.add_argument("--out", default="verify.csv")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("section", parents=[common], help="cross-section properties")
    p.add_argument("--theta", type=float, required=True, help="polar angle in degrees")
    p.set_defaults(func=cmd_section)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.config is None and args.preset is None:
        args.preset = getattr(args, "preset_default", None)
    try:
        cfg = _load(args)
        if args.dump_config:
            print(write_atomic(args.dump_config, json_text(cfg.to_dict())))
            return EXIT_OK
        args.func(args, cfg)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NumericalFailure as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ColletError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
