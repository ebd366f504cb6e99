"""Command-line entry point: ``gan-qwr <command> [--config FILE] [--out DIR] ...``.

Exit status 0 on success (also for an empty table, which is reported as a
warning). Failures print one JSON error record to stderr and exit with 2
(configuration) or 3 (computation / output).
"""
from __future__ import annotations

import argparse
import json
import logging
import sys

from .config import COMMANDS, RunConfig, load_config, with_overrides
from .errors import ConfigError, GanQwrError
from .runner import WORKERS_ENV, run


def _radii(text):
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated radii, got {text!r}") from None


def build_parser():
    p = argparse.ArgumentParser(
        prog="gan-qwr",
        description="GaN/AlN core/shell wire and dot: levels, donor binding, absorption, dielectric.",
        epilog=f"Set {WORKERS_ENV}=N to run sweep/compare jobs on N worker processes.",
    )
    p.add_argument("command", nargs="?", choices=COMMANDS,
                   help="overrides [run] command from the config")
    p.add_argument("--config", help="INI configuration file")
    p.add_argument("--out", help="output directory (overrides [run] output)")
    p.add_argument("--radii", type=_radii, help="core radii in nm, e.g. 3,4")
    p.add_argument("--mode", choices=("detuning", "amplitude", "pointwise"), help="wire lineshape")
    p.add_argument("--matching", choices=("mass", "plain"), help="interface derivative condition")
    p.add_argument("--wire-states", choices=("bare", "donor"))
    p.add_argument("--background-eps", type=float)
    p.add_argument("--gamma-mev", type=float)
    p.add_argument("--temperature-k", type=float)
    p.add_argument("--fermi-offset-mev", type=float)
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def _fail(exc, code):
    record = exc.as_record() if isinstance(exc, ConfigError) else {
        "error": type(exc).__name__, "message": str(exc)}
    print(json.dumps(record, sort_keys=True), file=sys.stderr)
    return code


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = load_config(args.config) if args.config else RunConfig()
        cfg = with_overrides(
            cfg, command=args.command, output=args.out, radii=args.radii, mode=args.mode,
            matching=args.matching, wire_states=args.wire_states,
            background_eps=args.background_eps, gamma_mev=args.gamma_mev,
            temperature_k=args.temperature_k, fermi_offset_mev=args.fermi_offset_mev,
        )
    except ConfigError as exc:
        return _fail(exc, 2)
    try:
        result = run(cfg)
    except ConfigError as exc:
        return _fail(exc, 2)
    except (GanQwrError, ValueError, OSError) as exc:
        return _fail(exc, 3)
    for f in result.files:
        print(f)
    if result.status != "ok":
        print(f"warning: {result.status} table", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
