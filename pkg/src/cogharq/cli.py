"""Command-line interface: `cogharq sweep ...` and `cogharq validate ...`.

Exit codes: 0 ok, 1 validation-check failure, 2 configuration error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .experiments import (ConfigError, load_config, load_preset, run_sweep,
                          run_validation, write_csv)

PRESETS = ("fig1a", "fig1b", "fig2a", "fig2b")


def _load_spec(args) -> "SweepSpec":
    if args.preset:
        return load_preset(args.preset)
    return load_config(args.config)


def _add_source_args(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--preset", choices=PRESETS, help="shipped figure preset")
    src.add_argument("--config", help="INI sweep configuration file")


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="cogharq",
        description="HARQ throughput/outage analysis for underlay spectrum sharing")
    sub = parser.add_subparsers(dest="command", required=True)

    p_sweep = sub.add_parser("sweep", help="evaluate a parameter sweep to CSV")
    _add_source_args(p_sweep)
    p_sweep.add_argument("--mc", type=int, default=0, metavar="N_PACKETS",
                         help="also run the Monte Carlo twin with N_PACKETS per point")
    p_sweep.add_argument("--seed", type=int, default=0)
    p_sweep.add_argument("--out", default="-", help="output CSV path (default stdout)")

    p_val = sub.add_parser("validate", help="run the analytic-vs-MC check suite")
    _add_source_args(p_val)
    p_val.add_argument("--mc", type=int, default=1_000_000, metavar="N_PACKETS")
    p_val.add_argument("--seed", type=int, default=1)

    args = parser.parse_args(argv)
    try:
        spec = _load_spec(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2

    if args.command == "sweep":
        rows = run_sweep(spec, with_mc=args.mc > 0, mc_packets=args.mc, seed=args.seed)
        if args.out == "-":
            write_csv(rows, sys.stdout, spec, args.seed)
        else:
            with open(args.out, "w") as fh:
                write_csv(rows, fh, spec, args.seed)
        bad = [r for r in rows if r.get("status") != "ok"]
        if bad:
            print(f"warning: {len(bad)} rows flagged with errors", file=sys.stderr)
        return 0

    checks = run_validation(spec, n_packets=args.mc, seed=args.seed)
    for c in checks:
        print(f"{'PASS' if c.passed else 'FAIL'} {c.name}: {c.detail}")
    print(json.dumps({"passed": all(c.passed for c in checks),
                      "checks": [c.as_dict() for c in checks]}))
    return 0 if all(c.passed for c in checks) else 1


if __name__ == "__main__":
    sys.exit(main())
