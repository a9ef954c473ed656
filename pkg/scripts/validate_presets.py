#!/usr/bin/env python3
"""Run the analytic-vs-simulation consistency checks on every built-in preset.

Exits 0 when all checks pass, 1 otherwise.
"""

import argparse
import sys

from cogharq.experiments import load_preset, run_validation

PANELS = ("fig1a", "fig1b", "fig2a", "fig2b")


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--mc", type=int, default=500_000, help="packets per check")
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args(argv)

    all_ok = True
    for panel in PANELS:
        checks = run_validation(load_preset(panel), n_packets=args.mc,
                                seed=args.seed)
        bad = [c for c in checks if not c.passed]
        all_ok = all_ok and not bad
        print(f"{panel}: {len(checks) - len(bad)}/{len(checks)} checks passed")
        for c in bad:
            print(f"  FAIL {c.name}: {c.detail}")
    return 0 if all_ok else 1


if __name__ == "__main__":
    sys.exit(main())
