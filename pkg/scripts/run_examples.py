#!/usr/bin/env python3
"""Reproduce the three worked state-preparation examples.

Runs solve, simulate and verify on each bundled scenario and leaves the
coupling/population traces under the output directory, one subdirectory
per scenario.  The CSVs are the plotting contract: feed them to any tool
to regenerate the pulse and population figures.
"""

import argparse
import sys
from pathlib import Path

from fourlevel.cli import main as cli

REPO = Path(__file__).resolve().parents[1]
SCENARIOS = ("tripod", "diamond", "ntype")


def run(args=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", type=Path, default=REPO / "out" / "examples")
    parser.add_argument("--steps", type=int, default=None)
    opts = parser.parse_args(args)

    status = 0
    for name in SCENARIOS:
        scenario = REPO / "scenarios" / f"{name}.json"
        out = opts.out / name
        print(f"== {name} ==")
        for command in ("solve", "simulate", "verify"):
            argv = [command, "--scenario", str(scenario), "--out", str(out)]
            if opts.steps is not None:
                argv += ["--steps", str(opts.steps)]
            code = cli(argv)
            if code != 0:
                print(f"{command} on {name} exited with {code}")
                status = code
    return status


if __name__ == "__main__":
    sys.exit(run())
