"""Shared plumbing for the figure scripts.

The scripts talk to fwlab exclusively through its command line and file
formats: inputs are generated by invoking `python -m fwlab.cli ...` and
consumed from the written CSV/JSON artifacts.
"""

from __future__ import annotations

import argparse
import os
import subprocess
import sys

FULL = {
    "traj_iters": 100_000,
    "short_iters": 1_000,
    "fig2_iters": 20_000,
    "grid": 200,
    "heatmap_ps": (2.0, 2.95, 3.0, 3.1),
    "n_generic": 5,
    "jobs": 2,
}

QUICK = {
    "traj_iters": 3_000,
    "short_iters": 300,
    "fig2_iters": 800,
    "grid": 32,
    "heatmap_ps": (2.0, 3.0),
    "n_generic": 2,
    "jobs": 2,
}


def build_parser(description):
    parser = argparse.ArgumentParser(description=description)
    parser.add_argument("--data-dir", default="figure-data",
                        help="where CLI outputs are generated/read")
    parser.add_argument("--out-dir", default="figure-output",
                        help="where images are written")
    parser.add_argument("--quick", action="store_true",
                        help="small sizes for smoke runs and tests")
    parser.add_argument("--reuse-data", action="store_true",
                        help="skip generation when the input file already exists")
    return parser


def sizes(args):
    return QUICK if args.quick else FULL


def prepare_dirs(args):
    os.makedirs(args.data_dir, exist_ok=True)
    os.makedirs(args.out_dir, exist_ok=True)


def fwlab(args, *cli_args):
    """Run one fwlab CLI invocation, honoring --reuse-data for --out targets."""
    cli_args = [str(a) for a in cli_args]
    if args.reuse_data and "--out" in cli_args:
        out = cli_args[cli_args.index("--out") + 1]
        if os.path.exists(out):
            return out
    subprocess.run([sys.executable, "-m", "fwlab.cli", *cli_args], check=True)
    if "--out" in cli_args:
        return cli_args[cli_args.index("--out") + 1]
    return None


def report(result):
    print(f"{result.figure_id}: wrote {', '.join(result.outputs)}")
    for line in result.reference_lines:
        print(f"  reference line: exponent={line.exponent!r} scale={line.scale:.6g} "
              f"({line.style}, {line.label})")
