"""Run all five figure scripts end to end (generation + rendering)."""

import os
import sys

sys.path.insert(0, os.path.dirname(__file__))

import fig1_uw_trajectories
import fig2_coordinate_views
import fig3_heatmaps
import fig4_rates_quadratic
import fig5_rates_heb
from _common import build_parser

SCRIPTS = (
    fig1_uw_trajectories,
    fig2_coordinate_views,
    fig3_heatmaps,
    fig4_rates_quadratic,
    fig5_rates_heb,
)


def main(argv=None):
    args = build_parser(__doc__).parse_args(argv)
    forwarded = ["--data-dir", args.data_dir, "--out-dir", args.out_dir]
    if args.quick:
        forwarded.append("--quick")
    if args.reuse_data:
        forwarded.append("--reuse-data")
    for script in SCRIPTS:
        code = script.main(forwarded)
        if code != 0:
            return code
    return 0


if __name__ == "__main__":
    sys.exit(main())
