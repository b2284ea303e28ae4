"""Figure 1: exact-line-search trajectories in the (u, w)-plane.

Four random feasible initializations on the l3 ball; u stays positive
and carries the distance to the optimum while w alternates sign and
contracts faster.
"""

import os
import sys

sys.path.insert(0, os.path.dirname(__file__))

from _common import build_parser, fwlab, prepare_dirs, report, sizes

from fwlab_figures import FigureSpec, render

SEEDS = (1, 2, 3, 4)


def main(argv=None):
    args = build_parser(__doc__).parse_args(argv)
    prepare_dirs(args)
    size = sizes(args)
    paths = [
        fwlab(args, "solve", "--p", 3, "--rule", "exact",
              "--x0", f"random:{seed}", "--iters", size["short_iters"],
              "--out", os.path.join(args.data_dir, f"fig1_traj_random{seed}_p3.csv"))
        for seed in SEEDS
    ]
    result = render(FigureSpec(
        figure_id="fig1",
        inputs={"trajectories": paths},
        output=os.path.join(args.out_dir, "fig1_uw_trajectories"),
    ))
    report(result)
    return 0


if __name__ == "__main__":
    sys.exit(main())
