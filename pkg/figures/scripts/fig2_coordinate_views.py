"""Figure 2: three coordinate views of one slow-start trajectory.

Original (x1, x2) with the ball boundary, recentered (u, w), and scaled
(u, y) where the slow curve appears as the horizontal level C_p (read
from the constants JSON, not hard-coded).
"""

import os
import sys

sys.path.insert(0, os.path.dirname(__file__))

from _common import build_parser, fwlab, prepare_dirs, report, sizes

from fwlab_figures import FigureSpec, render


def main(argv=None):
    args = build_parser(__doc__).parse_args(argv)
    prepare_dirs(args)
    size = sizes(args)
    traj = fwlab(args, "solve", "--p", 3, "--rule", "exact", "--x0", "slow:0.75",
                 "--iters", size["fig2_iters"],
                 "--out", os.path.join(args.data_dir, "fig2_traj_slow_u075_p3.csv"))
    constants = fwlab(args, "constants", "--p", 3,
                      "--out", os.path.join(args.data_dir, "fig2_constants_p3.json"))
    result = render(FigureSpec(
        figure_id="fig2",
        inputs={"trajectory": traj, "constants": constants},
        output=os.path.join(args.out_dir, "fig2_coordinate_views"),
    ))
    report(result)
    return 0


if __name__ == "__main__":
    sys.exit(main())
