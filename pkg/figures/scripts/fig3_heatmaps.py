"""Figure 3: iteration-count heatmaps across ball exponents.

One panel per p; the slow strips around the fixed-point curve appear at
p = 3 and widen for p > 3, while p = 2 shows no strip at all.
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
    paths = [
        fwlab(args, "heatmap", "--p", p, "--grid", size["grid"],
              "--target", 1e-4, "--cap", 10**6, "--jobs", size["jobs"],
              "--out", os.path.join(args.data_dir, f"fig3_heatmap_p{p:g}.csv"))
        for p in size["heatmap_ps"]
    ]
    result = render(FigureSpec(
        figure_id="fig3",
        inputs={"heatmaps": paths},
        output=os.path.join(args.out_dir, "fig3_heatmaps"),
    ))
    report(result)
    return 0


if __name__ == "__main__":
    sys.exit(main())
