"""Figure 4: primal gap vs iteration on the quadratic, p in {3, 5}.

Slow-start runs against faint generic initializations with the dashed
T^(-p/(p-1)) reference, whose exponent comes from the rates JSON.
"""

import os
import sys

sys.path.insert(0, os.path.dirname(__file__))

from _common import build_parser, fwlab, prepare_dirs, report, sizes

from fwlab_figures import FigureSpec, render

PS = (3.0, 5.0)


def main(argv=None):
    args = build_parser(__doc__).parse_args(argv)
    prepare_dirs(args)
    size = sizes(args)
    panels = []
    for p in PS:
        slow = fwlab(args, "solve", "--p", p, "--x0", "slow:0.5",
                     "--iters", size["traj_iters"],
                     "--out", os.path.join(args.data_dir, f"fig4_traj_slow_p{p:g}.csv"))
        generic = [
            fwlab(args, "solve", "--p", p, "--x0", f"random:{seed}",
                  "--iters", size["traj_iters"],
                  "--out", os.path.join(args.data_dir, f"fig4_traj_random{seed}_p{p:g}.csv"))
            for seed in range(1, size["n_generic"] + 1)
        ]
        rates = fwlab(args, "rates", "--p", p, "--u0", 0.5,
                      "--iters", size["traj_iters"],
                      "--out", os.path.join(args.data_dir, f"fig4_rates_p{p:g}.json"))
        panels.append({"slow": slow, "generic": generic, "rates": rates})
    result = render(FigureSpec(
        figure_id="fig4",
        inputs={"panels": panels},
        output=os.path.join(args.out_dir, "fig4_rates_quadratic"),
    ))
    report(result)
    return 0


if __name__ == "__main__":
    sys.exit(main())
