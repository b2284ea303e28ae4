"""Figure 5: primal gap vs iteration for the HEB power objective.

Panels over (p, theta); each shows the slow-start run, faint generic
runs, the dotted T^(-p/(2 theta (p-1))) lower-bound reference, and the
dashed T^(-p/(p-2 theta)) upper-bound reference, both read from the
rates JSON and scaled to the trajectory at the fit-window start.
"""

import os
import sys

sys.path.insert(0, os.path.dirname(__file__))

from _common import build_parser, fwlab, prepare_dirs, report, sizes

from fwlab_figures import FigureSpec, render

FULL_COMBOS = ((3.0, 1.0 / 3.0), (3.0, 0.25), (5.0, 1.0 / 3.0), (5.0, 0.25))
QUICK_COMBOS = ((3.0, 1.0 / 3.0), (5.0, 0.25))


def main(argv=None):
    args = build_parser(__doc__).parse_args(argv)
    prepare_dirs(args)
    size = sizes(args)
    combos = QUICK_COMBOS if args.quick else FULL_COMBOS
    panels = []
    for p, theta in combos:
        tag = f"p{p:g}_th{theta:.3f}"
        slow = fwlab(args, "solve", "--p", p, "--theta", theta, "--mu", 1.0,
                     "--x0", "slow:0.5", "--iters", size["traj_iters"],
                     "--out", os.path.join(args.data_dir, f"fig5_traj_slow_{tag}.csv"))
        generic = [
            fwlab(args, "solve", "--p", p, "--theta", theta, "--mu", 1.0,
                  "--x0", f"random:{seed}", "--iters", size["traj_iters"],
                  "--out", os.path.join(args.data_dir, f"fig5_traj_random{seed}_{tag}.csv"))
            for seed in range(1, size["n_generic"] + 1)
        ]
        rates = fwlab(args, "rates", "--p", p, "--theta", theta, "--mu", 1.0,
                      "--u0", 0.5, "--iters", size["traj_iters"],
                      "--out", os.path.join(args.data_dir, f"fig5_rates_{tag}.json"))
        panels.append({"slow": slow, "generic": generic, "rates": rates})
    result = render(FigureSpec(
        figure_id="fig5",
        inputs={"panels": panels},
        output=os.path.join(args.out_dir, "fig5_rates_heb"),
    ))
    report(result)
    return 0


if __name__ == "__main__":
    sys.exit(main())
