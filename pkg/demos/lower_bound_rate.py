"""The slow-start lower bound in action.

Runs exact-line-search Frank-Wolfe on f(x) = ||x - e1||^2 over the l3 and
l5 balls from the slow-start initialization, fits the empirical decay of
the primal gap, and compares h_T * T^(p/(p-1)) against the closed-form
asymptotic constant ((p+1)/p)^2 (p/(4(p-1)))^(p/(p-1)).
"""

from fwlab import (
    ProblemSpec,
    Quadratic,
    SolverConfig,
    constant_convergence,
    fit_rate,
    run,
    slow_constants,
    slow_start,
)

T = 100_000
U0 = 0.5

for p in (3.0, 5.0):
    sc = slow_constants(p)
    x0 = slow_start(U0, p)
    print(f"\n=== p = {p:g} ===")
    print(f"slow start x0 = ({x0[0]:.6f}, {x0[1]:.6f}),  C_p = {sc.C_p:.7f}")

    records = run(ProblemSpec(p=p), Quadratic(), x0, SolverConfig(max_iters=T))
    fit = fit_rate(records, window_fraction=0.1)
    print(f"log-log slope over t in [{fit.window[0]}, {fit.window[1]}]: "
          f"{fit.slope:+.4f}   (theory: {-sc.rate_exponent:+.4f})")

    series = constant_convergence(records, p)
    print("h_t * t^rate on its way to the asymptotic constant:")
    for t_probe in (100, 1000, 10_000, T):
        val = dict(series)[t_probe]
        print(f"  t = {t_probe:>6}:  {val:.6f}")
    print(f"  theory:      {sc.thm_constant:.6f}")
