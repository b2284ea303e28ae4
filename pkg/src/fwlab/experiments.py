"""Experiment harness: rate fits, asymptotic constants, heatmaps, HEB runs.

Everything here reproduces a theorem-level numeric claim: the measured
log-log slope of the gap along slow-start trajectories, the convergence
of h_t t^(p/(p-1)) to its closed-form constant, the contraction law
(1 - s_t) / r_t^kappa -> 2 C_p^2, iteration-count heatmaps over the
ball, and the exact trajectory coincidence between the quadratic and
its HEB power transform.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .dynamics import fixed_point_y, slow_constants, slow_start
from .errors import InsufficientDataError
from .geometry import BallSpec, is_strictly_feasible
from .objectives import HEBPower, Quadratic, residual
from .precision import DOUBLE, Precision
from .solver import (
    RULE_EXACT,
    ProblemSpec,
    SolverConfig,
    iterations_to_target,
    run,
)

#: Cells must satisfy ||x||_p <= 1 - this margin to count as interior.
INTERIOR_MARGIN = 1e-9


@dataclass(frozen=True)
class RateFit:
    """Least-squares line through (log10 t, log10 h) over a trailing window."""

    slope: float
    intercept: float
    window: tuple
    r_squared: float


@dataclass(frozen=True)
class HeatmapCell:
    """Iterations from (x1, x2) to the target gap; iters None = cap reached."""

    x1: float
    x2: float
    iters: int | None


@dataclass(frozen=True)
class HebResult:
    """Gap series of an HEB run plus its two reference exponents."""

    records: list
    gaps: list
    lower_exponent: float
    upper_exponent: float


def fit_rate(records, window_fraction=0.1) -> RateFit:
    """Fit log10 h against log10 t over t in [window_fraction * T, T].

    Needs at least 50 recorded points with positive gap in the window.
    """
    if not 0 < window_fraction < 1:
        raise ValueError(f"window_fraction must lie in (0, 1), got {window_fraction}")
    T = records[-1].t
    t_lo = window_fraction * T
    ts, hs = [], []
    for rec in records:
        if rec.t >= t_lo and rec.t >= 1:
            if rec.h <= 0:
                raise InsufficientDataError(f"nonpositive gap h = {rec.h} at t = {rec.t} in window")
            ts.append(rec.t)
            hs.append(rec.h)
    if len(ts) < 50:
        raise InsufficientDataError(f"window [{t_lo}, {T}] holds {len(ts)} points, need >= 50")
    lt = np.log10(np.asarray(ts, dtype=float))
    lh = np.log10(np.asarray(hs, dtype=float))
    A = np.vstack([lt, np.ones_like(lt)]).T
    (slope, intercept), res, *_ = np.linalg.lstsq(A, lh, rcond=None)
    ss_tot = float(np.sum((lh - lh.mean()) ** 2))
    ss_res = float(np.sum((lh - A @ np.array([slope, intercept])) ** 2))
    r2 = 1.0 - ss_res / ss_tot if ss_tot > 0 else 1.0
    return RateFit(slope=float(slope), intercept=float(intercept),
                   window=(ts[0], ts[-1]), r_squared=r2)


def constant_convergence(records, p):
    """The series (t, h_t * t^(p/(p-1))) whose tail approaches thm_constant."""
    rate = float(p) / (float(p) - 1.0)
    return [(rec.t, float(rec.h) * rec.t ** rate) for rec in records if rec.t >= 1]


def contraction_series(records, p):
    """(t, (1 - s_t) / r_t^kappa) from consecutive rows; tends to a_p = 2 C_p^2.

    Requires record_every=1 so that the stored contraction s on row t+1
    refers to row t.
    """
    kappa = 2.0 * (float(p) - 1.0) / float(p)
    out = []
    for cur, nxt in zip(records, records[1:]):
        if nxt.t != cur.t + 1:
            raise ValueError("contraction_series needs consecutive rows (record_every=1)")
        r = float(residual(cur.x))
        s = float(nxt.s)
        if r > 0 and math.isfinite(s):
            out.append((cur.t, (1.0 - s) / r ** kappa))
    return out


def tracking_series(records, p, tol=1e-12, u_max=1.0):
    """(t, |y_t - y*(u_t)| / u_t^kappa) along a recorded trajectory.

    The tracking estimate bounds this ratio uniformly in t.  u_max is
    relaxed to 1.0 here because slow starts launch from u0 up to 0.75,
    where the bisection bracket is still verified to hold.
    """
    kappa = 2.0 * (float(p) - 1.0) / float(p)
    out = []
    for rec in records:
        u, w, y = float(rec.u), float(rec.w), float(rec.y)
        if u > 0 and w != 0 and math.isfinite(y):
            y_star = fixed_point_y(u, p, tol=tol, u_max=u_max).y_star
            out.append((rec.t, abs(y - y_star) / u ** kappa))
    return out


def random_feasible_points(p, n, seed, margin=INTERIOR_MARGIN):
    """n points sampled uniformly from the square and kept if strictly inside B_p.

    The seed is mandatory: every randomized experiment must be replayable.
    """
    ball = BallSpec.from_p(p)
    rng = np.random.default_rng(seed)
    points = []
    while len(points) < n:
        x1, x2 = rng.uniform(-1.0, 1.0, size=2)
        if is_strictly_feasible((x1, x2), ball, margin=margin):
            points.append((float(x1), float(x2)))
    return points


def _heatmap_row(args):
    p, x1, x2_values, target, cap = args
    problem = ProblemSpec(p=p, d=2)
    obj = Quadratic()
    ball = problem.ball()
    row = []
    for x2 in x2_values:
        if is_strictly_feasible((x1, x2), ball, margin=INTERIOR_MARGIN):
            iters = iterations_to_target(problem, obj, (x1, x2), target, cap)
            row.append(HeatmapCell(x1=x1, x2=x2, iters=iters))
    return row


def heatmap(p, grid_n, target, cap=10**6, jobs=1):
    """Iteration counts to reach the target gap from a grid over [-1, 1]^2.

    Only grid points strictly inside the ball are kept; cells that hit
    the cap get iters=None.  Rows are independent and can run on a
    process pool; output order is by grid index either way.
    """
    if grid_n < 16:
        raise ValueError(f"grid_n must be >= 16, got {grid_n}")
    if target <= 0:
        raise ValueError(f"target must be > 0, got {target}")
    if cap < 1:
        raise ValueError(f"cap must be >= 1, got {cap}")
    xs = np.linspace(-1.0, 1.0, grid_n)
    payloads = [(float(p), float(x1), [float(v) for v in xs], float(target), int(cap))
                for x1 in xs]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_heatmap_row, payloads, chunksize=4))
    else:
        rows = [_heatmap_row(payload) for payload in payloads]
    return [cell for row in rows for cell in row]


def write_heatmap_csv(cells, path):
    """Write long-format rows `x1,x2,iters`; a cap sentinel is written as -1."""
    with open(path, "w", newline="") as fh:
        fh.write("x1,x2,iters\n")
        for cell in cells:
            iters = -1 if cell.iters is None else cell.iters
            fh.write(f"{cell.x1:.17g},{cell.x2:.17g},{iters}\n")


def heb_experiment(p, theta, mu, u0, T, record_every=1,
                   precision: Precision = DOUBLE) -> HebResult:
    """Run FW on the HEB power objective from the slow start.

    Returns the gap series together with the lower-bound exponent
    -p / (2 theta (p-1)) and, for reference, the known upper-bound
    exponent -p / (p - 2 theta).
    """
    if p < 3:
        raise ValueError(f"heb_experiment needs p >= 3, got {p}")
    obj = HEBPower(mu=mu, theta=theta)
    x0 = slow_start(u0, p, precision=precision)
    cfg = SolverConfig(rule=RULE_EXACT, max_iters=T, gap_tol=0.0,
                       record_every=record_every, precision=precision)
    records = run(ProblemSpec(p=p, d=2), obj, x0, cfg)
    gaps = [(rec.t, float(rec.h)) for rec in records]
    return HebResult(
        records=records,
        gaps=gaps,
        lower_exponent=-p / (2.0 * theta * (p - 1.0)),
        upper_exponent=-p / (p - 2.0 * theta),
    )


def coincidence_check(p, theta, mu, x0, T, golden_section=False,
                      precision: Precision = DOUBLE):
    """Max coordinate deviation between the quadratic and HEB trajectories.

    Exactly 0.0 under the shared closed-form step size.  With
    golden_section=True the HEB run uses an independent numeric line
    search instead, which bounds the deviation only numerically.
    """
    problem = ProblemSpec(p=p, d=len(x0))
    cfg = SolverConfig(rule=RULE_EXACT, max_iters=T, gap_tol=0.0,
                       record_every=1, precision=precision)
    quad = run(problem, Quadratic(), x0, cfg)
    cfg_heb = SolverConfig(rule=RULE_EXACT, max_iters=T, gap_tol=0.0,
                           record_every=1, precision=precision,
                           golden_section=golden_section)
    heb = run(problem, HEBPower(mu=mu, theta=theta), x0, cfg_heb)
    dev = 0.0
    for a, b in zip(quad, heb):
        for ca, cb in zip(a.x, b.x):
            dev = max(dev, abs(float(ca) - float(cb)))
    return dev


def confinement_check(d, x0, T, precision: Precision = DOUBLE):
    """Max |x_i| over coordinates i >= 3 along a run started in span{e1, e2}.

    The LMO maps zero gradient coordinates to exact zeros, so the result
    is exactly 0.0 when x0 has exact zeros there.
    """
    if d < 3:
        raise ValueError(f"confinement_check needs d >= 3, got {d}")
    if len(x0) != d:
        raise ValueError(f"x0 has {len(x0)} coordinates, expected {d}")
    problem = ProblemSpec(p=3.0, d=d)
    cfg = SolverConfig(rule=RULE_EXACT, max_iters=T, gap_tol=0.0,
                       record_every=1, precision=precision)
    records = run(problem, Quadratic(), x0, cfg)
    dev = 0.0
    for rec in records:
        for c in rec.x[2:]:
            dev = max(dev, abs(float(c)))
    return dev


def heb_expected_constant(p, theta, mu):
    """Asymptotic prefactor of the HEB gap lower bound.

    mu^(-1/theta) ((p+1)/p)^(1/theta) (p/(4(p-1)))^(p/(2 theta (p-1))),
    reducing to the quadratic's constant at theta = 1/2, mu = 1.
    """
    p, theta, mu = float(p), float(theta), float(mu)
    return (
        mu ** (-1.0 / theta)
        * ((p + 1.0) / p) ** (1.0 / theta)
        * (p / (4.0 * (p - 1.0))) ** (p / (2.0 * theta * (p - 1.0)))
    )


def rate_report(p, theta, mu, u0, T, records, window_fraction=0.1) -> dict:
    """JSON-ready summary of one slow-start run: measured vs expected slope
    and the constant tail h_T * T^rate vs its closed-form limit."""
    fit = fit_rate(records, window_fraction=window_fraction)
    rate = p / (2.0 * theta * (p - 1.0))
    final = records[-1]
    report = {
        "p": float(p),
        "theta": float(theta),
        "mu": float(mu),
        "u0": float(u0),
        "T": int(final.t),
        "slope": fit.slope,
        "expected_slope": -rate,
        "upper_bound_slope": -p / (p - 2.0 * theta),
        "constant_tail": float(final.h) * final.t ** rate,
        "expected_constant": heb_expected_constant(p, theta, mu),
        "window": [int(fit.window[0]), int(fit.window[1])],
        "r_squared": fit.r_squared,
        "intercept": fit.intercept,
    }
    if p >= 3:
        report["theorem_constant"] = float(slow_constants(p).thm_constant)
    return report
