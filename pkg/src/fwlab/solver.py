"""Frank-Wolfe with exact line search or short steps, plus trajectory recording.

One step from x:  v = LMO(grad f(x)),  x' = x + gamma (v - x),  gamma in [0, 1].

On the isotropic quadratic the exact line search has the closed form
gamma = <grad f(x), x - v> / (2 ||x - v||^2), which coincides with the
short step for L = 2.  The HEB power objective shares the quadratic's
LMO directions and line-search minimizers (its gradient is a positive
rescaling and the 1-D restriction a monotone transform), so runs on it
reuse the quadratic's closed form and generate identical iterates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath

from .errors import (
    DegenerateDirectionError,
    InfeasibleStartError,
    NumericError,
    UnsupportedObjectiveError,
)
from .geometry import BallSpec, lmo, lp_norm
from .objectives import Objective, Quadratic, primal_gap
from .precision import DOUBLE, Precision

RULE_EXACT = "exact"
RULE_SHORT = "short"

FEASIBILITY_SLACK = 1e-12

_NAN = float("nan")


@dataclass(frozen=True)
class ProblemSpec:
    """Ball exponent and ambient dimension of one model instance."""

    p: float
    d: int = 2

    def __post_init__(self):
        if not self.p > 1:
            raise ValueError(f"need p > 1, got {self.p}")
        if self.d < 2:
            raise ValueError(f"need d >= 2, got {self.d}")

    def ball(self, precision: Precision = DOUBLE) -> BallSpec:
        return BallSpec.from_p(self.p, precision)


@dataclass(frozen=True)
class SolverConfig:
    rule: str = RULE_EXACT
    max_iters: int = 1000
    gap_tol: float = 0.0
    record_every: int = 1
    precision: Precision = DOUBLE
    # Debug-only: replace the closed-form exact line search by a numeric
    # golden-section search (cross-validation of the shared-gamma rule).
    golden_section: bool = False

    def __post_init__(self):
        if self.rule not in (RULE_EXACT, RULE_SHORT):
            raise ValueError(f"unknown step rule {self.rule!r}")
        if self.max_iters < 1:
            raise ValueError("max_iters must be >= 1")
        if self.gap_tol < 0:
            raise ValueError("gap_tol must be >= 0")
        if self.record_every < 1:
            raise ValueError("record_every must be >= 1")


@dataclass(frozen=True, slots=True)
class TrajectoryRecord:
    """One recorded iteration.

    gamma is the step taken *from* this iterate (nan on the terminal row).
    s is the residual contraction r_t / r_{t-1} that produced this iterate,
    i.e. s_t = r_{t+1}/r_t lands on the following row; nan on row 0.
    u = 1 - x1, w = x2, and y = |w| / u^(1+alpha) when u > 0 (y = 0 exactly
    flags the on-axis regime where the transverse dynamics died).
    """

    t: int
    x: tuple
    gamma: float
    h: float
    u: float
    w: float
    y: float
    s: float


def _quad_gradient(x, one):
    """Gradient representative used for the LMO by both objectives.

    For HEBPower the true gradient is a positive multiple of this, which
    leaves the LMO output unchanged; sharing the representative makes
    quadratic and HEB trajectories coincide bit for bit.
    """
    return tuple(2 * (c - one) if i == 0 else 2 * c for i, c in enumerate(x))


def exact_linesearch_gamma(obj: Objective, x, v, precision: Precision = DOUBLE):
    """Closed-form exact line-search step on the segment [x, v].

    clamp(<grad f(x), x - v> / (2 ||x - v||^2), 0, 1) for the quadratic f;
    the HEB power objective yields the same minimizer, so the same value
    is returned without any numeric 1-D search.
    """
    if precision.is_double:
        return _gamma_core(tuple(float(c) for c in x), tuple(float(c) for c in v), 2.0)
    with mpmath.workprec(precision.bits):
        return _gamma_core(tuple(mpmath.mpf(c) for c in x),
                           tuple(mpmath.mpf(c) for c in v), mpmath.mpf(2))


def short_step_gamma(obj: Objective, x, v, L=2.0, precision: Precision = DOUBLE):
    """Short step min{1, <grad f(x), x - v> / (L ||x - v||^2)} on the quadratic.

    Matches the exact line search exactly for the isotropic quadratic with
    L = 2.  Refused for HEBPower, where short step and exact line search
    no longer agree.
    """
    if not isinstance(obj, Quadratic):
        raise UnsupportedObjectiveError("short step is only defined for the quadratic objective")
    if precision.is_double:
        return _gamma_core(tuple(float(c) for c in x), tuple(float(c) for c in v), float(L))
    with mpmath.workprec(precision.bits):
        return _gamma_core(tuple(mpmath.mpf(c) for c in x),
                           tuple(mpmath.mpf(c) for c in v), mpmath.mpf(L))


def _gamma_core(x, v, L):
    """Shared closed form; exact line search is the L = 2 instance."""
    zero = L - L
    one = zero + 1
    g = _quad_gradient(x, one)
    dx = tuple(a - b for a, b in zip(x, v))
    n2 = sum(c * c for c in dx)
    if n2 == 0:
        raise DegenerateDirectionError("line search over zero-length segment (v == x)")
    gamma = sum(a * b for a, b in zip(g, dx)) / (L * n2)
    if gamma < zero:
        return zero
    if gamma > one:
        return one
    return gamma


def golden_section_gamma(obj: Objective, x, v, tol=1e-13, precision: Precision = DOUBLE):
    """Numeric golden-section minimization of obj along [x, v] over [0, 1].

    Independent of the closed forms above; used only to cross-validate
    them.  In double mode the attainable accuracy is limited to roughly
    sqrt(machine eps) by the flat rounding plateau around the minimizer;
    run it in extended precision when tighter agreement is needed.
    """
    if precision.is_double:
        x = tuple(float(c) for c in x)
        v = tuple(float(c) for c in v)
        return _golden_loop(obj, x, v, tol, precision,
                            invphi=(math.sqrt(5.0) - 1.0) / 2.0, a=0.0, b=1.0)
    with mpmath.workprec(precision.bits):
        x = tuple(mpmath.mpf(c) for c in x)
        v = tuple(mpmath.mpf(c) for c in v)
        return _golden_loop(obj, x, v, tol, precision,
                            invphi=(mpmath.sqrt(5) - 1) / 2,
                            a=mpmath.mpf(0), b=mpmath.mpf(1))


def _golden_loop(obj, x, v, tol, precision, invphi, a, b):
    def val(gamma):
        pt = tuple(xa + gamma * (xb - xa) for xa, xb in zip(x, v))
        return primal_gap(obj, pt, precision)

    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = val(c), val(d)
    while b - a > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = val(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = val(d)
    return (a + b) / 2


def run(problem: ProblemSpec, obj: Objective, x0, cfg: SolverConfig):
    """Run Frank-Wolfe from x0 and return the recorded trajectory.

    Rows are recorded every cfg.record_every iterations plus the terminal
    iterate; the primal gap is checked for monotone descent at every step
    whether recorded or not.  Stops at max_iters, at h <= gap_tol, or at
    the exact minimizer.
    """
    if cfg.rule == RULE_SHORT and not isinstance(obj, Quadratic):
        raise UnsupportedObjectiveError("short step rule requires the quadratic objective")
    if len(x0) != problem.d:
        raise ValueError(f"x0 has {len(x0)} coordinates, problem.d = {problem.d}")
    prec = cfg.precision
    if prec.is_double:
        return _run_loop(problem, obj, x0, cfg, float, math.sqrt)
    with mpmath.workprec(prec.bits):
        return _run_loop(problem, obj, x0, cfg, mpmath.mpf, mpmath.sqrt)


def _run_loop(problem, obj, x0, cfg, num, sqrt):
    prec = cfg.precision
    ball = problem.ball(prec)
    alpha = 1 / ball.q
    one = num(1)
    x = tuple(num(c) for c in x0)
    if lp_norm(x, ball.p, prec) > 1 + FEASIBILITY_SLACK:
        raise InfeasibleStartError(f"||x0||_p = {lp_norm(x, ball.p, prec)} > 1 + {FEASIBILITY_SLACK}")

    records = []

    def state_fields(x):
        u = one - x[0]
        w = x[1]
        h = primal_gap(obj, x, prec)
        y = abs(w) / u ** (1 + alpha) if u > 0 else _NAN
        return h, u, w, y

    h, u, w, y = state_fields(x)
    r_prev = None
    t = 0
    while True:
        r = sqrt(sum((c - one if i == 0 else c) ** 2 for i, c in enumerate(x)))
        s = r / r_prev if (r_prev is not None and r_prev > 0) else _NAN
        if h <= cfg.gap_tol or t >= cfg.max_iters:
            records.append(TrajectoryRecord(t, x, _NAN, h, u, w, y, s))
            break
        g = _quad_gradient(x, one)
        v = lmo(g, ball, prec)
        if cfg.rule == RULE_SHORT:
            gamma = short_step_gamma(obj, x, v, L=2.0, precision=prec)
        elif cfg.golden_section:
            gamma = golden_section_gamma(obj, x, v, precision=prec)
        else:
            gamma = exact_linesearch_gamma(obj, x, v, precision=prec)
        if t % cfg.record_every == 0:
            records.append(TrajectoryRecord(t, x, gamma, h, u, w, y, s))
        x = tuple(a + gamma * (b - a) for a, b in zip(x, v))
        h_new, u, w, y = state_fields(x)
        if h_new > h * (1 + 1e-12):
            raise NumericError(f"primal gap increased at t={t}: {h} -> {h_new}")
        h = h_new
        r_prev = r
        t += 1
    return records


def iterations_to_target(problem: ProblemSpec, obj: Objective, x0, target, cap,
                         precision: Precision = DOUBLE):
    """Number of exact-line-search steps until the primal gap drops to target.

    Returns None when the cap is hit first.  For the quadratic in d = 2
    and double precision a scalar fast path is used; it mirrors the
    generic loop operation for operation.
    """
    if cap < 1:
        raise ValueError("cap must be >= 1")
    if target <= 0:
        raise ValueError("target must be > 0")
    if precision.is_double and problem.d == 2 and isinstance(obj, Quadratic):
        ball = problem.ball(precision)
        if lp_norm(x0, ball.p, precision) > 1 + FEASIBILITY_SLACK:
            raise InfeasibleStartError(f"infeasible start {x0!r}")
        return _count2d_double(float(ball.p), float(ball.q), float(x0[0]), float(x0[1]),
                               float(target), int(cap))
    cfg = SolverConfig(rule=RULE_EXACT, max_iters=cap, gap_tol=target,
                       record_every=max(1, cap), precision=precision)
    records = run(problem, obj, x0, cfg)
    final = records[-1]
    return final.t if final.h <= target else None


def _count2d_double(p, q, x1, x2, target, cap):
    copysign = math.copysign
    inv_p = 1.0 / p
    qm1 = q - 1.0
    for t in range(cap + 1):
        d0 = x1 - 1.0
        h = d0 * d0 + x2 * x2
        if h <= target:
            return t
        if t == cap:
            return None
        g1 = 2.0 * (x1 - 1.0)
        g2 = 2.0 * x2
        m = max(abs(g1), abs(g2))
        # closed-form LMO, same rescaling as geometry.lmo
        t1 = abs(g1) / m
        t2 = abs(g2) / m
        s = (
            ((t1 ** q if g1 != 0.0 else 0.0) + (t2 ** q if g2 != 0.0 else 0.0))
            ** inv_p
        )
        v1 = -copysign(t1 ** qm1 / s, g1) if g1 != 0.0 else 0.0
        v2 = -copysign(t2 ** qm1 / s, g2) if g2 != 0.0 else 0.0
        dx1 = x1 - v1
        dx2 = x2 - v2
        n2 = dx1 * dx1 + dx2 * dx2
        gamma = (g1 * dx1 + g2 * dx2) / (2 * n2)
        if gamma < 0.0:
            gamma = 0.0
        elif gamma > 1.0:
            gamma = 1.0
        x1 = x1 + gamma * (v1 - x1)
        x2 = x2 + gamma * (v2 - x2)
    return None


def _fmt(v, precision: Precision = DOUBLE) -> str:
    if isinstance(v, float):
        return f"{v:.17g}"
    if precision.is_double:
        return f"{float(v):.17g}"
    digits = int(precision.bits * 0.30103) + 3
    return mpmath.nstr(v, digits)


def write_trajectory_csv(records, path, precision: Precision = DOUBLE):
    """Write rows `t,x1,x2,gamma,h,u,w,y,s` at full decimal precision."""
    with open(path, "w", newline="") as fh:
        fh.write("t,x1,x2,gamma,h,u,w,y,s\n")
        for rec in records:
            fields = [str(rec.t)] + [
                _fmt(v, precision)
                for v in (rec.x[0], rec.x[1], rec.gamma, rec.h, rec.u, rec.w, rec.y, rec.s)
            ]
            fh.write(",".join(fields) + "\n")
