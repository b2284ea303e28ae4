"""lp-ball geometry: norms, Holder conjugates, feasibility, and the LMO.

The linear minimization oracle over the unit lp ball has the closed form

    v_i = -sign(g_i) |g_i|^(q-1) / ||g||_q^(q-1),      q = p/(p-1),

which attains <g, v> = -||g||_q and satisfies ||v||_p = 1.  sign(0) is
taken as 0 so the oracle preserves the support of g exactly, which is
what confines trajectories started in span{e1, e2} to that plane.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath

from .errors import ZeroGradientError
from .precision import DOUBLE, Precision


@dataclass(frozen=True)
class BallSpec:
    """Unit lp ball with its Holder conjugate, q = p/(p-1)."""

    p: float
    q: float

    @classmethod
    def from_p(cls, p, precision: Precision = DOUBLE) -> "BallSpec":
        if not p > 1:
            raise ValueError(f"lp ball needs p > 1, got {p}")
        if precision.is_double:
            p = float(p)
            return cls(p=p, q=p / (p - 1.0))
        with mpmath.workprec(precision.bits):
            p = mpmath.mpf(p)
            return cls(p=p, q=p / (p - 1))


def lp_norm(x, p, precision: Precision = DOUBLE):
    """(sum |x_i|^p)^(1/p), rescaled by the largest entry first.

    The rescaling keeps the powers in [0, 1] so extreme entries neither
    overflow nor underflow for large p.
    """
    if precision.is_double:
        m = max(abs(float(c)) for c in x)
        if m == 0.0:
            return 0.0
        p = float(p)
        return m * (sum((abs(float(c)) / m) ** p for c in x)) ** (1.0 / p)
    with mpmath.workprec(precision.bits):
        coords = [mpmath.mpf(c) for c in x]
        m = max(abs(c) for c in coords)
        if m == 0:
            return mpmath.mpf(0)
        p = mpmath.mpf(p)
        return m * (sum((abs(c) / m) ** p for c in coords)) ** (1 / p)


def lmo(g, ball: BallSpec, precision: Precision = DOUBLE):
    """argmin over the unit lp ball of <g, .> for a nonzero direction g.

    Returns a tuple with ||v||_p = 1 and <g, v> = -||g||_q.  Coordinates
    where g is exactly zero map to exactly zero (support preservation).
    """
    q = ball.q
    if precision.is_double:
        coords = [float(c) for c in g]
        m = max(abs(c) for c in coords)
        if m == 0.0:
            raise ZeroGradientError("LMO called with zero gradient; iterate is optimal")
        q = float(q)
        # s = (||g||_q / m)^(q-1); the m-rescaling keeps t in (0, 1].
        s = sum((abs(c) / m) ** q for c in coords if c != 0.0) ** (1.0 / float(ball.p))
        return tuple(
            -math.copysign((abs(c) / m) ** (q - 1.0) / s, c) if c != 0.0 else 0.0
            for c in coords
        )
    with mpmath.workprec(precision.bits):
        coords = [mpmath.mpf(c) for c in g]
        m = max(abs(c) for c in coords)
        if m == 0:
            raise ZeroGradientError("LMO called with zero gradient; iterate is optimal")
        q = mpmath.mpf(q)
        s = sum((abs(c) / m) ** q for c in coords if c != 0) ** (1 / mpmath.mpf(ball.p))
        out = []
        for c in coords:
            if c == 0:
                out.append(mpmath.mpf(0))
            else:
                mag = (abs(c) / m) ** (q - 1) / s
                out.append(-mag if c > 0 else mag)
        return tuple(out)


def is_strictly_feasible(x, ball: BallSpec, margin=0.0, precision: Precision = DOUBLE) -> bool:
    """True iff ||x||_p <= 1 - margin."""
    if margin < 0:
        raise ValueError(f"margin must be >= 0, got {margin}")
    return lp_norm(x, ball.p, precision) <= 1 - margin
