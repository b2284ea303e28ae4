"""Model objectives: squared distance to e1 and its HEB power transform.

The quadratic f(x) = ||x - e1||_2^2 is L-smooth and mu-strongly convex
with L = mu = 2 and minimizer e1.  The power transform

    g(x) = mu^(-1/theta) ||x - e1||_2^(1/theta)

satisfies the Holderian error bound ||x - x*|| = mu (g(x) - g(x*))^theta
with equality, and reduces to f exactly at theta = 1/2, mu = 1.  Its
gradient is a positive multiple of the quadratic's, so Frank-Wolfe with
exact line search walks the identical iterate sequence on both.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath

from .precision import DOUBLE, Precision


@dataclass(frozen=True)
class Quadratic:
    """f(x) = ||x - e1||_2^2.  Smoothness constant L = 2 for short steps."""

    L = 2.0
    # HEB parameters realized by the quadratic itself.
    theta = 0.5
    mu = 1.0


@dataclass(frozen=True)
class HEBPower:
    """g(x) = mu^(-1/theta) ||x - e1||_2^(1/theta), theta in (0, 1/2]."""

    mu: float
    theta: float

    def __post_init__(self):
        if not self.mu > 0:
            raise ValueError(f"mu must be > 0, got {self.mu}")
        if not 0 < self.theta <= 0.5:
            raise ValueError(f"theta must lie in (0, 1/2], got {self.theta}")


Objective = Quadratic | HEBPower


def _dist2(x, precision):
    """||x - e1||_2^2 summed in coordinate order (deterministic)."""
    if precision.is_double:
        d0 = float(x[0]) - 1.0
        total = d0 * d0
        for c in x[1:]:
            c = float(c)
            total += c * c
        return total
    with mpmath.workprec(precision.bits):
        d0 = mpmath.mpf(x[0]) - 1
        total = d0 * d0
        for c in x[1:]:
            c = mpmath.mpf(c)
            total += c * c
        return total


def residual(x, precision: Precision = DOUBLE):
    """r = ||x - e1||_2, the distance to the minimizer."""
    f = _dist2(x, precision)
    return math.sqrt(f) if precision.is_double else mpmath.sqrt(f)


def value(obj: Objective, x, precision: Precision = DOUBLE):
    """Objective value at x.

    The HEB value is computed as mu^(-1/theta) f^(1/(2 theta)) from the
    quadratic value f, which makes g == f bit-exact at theta = 1/2, mu = 1.
    """
    f = _dist2(x, precision)
    if isinstance(obj, Quadratic):
        return f
    if precision.is_double:
        theta = float(obj.theta)
        return float(obj.mu) ** (-1.0 / theta) * f ** (1.0 / (2.0 * theta))
    with mpmath.workprec(precision.bits):
        mu = mpmath.mpf(obj.mu)
        theta = mpmath.mpf(obj.theta)
        return mu ** (-1 / theta) * f ** (1 / (2 * theta))


def gradient(obj: Objective, x, precision: Precision = DOUBLE):
    """Gradient at x; defined as the zero vector at the minimizer e1.

    For HEBPower the formula is (1/(2 theta)) mu^(-1/theta) f^(1/(2 theta) - 1)
    times the quadratic gradient, a strictly positive rescaling away from e1.
    """
    one = 1.0 if precision.is_double else mpmath.mpf(1)
    if precision.is_double:
        quad = tuple(2.0 * (float(c) - (1.0 if i == 0 else 0.0)) for i, c in enumerate(x))
    else:
        with mpmath.workprec(precision.bits):
            quad = tuple(2 * (mpmath.mpf(c) - (one if i == 0 else 0)) for i, c in enumerate(x))
    if isinstance(obj, Quadratic):
        return quad
    f = _dist2(x, precision)
    if f == 0:
        return tuple(0 * c for c in quad)
    if precision.is_double:
        theta = float(obj.theta)
        scale = (
            1.0 / (2.0 * theta)
            * float(obj.mu) ** (-1.0 / theta)
            * f ** (1.0 / (2.0 * theta) - 1.0)
        )
        return tuple(scale * c for c in quad)
    with mpmath.workprec(precision.bits):
        theta = mpmath.mpf(obj.theta)
        mu = mpmath.mpf(obj.mu)
        scale = 1 / (2 * theta) * mu ** (-1 / theta) * f ** (1 / (2 * theta) - 1)
        return tuple(scale * c for c in quad)


def primal_gap(obj: Objective, x, precision: Precision = DOUBLE):
    """value(obj, x) - value(obj, e1); both objectives vanish at e1."""
    return value(obj, x, precision)
