"""Recentered one-step dynamics, the scaled map, and the slow curve.

Shifting the optimum to the origin via u = 1 - x1, w = x2 turns one
exact-line-search Frank-Wolfe step on the quadratic over the lp ball
into an explicit map (u, w) -> (u', w').  The transverse coordinate
contracts faster than u and alternates sign, so the natural object is

    y = |w| / u^(1+alpha),      alpha = (p-1)/p,

whose one-step map Phi(u, y) = |w'| / (u')^(1+alpha) expands as
F(y) + u G(y) + O(u^kappa) with kappa = 2 alpha.  F has the unique
positive fixed point C_p = (p/(p+1))^(1/q), and the full map has a
fixed-point curve y*(u) = C_p + D_p u + O(u^kappa).  Initializing on
the first-order profile of that curve is what produces the slow
trajectories with gap ~ const * T^(-p/(p-1)).

Extended-precision note: every mpmath computation here runs inside a
workprec context; mpf arithmetic outside one would silently round to
the ambient 53-bit default.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import mpmath

from .errors import BracketFailureError, DomainError, NumericError, UnsupportedExponentError
from .geometry import lp_norm
from .precision import (
    DOUBLE,
    Precision,
    stable_d1,
    stable_m_minus_u,
    stable_one_minus_v1,
    stable_pow1p,
)

#: Largest u for which the fixed-point solver is attempted by default.
#: An engineering choice: the bracket below is only guaranteed near u = 0,
#: and it verifiably still works up to here for p in [3, 5].
U_MAX_DEFAULT = 0.5

#: Bisection bracket half-width as a fraction of C_p.
BRACKET_RADIUS = 0.2


@dataclass(frozen=True)
class CenteredState:
    """Recentered coordinates u = 1 - x1 > 0, w = x2."""

    u: float
    w: float


@dataclass(frozen=True)
class SlowCurvePoint:
    """A solved point of the fixed-point curve with its residual Phi(u,y)-y."""

    u: float
    y_star: float
    residual: float


@dataclass(frozen=True)
class SlowConstants:
    """Closed-form constants of the slow dynamics at exponent p."""

    p: float
    q: float
    alpha: float
    kappa: float
    C_p: float
    D_p: float
    a_p: float
    rate_exponent: float
    thm_constant: float


def _scalars(precision, *values):
    if precision.is_double:
        return tuple(float(v) for v in values)
    return tuple(mpmath.mpf(v) for v in values)


def slow_constants(p, force: bool = False, precision: Precision = DOUBLE) -> SlowConstants:
    """All closed-form constants at exponent p.

    C_p = (p/(p+1))^(1/q) is the limit of the fixed-point curve,
    D_p = C_p (p-1)(3p+1) / (2p(p+1)^2) its drift slope,
    a_p = 2 C_p^2 the contraction-law constant, and thm_constant the
    asymptotic prefactor ((p+1)/p)^2 (p/(4(p-1)))^(p/(p-1)) of the gap.

    The constants are defined for any p > 1 but carry meaning only for
    p >= 3; smaller p raises unless force=True, which warns instead.
    """
    if p < 3:
        if not force:
            raise UnsupportedExponentError(
                f"slow-curve constants need p >= 3 (got p = {p}); pass force=True to override"
            )
        warnings.warn(
            f"p = {p} lies outside theorem scope (p >= 3); constants are formal",
            stacklevel=2,
        )
    if precision.is_double:
        return _constants_core(float(p))
    with mpmath.workprec(precision.bits):
        return _constants_core(mpmath.mpf(p))


def _constants_core(p):
    q = p / (p - 1)
    alpha = 1 / q
    kappa = 2 * alpha
    C_p = (p / (p + 1)) ** (1 / q)
    D_p = C_p * (p - 1) * (3 * p + 1) / (2 * p * (p + 1) ** 2)
    a_p = 2 * C_p * C_p
    rate = p / (p - 1)
    thm = ((p + 1) / p) ** 2 * (p / (4 * (p - 1))) ** rate
    return SlowConstants(
        p=p, q=q, alpha=alpha, kappa=kappa,
        C_p=C_p, D_p=D_p, a_p=a_p, rate_exponent=rate, thm_constant=thm,
    )


def constants_dict(sc: SlowConstants) -> dict:
    """JSON-friendly view of SlowConstants."""
    return {k: float(getattr(sc, k)) for k in
            ("p", "q", "alpha", "kappa", "C_p", "D_p", "a_p", "rate_exponent", "thm_constant")}


def one_step_uw(state: CenteredState, p, precision: Precision = DOUBLE) -> CenteredState:
    """One exact-line-search step in the recentered coordinates.

    Uses the stable forms for d1, 1 - v1, and M - u, and the product
    identities u' = |d2| P / (d1^2 + d2^2), |w'| = |d1| P / (d1^2 + d2^2)
    with P = |w|(1 - v1) + u|v2|, which are free of cancellation and make
    the sign alternation of w exact.  Falls back to the direct convex
    update when the unclamped step leaves (0, 1) or w = 0.
    """
    if precision.is_double:
        u, w, p = _scalars(precision, state.u, state.w, p)
        return _one_step_core(u, w, p, precision)
    with mpmath.workprec(precision.bits):
        u, w, p = _scalars(precision, state.u, state.w, p)
        return _one_step_core(u, w, p, precision)


def _one_step_core(u, w, p, precision):
    zero = u - u
    one = zero + 1
    if u <= 0:
        raise DomainError(f"one_step_uw needs u > 0, got u = {u}")
    q = p / (p - one)
    aw = abs(w)
    rho_q = (aw / u) ** q if w != 0 else zero
    z = rho_q / u
    one_m_v1 = stable_one_minus_v1(z, u, p, precision)
    d1 = stable_d1(u, z, p, precision)
    h = u * u + w * w
    m_minus_u = stable_m_minus_u(u, z, p, precision)
    if w == 0:
        # On-axis dynamics: v = e1 and the step jumps straight at the optimum.
        den = d1 * d1
        gamma = (m_minus_u + h) / den
        gamma = min(one, max(zero, gamma))
        return CenteredState(u - gamma * d1, zero)
    A = stable_pow1p(z, u, one / p, precision)
    av2 = (aw / u) ** (q - one) / A
    ad2 = av2 + aw
    den = d1 * d1 + ad2 * ad2
    gamma = (m_minus_u + h) / den
    sign_w = one if w > 0 else -one
    if zero < gamma < one:
        P = aw * one_m_v1 + u * av2
        return CenteredState(ad2 * P / den, -sign_w * d1 * P / den)
    gamma = min(one, max(zero, gamma))
    d2 = -sign_w * ad2
    return CenteredState(u - gamma * d1, w + gamma * d2)


def phi(u, y, p, precision: Precision = DOUBLE):
    """One-step map of the scaled variable: y' = |w'| / (u')^(1+alpha).

    Reconstructs w = y u^(1+alpha), takes one step, rescales.  Requires
    u > 0, y > 0, and the reconstructed point to be feasible.
    """
    if precision.is_double:
        return _phi_core(*_scalars(precision, u, y, p), precision)
    with mpmath.workprec(precision.bits):
        return _phi_core(*_scalars(precision, u, y, p), precision)


def _phi_core(u, y, p, precision):
    if u <= 0:
        raise DomainError(f"phi needs u > 0, got {u}")
    if y <= 0:
        raise DomainError(f"phi needs y > 0, got {y}")
    alpha = (p - 1) / p
    w = y * u ** (1 + alpha)
    if lp_norm((1 - u, w), p, precision) > 1 + 1e-12:
        raise DomainError(f"reconstructed state (u={u}, y={y}) lies outside the ball")
    nxt = _one_step_core(u, w, p, precision)
    if nxt.u <= 0:
        raise DomainError(f"degenerate step from (u={u}, y={y}): u' = {nxt.u}")
    return abs(nxt.w) / nxt.u ** (1 + alpha)


def F(y, p, precision: Precision = DOUBLE):
    """Leading term of the scaled map: F(y) = y^-(q-1) - y/p."""
    if precision.is_double:
        y, p = _scalars(precision, y, p)
        return _F_core(y, p)
    with mpmath.workprec(precision.bits):
        y, p = _scalars(precision, y, p)
        return _F_core(y, p)


def _F_core(y, p):
    if y <= 0:
        raise DomainError(f"F needs y > 0, got {y}")
    q = p / (p - 1)
    return y ** (-(q - 1)) - y / p


def G(y, p, precision: Precision = DOUBLE):
    """First-order coefficient: G(y) = y/p + (p-1)/(2 p^2) y^(q+1)."""
    if precision.is_double:
        y, p = _scalars(precision, y, p)
        return _G_core(y, p)
    with mpmath.workprec(precision.bits):
        y, p = _scalars(precision, y, p)
        return _G_core(y, p)


def _G_core(y, p):
    if y <= 0:
        raise DomainError(f"G needs y > 0, got {y}")
    q = p / (p - 1)
    return y / p + (p - 1) / (2 * p * p) * y ** (q + 1)


def fixed_point_y(u, p, tol=1e-12, u_max=U_MAX_DEFAULT,
                  precision: Precision = DOUBLE) -> SlowCurvePoint:
    """Solve Phi(u, y) = y by bisection on the bracket [0.8 C_p, 1.2 C_p].

    H(u, y) = Phi(u, y) - y is strictly decreasing in y near C_p for small
    u, so plain bisection is unconditionally safe there; the bracket must
    show a sign change or BracketFailureError reports H at both ends.
    Stops once |H| <= tol.
    """
    if not u > 0:
        raise DomainError(f"fixed_point_y needs u > 0, got {u}")
    if not tol > 0:
        raise ValueError(f"tol must be > 0, got {tol}")
    if u > u_max:
        raise BracketFailureError(
            f"u = {u} exceeds u_max = {u_max}; the bisection bracket is only "
            f"validated up to u_max (override with the u_max argument at your own risk)"
        )
    if precision.is_double:
        u, p, tol_s = _scalars(precision, u, p, tol)
        return _fixed_point_core(u, p, tol_s, precision, max_iter=200)
    with mpmath.workprec(precision.bits):
        u, p, tol_s = _scalars(precision, u, p, tol)
        return _fixed_point_core(u, p, tol_s, precision, max_iter=precision.bits + 200)


def _fixed_point_core(u, p, tol, precision, max_iter):
    C = (p / (p + 1)) ** ((p - 1) / p)
    lo = (1 - BRACKET_RADIUS) * C
    hi = (1 + BRACKET_RADIUS) * C
    H_lo = _phi_core(u, lo, p, precision) - lo
    H_hi = _phi_core(u, hi, p, precision) - hi
    if not (H_lo > 0 > H_hi):
        raise BracketFailureError(
            f"no sign change on [{lo}, {hi}] at u = {u}: H(lo) = {H_lo}, H(hi) = {H_hi}"
        )
    H_mid = H_lo
    for _ in range(max_iter):
        mid = (lo + hi) / 2
        H_mid = _phi_core(u, mid, p, precision) - mid
        if abs(H_mid) <= tol:
            return SlowCurvePoint(u=u, y_star=mid, residual=H_mid)
        if H_mid > 0:
            lo = mid
        else:
            hi = mid
    raise NumericError(
        f"bisection exhausted without reaching |residual| <= {tol} at u = {u} "
        f"(last residual {H_mid})"
    )


def slow_curve(u_values, p, tol=1e-12, u_max=U_MAX_DEFAULT, precision: Precision = DOUBLE):
    """Solve the fixed-point curve on a grid of u values."""
    return [fixed_point_y(float(u), p, tol=tol, u_max=u_max, precision=precision)
            for u in u_values]


def slow_start(u0, p, force: bool = False, precision: Precision = DOUBLE):
    """Slow-start initialization pinned to the first-order fixed-point profile.

    x0 = (1 - u0) e1 + y0 u0^(1+alpha) e2 with y0 = C_p + D_p u0.
    Strict feasibility is guaranteed for small u0 and holds numerically
    at the values used here; the caller checks it where it matters.
    """
    if not 0 < u0 < 1:
        raise ValueError(f"slow_start needs 0 < u0 < 1, got {u0}")
    sc = slow_constants(p, force=force, precision=precision)
    if precision.is_double:
        u0 = float(u0)
        return (1.0 - u0, (sc.C_p + sc.D_p * u0) * u0 ** (1.0 + sc.alpha))
    with mpmath.workprec(precision.bits):
        u0 = mpmath.mpf(u0)
        return (1 - u0, (sc.C_p + sc.D_p * u0) * u0 ** (1 + sc.alpha))


def phi_dy(u, y, p, step=None, precision: Precision = DOUBLE):
    """Central-difference estimate of dPhi/dy at (u, y).

    Default step is max(1e-6, u^kappa * 1e-2) in double mode (the
    derivative structure varies on the u^kappa scale) and 1e-20 in
    extended mode.
    """
    if precision.is_double:
        u, y, p = _scalars(precision, u, y, p)
        if step is None:
            kappa = 2.0 * (p - 1.0) / p
            step = max(1e-6, u ** kappa * 1e-2)
        else:
            step = float(step)
        return _phi_dy_core(u, y, p, step, precision)
    with mpmath.workprec(precision.bits):
        u, y, p = _scalars(precision, u, y, p)
        step = mpmath.mpf("1e-20") if step is None else mpmath.mpf(step)
        return _phi_dy_core(u, y, p, step, precision)


def _phi_dy_core(u, y, p, step, precision):
    if y - step <= 0:
        raise DomainError(f"difference step {step} leaves the domain at y = {y}")
    return (_phi_core(u, y + step, p, precision)
            - _phi_core(u, y - step, p, precision)) / (2 * step)


def write_slow_curve_csv(points, path, precision: Precision = DOUBLE):
    """Write solved curve points as `u,y_star,residual`."""
    from .solver import _fmt

    with open(path, "w", newline="") as fh:
        fh.write("u,y_star,residual\n")
        for pt in points:
            fh.write(",".join(_fmt(v, precision) for v in (pt.u, pt.y_star, pt.residual)) + "\n")
