"""Scalar precision modes and cancellation-safe evaluation helpers.

Every run works in one arithmetic mode: standard 64-bit floats (the
default) or extended precision backed by mpmath with a configurable
significand.  The helpers below evaluate the expressions that suffer
catastrophic cancellation near the optimum, (1+z*u)^e - 1 and friends,
through log1p/expm1 so their relative accuracy survives u -> 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath

from .errors import DomainError

MIN_EXTENDED_BITS = 128


@dataclass(frozen=True)
class Precision:
    """Arithmetic mode for one run: bits=None means float64."""

    bits: int | None = None

    def __post_init__(self):
        if self.bits is not None and self.bits < MIN_EXTENDED_BITS:
            raise ValueError(
                f"extended precision needs >= {MIN_EXTENDED_BITS} significand bits, got {self.bits}"
            )

    @property
    def is_double(self) -> bool:
        return self.bits is None

    @classmethod
    def double(cls) -> "Precision":
        return cls()

    @classmethod
    def extended(cls, bits: int = 256) -> "Precision":
        return cls(bits=bits)

    @classmethod
    def parse(cls, text: str) -> "Precision":
        """Parse 'double', 'extended', or 'extended:<bits>'."""
        if text == "double":
            return cls.double()
        if text == "extended":
            return cls.extended()
        if text.startswith("extended:"):
            return cls.extended(bits=int(text.split(":", 1)[1]))
        raise ValueError(f"unknown precision spec {text!r}")

    def label(self) -> str:
        return "double" if self.is_double else f"extended:{self.bits}"


DOUBLE = Precision.double()


def as_scalar(x, precision: Precision = DOUBLE):
    """Convert x to the scalar type of the given precision mode."""
    if precision.is_double:
        return float(x)
    with mpmath.workprec(precision.bits):
        return mpmath.mpf(x)


def stable_pow1p(z, u, e, precision: Precision = DOUBLE):
    """(1 + z*u)**e evaluated through log1p/expm1.

    Keeps full relative accuracy as u -> 0, where naive powering rounds
    the base to 1 and loses the entire correction.  Requires 1 + z*u > 0.
    """
    if precision.is_double:
        zu = float(z) * float(u)
        if 1.0 + zu <= 0.0:
            raise DomainError(f"stable_pow1p needs 1 + z*u > 0, got z*u = {zu}")
        return 1.0 + math.expm1(float(e) * math.log1p(zu))
    with mpmath.workprec(precision.bits):
        zu = mpmath.mpf(z) * mpmath.mpf(u)
        if 1 + zu <= 0:
            raise DomainError(f"stable_pow1p needs 1 + z*u > 0, got z*u = {zu}")
        return 1 + mpmath.expm1(mpmath.mpf(e) * mpmath.log1p(zu))


def stable_d1(u, z, p, precision: Precision = DOUBLE):
    """u + (1 + z*u)**(-1/p) - 1 without the cancellation at small u.

    This is the first coordinate of the Frank-Wolfe direction in the
    recentered variables; both terms after u are ~1 and their difference
    is O(u), so the naive form loses all leading digits.  Written as
    u + expm1(-log1p(z*u)/p) the result stays accurate down to u ~ 1e-300.
    """
    if precision.is_double:
        u = float(u)
        z = float(z)
        if u <= 0.0:
            raise DomainError(f"stable_d1 needs u > 0, got {u}")
        zu = z * u
        if 1.0 + zu <= 0.0:
            raise DomainError(f"stable_d1 needs 1 + z*u > 0, got z*u = {zu}")
        return u + math.expm1(-math.log1p(zu) / float(p))
    with mpmath.workprec(precision.bits):
        u = mpmath.mpf(u)
        z = mpmath.mpf(z)
        if u <= 0:
            raise DomainError(f"stable_d1 needs u > 0, got {u}")
        zu = z * u
        if 1 + zu <= 0:
            raise DomainError(f"stable_d1 needs 1 + z*u > 0, got z*u = {zu}")
        return u + mpmath.expm1(-mpmath.log1p(zu) / mpmath.mpf(p))


def stable_one_minus_v1(z, u, p, precision: Precision = DOUBLE):
    """1 - (1 + z*u)**(-1/p), the oracle's retreat from the pole, >= 0.

    Appears in the ratio identity through P = |w|(1 - v1) + u|v2|; the
    direct subtraction would be pure cancellation for small u.
    """
    if precision.is_double:
        zu = float(z) * float(u)
        if 1.0 + zu <= 0.0:
            raise DomainError(f"stable_one_minus_v1 needs 1 + z*u > 0, got z*u = {zu}")
        return -math.expm1(-math.log1p(zu) / float(p))
    with mpmath.workprec(precision.bits):
        zu = mpmath.mpf(z) * mpmath.mpf(u)
        if 1 + zu <= 0:
            raise DomainError(f"stable_one_minus_v1 needs 1 + z*u > 0, got z*u = {zu}")
        return -mpmath.expm1(-mpmath.log1p(zu) / mpmath.mpf(p))


def stable_m_minus_u(u, z, p, precision: Precision = DOUBLE):
    """M - u where M = u*(1 + z*u)**(1/q), q the Holder conjugate of p.

    The line-search numerator M - u + h is O(u^2) while M and u are O(u);
    evaluating the difference as u*expm1(log1p(z*u)/q) avoids the loss.
    """
    if precision.is_double:
        u = float(u)
        zu = float(z) * u
        if u <= 0.0:
            raise DomainError(f"stable_m_minus_u needs u > 0, got {u}")
        if 1.0 + zu <= 0.0:
            raise DomainError(f"stable_m_minus_u needs 1 + z*u > 0, got z*u = {zu}")
        q = float(p) / (float(p) - 1.0)
        return u * math.expm1(math.log1p(zu) / q)
    with mpmath.workprec(precision.bits):
        u = mpmath.mpf(u)
        zu = mpmath.mpf(z) * u
        if u <= 0:
            raise DomainError(f"stable_m_minus_u needs u > 0, got {u}")
        if 1 + zu <= 0:
            raise DomainError(f"stable_m_minus_u needs 1 + z*u > 0, got z*u = {zu}")
        q = mpmath.mpf(p) / (mpmath.mpf(p) - 1)
        return u * mpmath.expm1(mpmath.log1p(zu) / q)
