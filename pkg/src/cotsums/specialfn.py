"""Scalar special functions at configurable binary precision.

Exact quantities (the sawtooth) stay in Fraction. Everything else returns
gmpy2.mpfr values: computed at a working precision 32 bits above the
requested one, rounded once at the end.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import gmpy2
from gmpy2 import mpfr

__all__ = [
    "DEFAULT_CONTEXT",
    "PoleError",
    "PrecisionContext",
    "cot_pi",
    "digamma",
    "log_minus",
    "sawtooth",
]

GUARD_BITS = 32


class PoleError(ValueError):
    """Evaluation at a pole of the function."""


@dataclass(frozen=True)
class PrecisionContext:
    """Binary precision of real arithmetic.

    bits is the precision of returned values. Sums accumulate at bits + 32,
    which keeps k-term identities inside the documented 2**(16 - bits)
    budget without compensated-summation bookkeeping.
    """

    bits: int = 128

    def __post_init__(self) -> None:
        if self.bits < 64:
            raise ValueError(f"precision must be at least 64 bits, got {self.bits}")

    def working(self):
        """gmpy2 context manager for internal accumulation."""
        return gmpy2.context(precision=self.bits + GUARD_BITS)

    def final(self):
        return gmpy2.context(precision=self.bits)

    def tolerance(self) -> mpfr:
        """The sum-identity accuracy budget 2**(16 - bits)."""
        with gmpy2.context(precision=64):
            return mpfr(2) ** (16 - self.bits)

    def round(self, x) -> mpfr:
        """Round a working-precision value to the context precision."""
        with self.final():
            return mpfr(x)


DEFAULT_CONTEXT = PrecisionContext()


def _ctx(ctx: PrecisionContext | None) -> PrecisionContext:
    return DEFAULT_CONTEXT if ctx is None else ctx


def sawtooth(x) -> Fraction:
    """((x)): 0 at integers, otherwise 1/2 - {x}. Exact, odd, 1-periodic."""
    x = Fraction(x)
    fp = x - math.floor(x)
    if fp == 0:
        return Fraction(0)
    return Fraction(1, 2) - fp


def digamma(x, ctx: PrecisionContext | None = None) -> mpfr:
    """psi(x) for x > 0.

    Delegates to MPFR's correctly rounded digamma, evaluated at working
    precision; comfortably inside the 2**(8 - bits) accuracy contract.
    """
    ctx = _ctx(ctx)
    with ctx.working():
        xv = mpfr(Fraction(x)) if isinstance(x, (int, Fraction)) else mpfr(x)
        if not xv > 0:
            raise ValueError(f"digamma needs x > 0, got {x}")
        val = gmpy2.digamma(xv)
    return ctx.round(val)


def cot_pi(x, ctx: PrecisionContext | None = None) -> mpfr:
    """cot(pi*x) for non-integer rational x.

    The argument is reduced mod 1 exactly and evaluated on (0, 1/2], with
    oddness extending to (1/2, 1); cot_pi(1 - x) == -cot_pi(x) holds
    bit-for-bit, and cot_pi(1/2) is an exact zero.
    """
    ctx = _ctx(ctx)
    y = Fraction(x)
    y -= math.floor(y)
    if y == 0:
        raise PoleError(f"cot(pi*x) has a pole at integer x = {x}")
    sign = 1
    if 2 * y > 1:
        y, sign = 1 - y, -1
    if 2 * y == 1:
        return mpfr(0)
    with ctx.working():
        theta = gmpy2.const_pi() * y.numerator / y.denominator
        val = gmpy2.cot(theta)
    val = ctx.round(val)
    return val if sign == 1 else -val


def log_minus(x, ctx: PrecisionContext | None = None) -> mpfr:
    """min(log x, 0) for x > 0; exact zero for x >= 1."""
    ctx = _ctx(ctx)
    with ctx.working():
        xv = mpfr(Fraction(x)) if isinstance(x, (int, Fraction)) else mpfr(x)
        if not xv > 0:
            raise ValueError(f"log_minus needs x > 0, got {x}")
        if xv >= 1:
            return mpfr(0)
        val = gmpy2.log(xv)
    return ctx.round(val)
