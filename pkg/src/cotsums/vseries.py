"""The two conditionally convergent series behind the reciprocity formulas.

v1 is the doubly periodic cosine-weighted sawtooth series

    V1(h/k, l/k) = 2 sum_{m>=1} cos(2 pi m l / k) ((m h / k)) / m,

evaluated two ways: a slow truncated reference (summed in blocks of one
period, with a rigorous tail bound) and a fast closed form obtained by
digamma resummation of the zero-mean periodic coefficients,

    V1 = -(2/k) sum_{r=1}^{k-1} cos(2 pi r l / k) ((r h / k)) psi(r/k).

v2 is the two-sided shifted series

    V2(a, beta) = sum_{m in Z, |m + beta| >= 1} ((a |m + beta|)) / |m + beta|

summed by pairing m with -m. Its paired coefficient sequence has period
den(a) with zero period sum, which gives an Abel-type tail bound.

Reciprocity sweeps evaluate v1 for many l at one (h, k) and v2 at a few
hundred thousand distinct (a, beta); the module caches per-(h, k) weight
tables for the former and runs the latter through a vectorized float64
kernel whose rounding noise sits far below the truncation tail.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import gmpy2
import numpy as np
from gmpy2 import mpfr

from ._tables import _working, cos2pi_table, harm_table, psi_table, saw_table
from .specialfn import DEFAULT_CONTEXT, PrecisionContext
from .sums import SumValue

__all__ = [
    "V1Args",
    "V2Args",
    "beta_of",
    "v1_closed",
    "v1_truncated",
    "v2_auto_blocks",
    "v2_eval",
]

# int64 headroom for the vectorized kernels
_NP_LIMIT = 2**62


def _ctx(ctx: PrecisionContext | None) -> PrecisionContext:
    return DEFAULT_CONTEXT if ctx is None else ctx


def _rounding_err(ctx: PrecisionContext, value) -> mpfr:
    with gmpy2.context(precision=64):
        return ctx.tolerance() * (1 + abs(value))


@dataclass(frozen=True)
class V1Args:
    """Arguments of V1(h/k, ell/k); ell is interpreted modulo k."""

    h: int
    k: int
    ell: int

    def __post_init__(self) -> None:
        if self.k < 2:
            raise ValueError(f"need k >= 2, got {self.k}")
        if math.gcd(self.h, self.k) != 1:
            raise ValueError(f"need gcd(h, k) = 1, got ({self.h}, {self.k})")


@dataclass(frozen=True)
class V2Args:
    """Arguments of V2(a, beta): a in (0, 1], beta = p/q >= 0.

    beta is stored as given; values >= 1 are legal, the |m + beta| >= 1
    membership test absorbs them.
    """

    a: Fraction
    beta: Fraction

    def __post_init__(self) -> None:
        if not isinstance(self.a, Fraction):
            object.__setattr__(self, "a", Fraction(self.a))
        if not isinstance(self.beta, Fraction):
            object.__setattr__(self, "beta", Fraction(self.beta))
        if not 0 < self.a <= 1:
            raise ValueError(f"need 0 < a <= 1, got {self.a}")
        if self.beta < 0:
            raise ValueError(f"need beta >= 0, got {self.beta}")


@lru_cache(maxsize=64)
def _weight_table(h: int, k: int, bits: int) -> tuple:
    """w_r = ((r h / k)) psi(r/k) for r = 1..k-1 (index 0 unused).

    Splitting this off v1_closed lets a sweep amortize the sawtooth and
    digamma work over every ell at the same (h, k).  Entries that vanish
    (even k, r h = k/2 mod k) stay exact zeros so callers can skip them.
    """
    sawt = saw_table(k, bits)
    psit = psi_table(k, bits)
    out = [None] * k
    with _working(bits):
        t = 0
        for r in range(1, k):
            t += h
            if t >= k:
                t -= k
            out[r] = sawt[t] * psit[r]
    return tuple(out)


def v1_closed(args: V1Args, ctx: PrecisionContext | None = None) -> SumValue:
    """Digamma resummation of V1: finite O(k) formula.

    For 1-periodic zero-mean coefficients c_r one has
    sum_{m>=1} c_m/m = -(1/k) sum_{r=1}^{k} c_r psi(r/k); here
    c_r = 2 cos(2 pi r ell/k) ((r h/k)) and the r = k term vanishes.
    The cos table is even-mirrored and the weight table odd in h, so
    ell -> -ell symmetry and h -> -h antisymmetry hold bit-for-bit.
    """
    ctx = _ctx(ctx)
    h, k, ell = args.h % args.k, args.k, args.ell % args.k
    cost = cos2pi_table(k, ctx.bits)
    wt = _weight_table(h, k, ctx.bits)
    with ctx.working():
        acc = mpfr(0)
        tl = 0
        for r in range(1, k):
            tl += ell
            if tl >= k:
                tl -= k
            w = wt[r]
            if w:
                acc += cost[tl] * w
        val = -2 * acc / k
    val = ctx.round(val)
    return SumValue(val, "closed_form", _rounding_err(ctx, val))


def v1_truncated(args: V1Args, blocks: int, ctx: PrecisionContext | None = None) -> SumValue:
    """Partial sum of the V1 series over m = 1..blocks*k.

    The sum is reorganized into per-residue harmonic tables (identical
    finite sum, fewer trig evaluations).  err_estimate is rigorous: the
    truncation point is a multiple of k, so the tail's partial coefficient
    sums retrace the single-period prefixes, and summation by parts bounds
    the tail by S*/(blocks*k + 1) with S* = max |prefix sum|.
    """
    ctx = _ctx(ctx)
    if blocks < 1:
        raise ValueError(f"need blocks >= 1, got {blocks}")
    h, k, ell = args.h % args.k, args.k, args.ell % args.k
    sawt = saw_table(k, ctx.bits)
    cost = cos2pi_table(k, ctx.bits)
    harm = harm_table(k, blocks, ctx.bits)
    with ctx.working():
        acc = mpfr(0)
        prefix = mpfr(0)
        smax = mpfr(0)
        th = 0
        tl = 0
        for r in range(1, k):
            th += h
            if th >= k:
                th -= k
            tl += ell
            if tl >= k:
                tl -= k
            s = sawt[th]
            if not s:
                continue
            c = 2 * cost[tl] * s
            acc += c * harm[r]
            prefix += c
            if abs(prefix) > smax:
                smax = abs(prefix)
        tail = smax / (blocks * k + 1)
    val = ctx.round(acc)
    with gmpy2.context(precision=64):
        err = mpfr(tail) + _rounding_err(ctx, val)
    return SumValue(val, "truncated", err)


def beta_of(h: int, k: int, ell: int) -> tuple[Fraction, int, int]:
    """The V2 shift {k/h}^(-1) {ell/h} as (beta, k1, lprime).

    k1 = k mod h (nonzero by coprimality), lprime = ell mod h, and
    beta = lprime/k1 reduced; beta = 0 exactly when h divides ell (in
    particular when k | ell).
    """
    if h < 2:
        raise ValueError(f"need h >= 2, got {h}")
    if math.gcd(h, k) != 1:
        raise ValueError(f"need gcd(h, k) = 1, got ({h}, {k})")
    k1 = k % h
    lprime = ell % h
    return Fraction(lprime, k1), k1, lprime


@lru_cache(maxsize=32768)
def _gamma_prefix_data(a: Fraction, beta: Fraction) -> Fraction:
    """S* = max |prefix sum| of the paired V2 coefficients over one period.

    gamma(m) = ((a(m+beta))) + ((a(m-beta))) has period D = den(a); its
    period sum is ((u beta)) + ((-u beta)) = 0 by the sawtooth distribution
    property, which this function asserts.  S* drives both the truncation
    tail bound and the block-count choice.  Prefix sums are exact: entry
    numerators over the common denominator 2*D*q are the integers
    D*q - 2*(u*(j*q +- p) mod D*q), or 0 at sawtooth zeros.
    """
    u, D = a.numerator, a.denominator
    p, q = beta.numerator, beta.denominator
    Dq = D * q
    if u * (D * q + p) < _NP_LIMIT and 2 * D * Dq < _NP_LIMIT:
        j = np.arange(1, D + 1, dtype=np.int64)
        n1 = (u * (j * q + p)) % Dq
        n2 = (u * (j * q - p)) % Dq
        g = np.where(n1 != 0, Dq - 2 * n1, 0) + np.where(n2 != 0, Dq - 2 * n2, 0)
        prefixes = np.cumsum(g)
        smax = int(np.abs(prefixes).max())
        last = int(prefixes[-1])
    else:
        prefix = 0
        smax = 0
        for j in range(1, D + 1):
            n1 = (u * (j * q + p)) % Dq
            if n1:
                prefix += Dq - 2 * n1
            n2 = (u * (j * q - p)) % Dq
            if n2:
                prefix += Dq - 2 * n2
            if abs(prefix) > smax:
                smax = abs(prefix)
        last = prefix
    if last != 0:
        raise AssertionError(f"period sum of V2 coefficients must vanish, got {last}/{2 * Dq}")
    return Fraction(smax, 2 * Dq)


def _v2_series_np(u: int, D: int, p: int, q: int, N: int) -> float:
    Dq = D * q
    m = np.arange(1, N + 1, dtype=np.int64)
    plus = m * q + p
    n1 = (u * plus) % Dq
    tp = np.where(n1 != 0, Dq - 2 * n1, 0) / (2.0 * D * plus)
    minus = np.abs(m * q - p)
    n2 = (u * minus) % Dq
    keep = (minus >= q) & (n2 != 0)
    tm = np.where(keep, Dq - 2 * n2, 0) / np.where(keep, 2.0 * D * minus, 1.0)
    return float(tp.sum() + tm.sum())


def _v2_series_py(u: int, D: int, p: int, q: int, N: int) -> float:
    Dq = D * q
    total = 0.0
    for m in range(1, N + 1):
        mqp = m * q + p
        n1 = (u * mqp) % Dq
        if n1:
            total += (Dq - 2 * n1) / (2 * D * mqp)
        t = abs(m * q - p)
        if t >= q:
            n2 = (u * t) % Dq
            if n2:
                total += (Dq - 2 * n2) / (2 * D * t)
    return total


@lru_cache(maxsize=32768)
def v2_eval(args: V2Args, blocks: int, ctx: PrecisionContext | None = None) -> SumValue:
    """Paired truncation of V2 after blocks periods (N = blocks * den(a)).

    Every term is a ratio of exact ints: with a = u/D and beta = p/q, the
    m-side term is (Dq - 2 n1)/(2 D (mq + p)) with n1 = u(mq + p) mod Dq,
    the (-m)-side term is (Dq - 2 n2)/(2 D t) with t = |mq - p|, included
    iff t >= q (that is |m - beta| >= 1), and the m = 0 term ((a beta))/beta
    enters iff beta >= 1.  The series is accumulated in float64 (vectorized
    when every product fits int64); its rounding noise is orders of
    magnitude below the truncation tail and is budgeted in err_estimate.

    err_estimate is rigorous: the Abel bound S*/(N+1) for the zero-mean
    periodic part, exact bounds beta/(2N) + beta/(2(N-beta)) for the
    beta-shifted harmonic corrections (they require N >= 2(beta+1)), and
    a 2^-40 float64 slack.

    Results are cached: reciprocity sweeps revisit the same (a, beta) pair
    for many moduli.
    """
    ctx = _ctx(ctx)
    if blocks < 1:
        raise ValueError(f"need blocks >= 1, got {blocks}")
    a, beta = args.a, args.beta
    u, D = a.numerator, a.denominator
    p, q = beta.numerator, beta.denominator
    N = blocks * D
    if N < 2 * (beta + 1):
        raise ValueError(f"need blocks*den(a) >= 2(beta+1): N = {N}, beta = {beta}")
    Dq = D * q
    smax = _gamma_prefix_data(a, beta)
    if u * (N * q + p) < _NP_LIMIT:
        total = _v2_series_np(u, D, p, q, N)
    else:
        total = _v2_series_py(u, D, p, q, N)
    if beta >= 1:
        n0 = (u * p) % Dq
        if n0:
            total += (Dq - 2 * n0) / (2 * D * p)
    val = ctx.round(mpfr(total))
    with gmpy2.context(precision=64):
        err = mpfr(smax) / (N + 1) + mpfr(2) ** -40
        if beta > 0:
            err += mpfr(beta) / (2 * N) + mpfr(beta) / (2 * (N - beta))
    return SumValue(val, "truncated", err)


@lru_cache(maxsize=32768)
def v2_auto_blocks(a: Fraction, beta: Fraction, target: float = 0.01) -> int:
    """Block count giving err_estimate <= target (roughly), from (a, beta) only.

    Depending only on (a, beta) keeps v2_eval's cache effective across the
    moduli of a sweep.
    """
    a = Fraction(a)
    beta = Fraction(beta)
    smax = _gamma_prefix_data(a, beta)
    need = (float(smax) + 1.5 * float(beta) + 0.5) / target
    n_min = 2 * (float(beta) + 1) + 2
    return max(1, math.ceil(max(need, n_min) / a.denominator))
