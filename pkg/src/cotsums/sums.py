"""Direct O(k) evaluation of the finite cotangent sums.

All evaluators accumulate at working precision (bits + 32) and round once.
For k up to a few thousand they share cached per-(k, bits) tables; the
weighted sum s_f switches to a sin/cos rotation recurrence with periodic
exact resync above that, which is what makes k = 10^6 affordable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import gmpy2
from gmpy2 import mpfr

from ._tables import cos2pi_table, cot_table, sin2pi_table
from .piecewise import PiecewisePoly
from .specialfn import DEFAULT_CONTEXT, PrecisionContext

__all__ = [
    "SumValue",
    "cot_dft",
    "dedekind_cot",
    "dedekind_exact",
    "partial_cot",
    "partial_cot_profile",
    "s_f",
    "vasyunin",
]

_METHODS = ("direct", "closed_form", "truncated")

# above this k, s_f stops building trig tables and uses the rotation loop
_TABLE_LIMIT = 4096

# rotation loop: rebuild sin/cos from the exact angle every RESYNC steps
_RESYNC = 4096


@dataclass(frozen=True)
class SumValue:
    """A computed sum with the producing method's own error claim.

    err_estimate bounds |value - true value|: rigorous for "truncated"
    (tail bounds), rounding-level for "direct" and "closed_form".
    """

    value: mpfr
    method: str
    err_estimate: mpfr

    def __post_init__(self) -> None:
        if self.method not in _METHODS:
            raise ValueError(f"unknown method {self.method!r}")

    def __float__(self) -> float:
        return float(self.value)


def _ctx(ctx: PrecisionContext | None) -> PrecisionContext:
    return DEFAULT_CONTEXT if ctx is None else ctx


def _require_coprime(h: int, k: int) -> None:
    if math.gcd(h, k) != 1:
        raise ValueError(f"need gcd(h, k) = 1, got ({h}, {k})")


def _rounding_err(ctx: PrecisionContext, value) -> mpfr:
    with gmpy2.context(precision=64):
        return ctx.tolerance() * (1 + abs(value))


def dedekind_exact(h: int, k: int) -> Fraction:
    """Dedekind sum s(h, k) = sum ((m/k))((mh/k)), exact.

    Positive cotangent convention: equals +(1/4k) sum cot(pi m/k)cot(pi mh/k).
    """
    if k < 1:
        raise ValueError(f"need k >= 1, got {k}")
    _require_coprime(h, k)
    if k == 1:
        return Fraction(0)
    hm = h % k
    total = 0
    t = 0
    for m in range(1, k):
        t += hm
        if t >= k:
            t -= k
        total += (k - 2 * m) * (k - 2 * t)
    return Fraction(total, 4 * k * k)


def dedekind_cot(h: int, k: int, ctx: PrecisionContext | None = None) -> SumValue:
    """(1/4k) sum_{m=1}^{k-1} cot(pi m/k) cot(pi m h/k)."""
    ctx = _ctx(ctx)
    if k < 2:
        raise ValueError(f"need k >= 2, got {k}")
    _require_coprime(h, k)
    tab = cot_table(k, ctx.bits)
    hm = h % k
    with ctx.working():
        acc = mpfr(0)
        t = 0
        for m in range(1, k):
            t += hm
            if t >= k:
                t -= k
            acc += tab[m] * tab[t]
        val = acc / (4 * k)
    val = ctx.round(val)
    return SumValue(val, "direct", _rounding_err(ctx, val))


def vasyunin(h: int, k: int, ctx: PrecisionContext | None = None) -> SumValue:
    """V(h/k) = sum_{m=1}^{k-1} (m/k) cot(pi m hbar/k), hbar the inverse of h."""
    ctx = _ctx(ctx)
    if k < 2:
        raise ValueError(f"need k >= 2, got {k}")
    _require_coprime(h, k)
    hbar = pow(h, -1, k)
    tab = cot_table(k, ctx.bits)
    with ctx.working():
        acc = mpfr(0)
        t = 0
        for m in range(1, k):
            t += hbar
            if t >= k:
                t -= k
            acc += m * tab[t]
        val = acc / k
    val = ctx.round(val)
    return SumValue(val, "direct", _rounding_err(ctx, val))


def partial_cot(h: int, k: int, ell: int, ctx: PrecisionContext | None = None) -> SumValue:
    """C_ell(h/k) = (1/k) sum_{m=1}^{ell} cot(pi m h/k), for 1 <= ell < k."""
    ctx = _ctx(ctx)
    if k < 2:
        raise ValueError(f"need k >= 2, got {k}")
    _require_coprime(h, k)
    if not 1 <= ell < k:
        raise ValueError(f"need 1 <= ell < k, got ell = {ell}")
    tab = cot_table(k, ctx.bits)
    hm = h % k
    with ctx.working():
        acc = mpfr(0)
        t = 0
        for m in range(1, ell + 1):
            t += hm
            if t >= k:
                t -= k
            acc += tab[t]
        val = acc / k
    val = ctx.round(val)
    return SumValue(val, "direct", _rounding_err(ctx, val))


def partial_cot_profile(h: int, k: int, ctx: PrecisionContext | None = None) -> tuple:
    """All partial averages C_1(h/k), ..., C_{k-1}(h/k) in one O(k) pass."""
    ctx = _ctx(ctx)
    if k < 2:
        raise ValueError(f"need k >= 2, got {k}")
    _require_coprime(h, k)
    tab = cot_table(k, ctx.bits)
    hm = h % k
    out = []
    with ctx.working():
        acc = mpfr(0)
        t = 0
        for _ in range(1, k):
            t += hm
            if t >= k:
                t -= k
            acc += tab[t]
            out.append(acc / k)
    with ctx.final():
        return tuple(mpfr(v) for v in out)


@lru_cache(maxsize=32)
def _f_table(f: PiecewisePoly, k: int, bits: int) -> tuple:
    """f(m/k) for m = 1..k-1 at working precision; index 0 is None."""
    tab = [None]
    with gmpy2.context(precision=bits + 32):
        for m in range(1, k):
            tab.append(mpfr(f.eval(Fraction(m, k))))
    return tuple(tab)


def s_f(f: PiecewisePoly, h: int, k: int, ctx: PrecisionContext | None = None) -> SumValue:
    """S_f(h/k) = (1/k) sum_{m=1}^{k-1} f(m/k) cot(pi m h/k).

    Uses f's midpoint convention at grid points that hit breakpoints.
    """
    ctx = _ctx(ctx)
    if k < 2:
        raise ValueError(f"need k >= 2, got {k}")
    _require_coprime(h, k)
    if k <= _TABLE_LIMIT:
        ftab = _f_table(f, k, ctx.bits)
        cott = cot_table(k, ctx.bits)
        hm = h % k
        with ctx.working():
            acc = mpfr(0)
            t = 0
            for m in range(1, k):
                t += hm
                if t >= k:
                    t -= k
                acc += ftab[m] * cott[t]
            val = acc / k
        err_factor = 1
    else:
        val = _s_f_rotation(f, h, k, ctx)
        err_factor = 16  # rotation drift near cot poles costs a few bits
    val = ctx.round(val)
    return SumValue(val, "direct", err_factor * _rounding_err(ctx, val))


def _s_f_rotation(f: PiecewisePoly, h: int, k: int, ctx: PrecisionContext):
    """Table-free s_f accumulation for large k.

    sin/cos of pi*m*h/k advance by a rotation recurrence and are rebuilt
    from the exact reduced angle every _RESYNC steps, so rounding error
    stays at working-precision level instead of accumulating over 10^6
    steps. Piece lookup is incremental: switch points and exact-breakpoint
    midpoints are precomputed in m-units.
    """
    hm = h % k
    # m values where m/k is exactly a breakpoint -> midpoint value there
    mid_at = {}
    for p in f.pieces:
        r = p.start * k
        if r.denominator == 1 and 1 <= r.numerator < k:
            mid_at[r.numerator] = f.eval(p.start)
    # per-piece switch points: piece i covers m in [switch[i], switch[i+1])
    switches = [math.ceil(p.start * k) for p in f.pieces]
    with ctx.working():
        pi = gmpy2.const_pi()
        coeff_tabs = [tuple(mpfr(c) for c in p.coeffs) for p in f.pieces]
        mid_tab = {m: mpfr(v) for m, v in mid_at.items()}
        step = pi * hm / k
        sin1, cos1 = gmpy2.sin_cos(step)
        inv_k = gmpy2.div(1, k)
        acc = mpfr(0)
        x = mpfr(0)
        s, c = mpfr(0), mpfr(1)
        t2k = 0  # m*h mod 2k, for exact angle resync
        two_k = 2 * k
        piece = 0
        next_switch = switches[1] if len(switches) > 1 else k
        for m in range(1, k):
            t2k += hm
            if t2k >= two_k:
                t2k -= two_k
            if m % _RESYNC:
                s, c = s * cos1 + c * sin1, c * cos1 - s * sin1
            else:
                s, c = gmpy2.sin_cos(pi * t2k / k)
            x += inv_k
            if m >= next_switch:
                while piece + 1 < len(switches) and m >= switches[piece + 1]:
                    piece += 1
                next_switch = switches[piece + 1] if piece + 1 < len(switches) else k
                x = gmpy2.div(m, k)  # re-anchor x exactly at piece changes
            fv = mid_tab.get(m)
            if fv is None:
                fv = coeff_tabs[piece][-1]
                for coef in reversed(coeff_tabs[piece][:-1]):
                    fv = fv * x + coef
            acc += fv * c / s
        return acc / k


def cot_dft(h: int, k: int, n: int, ctx: PrecisionContext | None = None):
    """sum_{m=1}^{k-1} cot(pi m h/k) e(-n m/k) as an mpc.

    Equals -2*i*k*((n*hbar/k)) by the sawtooth DFT identity.
    """
    ctx = _ctx(ctx)
    if k < 2:
        raise ValueError(f"need k >= 2, got {k}")
    _require_coprime(h, k)
    cott = cot_table(k, ctx.bits)
    cost = cos2pi_table(k, ctx.bits)
    sint = sin2pi_table(k, ctx.bits)
    hm, nm = h % k, n % k
    with ctx.working():
        re = mpfr(0)
        im = mpfr(0)
        t = 0
        tn = 0
        for _ in range(1, k):
            t += hm
            if t >= k:
                t -= k
            tn += nm
            if tn >= k:
                tn -= k
            c = cott[t]
            re += c * cost[tn]
            im -= c * sint[tn]
    with ctx.final():
        return gmpy2.mpc(re, im)
