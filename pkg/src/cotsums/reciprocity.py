"""Reciprocity relations for cotangent sums and their empirical residuals.

Three layers, each one Euclid step deeper:

  * prop_mp_residual: the one-step relation tying (1/h) V1(h/k, l/k) to a
    shifted series at the reduced fraction {k/h}, with an explicit
    logarithmic main term.  The residual stays O(1/h + 1/k).
  * mcc_check: the alternating relation for partial cotangent sums,
    C_l(hbar/k) - C_{l1}(hbar1/k1) = (1/pi)(gamma - 1) log(k/h) + O(h/k1)
    with gamma somewhere in [0, 1].
  * bound_v1 / bound_sf: fully iterated bounds along the continued
    fraction of h/k, one sum for V1(h/k, .) and one for V1(hbar/k, .).

Residuals are always reported against the structural scale (1/h + 1/k,
h/k1, ...) so sweeps can fit a single constant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import gmpy2
from gmpy2 import mpfr

from .numtheory import continued_fraction, mod_inverse
from .piecewise import PiecewisePoly
from .specialfn import DEFAULT_CONTEXT, PrecisionContext
from .sums import partial_cot
from .vseries import V1Args, V2Args, beta_of, v1_closed, v2_auto_blocks, v2_eval

__all__ = [
    "BoundReport",
    "ReciprocityReport",
    "ReductionDegenerateError",
    "bound_sf",
    "bound_v1",
    "mcc_check",
    "mcc_reduce",
    "prop_mp_residual",
]


class ReductionDegenerateError(ValueError):
    """Euclid step landed outside the relation's domain (k1 < 2, h1 = 0, ...)."""


def _ctx(ctx: PrecisionContext | None) -> PrecisionContext:
    return DEFAULT_CONTEXT if ctx is None else ctx


@dataclass(frozen=True)
class ReciprocityReport:
    """Both sides of a reciprocity relation plus the residual bookkeeping.

    residual = lhs - main_term exactly as computed; scale is the quantity
    the residual is expected to be a bounded multiple of.  meta carries the
    derived reduction data (k1, lprime, beta, ...).
    """

    h: int
    k: int
    ell: int
    lhs: mpfr
    main_term: mpfr
    residual: mpfr
    scale: mpfr
    meta: dict = field(default_factory=dict)

    def ratio(self) -> float:
        return abs(float(self.residual)) / float(self.scale)

    def to_json_dict(self) -> dict:
        return {
            "h": self.h,
            "k": self.k,
            "l": self.ell,
            "lhs": float(self.lhs),
            "main": float(self.main_term),
            "residual": float(self.residual),
            "scale": float(self.scale),
        }


def prop_mp_residual(
    h: int,
    k: int,
    ell: int,
    ctx: PrecisionContext | None = None,
    v2_blocks: int | None = None,
) -> ReciprocityReport:
    """One-step reciprocity residual.

    lhs = (1/h) V1(h/k, l/k) + (1/k) V2({k/h}, beta) for h >= 2 (the V2
    term is absent at h = 1).  For k | l the main term is the Vasyunin
    case (1/h - 1/k) log(k/h); otherwise the sharp replacement

      -(1/h)(log{l/k} + log{-l/k} - log-({l/k} k/h) - log-({-l/k} k/h))
      - (1/k) log(k/h)

    where log- is the negative part of log.  v2_blocks = None picks a
    truncation depth from (a, beta) alone, so the cached V2 values are
    shared across every k that reduces to the same shifted series.
    """
    ctx = _ctx(ctx)
    if h < 1 or k < 1 or ell < 1:
        raise ValueError(f"need h, k, ell >= 1, got ({h}, {k}, {ell})")
    if math.gcd(h, k) != 1:
        raise ValueError(f"need gcd(h, k) = 1, got ({h}, {k})")

    meta: dict = {}
    v1 = v1_closed(V1Args(h, k, ell), ctx)
    with ctx.working():
        lhs = v1.value / h
    if h >= 2:
        beta, k1, lprime = beta_of(h, k, ell)
        a = Fraction(k % h, h)
        blocks = v2_auto_blocks(a, beta) if v2_blocks is None else v2_blocks
        v2 = v2_eval(V2Args(a, beta), blocks, ctx)
        meta.update(k1=k1, lprime=lprime, beta=beta, v2_blocks=blocks)
        with ctx.working():
            lhs += v2.value / k

    lr = ell % k
    with ctx.working():
        logkh = gmpy2.log(gmpy2.div(k, h))
        if lr == 0:
            main = (gmpy2.div(1, h) - gmpy2.div(1, k)) * logkh
        else:
            # log-(x) = min(log x, 0) vanishes unless the argument is < 1,
            # decided here exactly on integers.
            bracket = gmpy2.log(gmpy2.div(lr, k)) + gmpy2.log(gmpy2.div(k - lr, k))
            if lr < h:
                bracket -= gmpy2.log(gmpy2.div(lr, h))
            if k - lr < h:
                bracket -= gmpy2.log(gmpy2.div(k - lr, h))
            main = -bracket / h - logkh / k
        scale = gmpy2.div(1, h) + gmpy2.div(1, k)
    lhs = ctx.round(lhs)
    main = ctx.round(main)
    with ctx.final():
        residual = lhs - main
    return ReciprocityReport(h, k, ell, lhs, main, residual, ctx.round(scale), meta)


def mcc_reduce(h: int, k: int, ell: int) -> tuple[int, int, int, int]:
    """One Euclid step of the partial-sum relation: (h1, k1, ell1, lprime).

    k1 = k mod h and lprime = ell mod h with representatives in [1, h],
    then ell1 = lprime mod k1 in [1, k1] and h1 = h mod k1 in [0, k1).
    The representative conventions matter: lprime and ell1 never take the
    value 0, h1 may.
    """
    if not 1 <= h < k:
        raise ValueError(f"need 1 <= h < k, got ({h}, {k})")
    if math.gcd(h, k) != 1:
        raise ValueError(f"need gcd(h, k) = 1, got ({h}, {k})")
    if not 0 < ell < k:
        raise ValueError(f"need 0 < ell < k, got {ell}")
    if h == 1:
        raise ValueError("reduction needs h >= 2 (k mod 1 degenerates)")
    k1 = k % h
    lprime = ell % h or h
    ell1 = lprime % k1 or k1
    h1 = h % k1
    return h1, k1, ell1, lprime


def mcc_check(h: int, k: int, ell: int, ctx: PrecisionContext | None = None) -> ReciprocityReport:
    """Alternating relation between C_l(hbar/k) and its Euclid reduction.

    The main term (1/pi)(gamma - 1) log(k/h) is only known to lie in
    [-log(k/h)/pi, 0]; the report takes the nearest endpoint when lhs
    falls outside that bracket (so residual = 0 means consistent with
    some gamma in [0, 1]) and compares the residual against h/k1.
    """
    ctx = _ctx(ctx)
    h1, k1, ell1, lprime = mcc_reduce(h, k, ell)
    if k1 < 2:
        raise ReductionDegenerateError(f"k1 = {k1} < 2 for (h, k) = ({h}, {k})")
    if h1 == 0:
        raise ReductionDegenerateError(f"h1 = 0 for (h, k) = ({h}, {k})")
    if ell1 == k1:
        raise ReductionDegenerateError(f"ell1 = k1 = {k1}: reduced sum hits the pole index")

    hbar = mod_inverse(h, k)
    hbar1 = mod_inverse(h1, k1)
    top = partial_cot(hbar, k, ell, ctx)
    bottom = partial_cot(hbar1, k1, ell1, ctx)
    with ctx.working():
        lhs = top.value - bottom.value
        lo = -gmpy2.log(gmpy2.div(k, h)) / gmpy2.const_pi()
        if lhs > 0:
            main = mpfr(0)
        elif lhs < lo:
            main = lo
        else:
            main = lhs
        scale = gmpy2.div(h, k1)
    lhs = ctx.round(lhs)
    main = ctx.round(main)
    with ctx.final():
        residual = lhs - main
    meta = dict(h1=h1, k1=k1, ell1=ell1, lprime=lprime, hbar=hbar, hbar1=hbar1)
    return ReciprocityReport(h, k, ell, lhs, main, residual, ctx.round(scale), meta)


@dataclass(frozen=True)
class BoundReport:
    """The two iterated continued-fraction sums bounding V1 at h/k and hbar/k.

    sum_small = sum_{m=0}^{r-1} log(v_{m+1}/v_m) / v_m bounds the
    direct-fraction series, sum_large = (1/k) sum_{m=1}^{r} v_m
    log(v_m/v_{m-1}) the inverse-fraction one.  Both are nonnegative;
    v_0 = 1, so a leading quotient b_1 = 1 contributes a zero term.
    """

    h: int
    k: int
    quotients: tuple[int, ...]
    continuants: tuple[int, ...]
    sum_small: float
    sum_large: float


def bound_v1(h: int, k: int) -> BoundReport:
    """Both continued-fraction bound sums for h/k.

    Continuants of a 60-digit k overflow float, so everything runs on
    logs of exact ints: v_m/v_r = exp(log v_m - log v_r).
    """
    if not 0 < h < k:
        raise ValueError(f"need 0 < h < k, got ({h}, {k})")
    if math.gcd(h, k) != 1:
        raise ValueError(f"need gcd(h, k) = 1, got ({h}, {k})")
    cf = continued_fraction(Fraction(h, k))
    logs = [math.log(v) for v in cf.v]
    r = cf.r
    small = 0.0
    for m in range(r):
        small += (logs[m + 1] - logs[m]) * math.exp(-logs[m])
    large = 0.0
    for m in range(1, r + 1):
        large += math.exp(logs[m] - logs[r]) * (logs[m] - logs[m - 1])
    return BoundReport(h, k, cf.quotients, cf.v, small, large)


def bound_sf(f: PiecewisePoly, h: int, k: int) -> tuple[float, float]:
    """Structured main terms of the jump-sum bounds for S_f at h/k and hbar/k.

    Both are (d D0 / pi) times the matching bound_v1 sum; the O(d D0 + D1)
    slack is deliberately excluded so callers can fit its constant.  A
    continuous f (d = 0) gets zero main terms.
    """
    rep = bound_v1(h, k)
    factor = f.d * float(f.d0()) / math.pi
    return factor * rep.sum_large, factor * rep.sum_small
