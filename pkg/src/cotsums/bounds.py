"""End-to-end bound checks for the twisted sums S_f.

Assembles the pieces: snap a piecewise function's breakpoints onto the
1/k grid, measure |S_f(h/k)| directly, rebuild it from jump data via the
V1 closed form, and compare against the continued-fraction main terms.
The unspecified O-constants are handled empirically: a calibration sweep
fits C, a disjoint validation sweep must then hold with the same C.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import gmpy2
from gmpy2 import mpfr

from .numtheory import mod_inverse
from .piecewise import PiecewisePoly, indicator, polynomial
from .reciprocity import bound_sf
from .specialfn import DEFAULT_CONTEXT, PrecisionContext
from .sums import s_f
from .vseries import V1Args, v1_closed

__all__ = [
    "TheoremMtCase",
    "check_thm_mt",
    "lemma_ml_decompose",
    "standard_suite",
]


def _ctx(ctx: PrecisionContext | None) -> PrecisionContext:
    return DEFAULT_CONTEXT if ctx is None else ctx


@dataclass(frozen=True)
class TheoremMtCase:
    """One measured-vs-bounded data point.

    f is the grid-snapped function the numbers describe.  measured is
    |S_f(h/k)| by direct summation; main_direct / main_inverse are the
    structured continued-fraction terms for h/k and its inverse; the
    O-term budget is slack_budget = d*D0 + D1.
    """

    f: PiecewisePoly
    h: int
    k: int
    measured: float
    main_direct: float
    main_inverse: float
    slack_budget: float

    def excess_direct(self) -> float:
        """Part of measured the direct main term fails to cover, per slack unit."""
        if self.slack_budget == 0:
            return 0.0
        return max(0.0, self.measured - self.main_direct) / self.slack_budget


def check_thm_mt(f: PiecewisePoly, h: int, k: int, ctx: PrecisionContext | None = None) -> TheoremMtCase:
    """Snap f to the 1/k grid, measure |S_f|, and attach both main terms."""
    ctx = _ctx(ctx)
    if k < 2:
        raise ValueError(f"need k >= 2, got {k}")
    if math.gcd(h, k) != 1:
        raise ValueError(f"need gcd(h, k) = 1, got ({h}, {k})")
    g = f.snap_to_grid(k)
    measured = abs(float(s_f(g, h, k, ctx).value))
    main_direct, main_inverse = bound_sf(g, h, k)
    slack = g.d * float(g.d0()) + float(g.fprime_l2(ctx))
    return TheoremMtCase(g, h, k, measured, main_direct, main_inverse, slack)


def lemma_ml_decompose(
    f: PiecewisePoly, h: int, k: int, ctx: PrecisionContext | None = None
) -> tuple[mpfr, mpfr]:
    """Jump decomposition of S_f: (combination, residual).

    combination = (1/pi) sum_j V1(hbar/k, l_j/k) * jump_j over the jumps
    of f, residual = S_f - combination.  Every breakpoint must already
    lie on the 1/k grid (snap first); for f with zero net Fourier data
    beyond the jumps (e.g. f(x) = x) the residual is pure rounding.
    """
    ctx = _ctx(ctx)
    if math.gcd(h, k) != 1:
        raise ValueError(f"need gcd(h, k) = 1, got ({h}, {k})")
    for b in f.breakpoints:
        if (b * k).denominator != 1:
            raise ValueError(f"breakpoint {b} is not on the 1/k grid; snap_to_grid first")
    hbar = mod_inverse(h, k)
    direct = s_f(f, h, k, ctx)
    with ctx.working():
        acc = mpfr(0)
        for x, jump in f.jumps():
            ell = int(x * k) % k
            acc += v1_closed(V1Args(hbar, k, ell), ctx).value * jump
        combination = acc / gmpy2.const_pi()
        residual = direct.value - combination
    return ctx.round(combination), ctx.round(residual)


def standard_suite() -> tuple[tuple[str, PiecewisePoly], ...]:
    """The fixed test-function suite used by every fitted-constant sweep.

    Kept small and in-repo so fitted constants are reproducible: two
    indicators, the linear sawtooth, a continuous triangle wave, and two
    quadratics (one continuous, one with a unit jump).
    """
    half = Fraction(1, 2)
    triangle = PiecewisePoly.from_pieces(
        [
            (0, half, (0, 1)),
            (half, 1, (1, -1)),
        ]
    )
    return (
        ("indicator_half", indicator(0, half)),
        ("indicator_third", indicator(0, Fraction(1, 3))),
        ("sawtooth_x", polynomial(0, 1)),
        ("triangle", triangle),
        ("parabola_arch", polynomial(0, 1, -1)),
        ("parabola_x2", polynomial(0, 0, 1)),
    )
