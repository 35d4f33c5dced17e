"""1-periodic piecewise polynomials with exact rational data.

Pieces tile [0, 1) exactly; coefficients are little-endian Fractions
(constant term first). Evaluation at a breakpoint uses the midpoint
convention 2 f(x) = f(x+) + f(x-), with the wrap-around point 0 taking its
left limit from the last piece at 1. Jumps, the max jump d0, and the L2
norm of f' are exact; Fourier coefficients of f' are exact up to one final
rounding.
"""

from __future__ import annotations

import json
import math
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction

import gmpy2
from gmpy2 import mpfr

from .specialfn import DEFAULT_CONTEXT, PrecisionContext

__all__ = [
    "Piece",
    "PiecewisePoly",
    "fprime_fourier",
    "indicator",
    "linear_combine",
    "polynomial",
]


def _poly_eval(coeffs, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _poly_derivative(coeffs) -> tuple[Fraction, ...]:
    if len(coeffs) <= 1:
        return (Fraction(0),)
    return tuple(j * coeffs[j] for j in range(1, len(coeffs)))


@dataclass(frozen=True)
class Piece:
    start: Fraction
    end: Fraction
    coeffs: tuple[Fraction, ...]


@dataclass(frozen=True)
class PiecewisePoly:
    pieces: tuple[Piece, ...]

    def __post_init__(self) -> None:
        if not self.pieces:
            raise ValueError("need at least one piece")
        if self.pieces[0].start != 0:
            raise ValueError("first piece must start at 0")
        if self.pieces[-1].end != 1:
            raise ValueError("last piece must end at 1")
        prev_end = None
        for p in self.pieces:
            if not p.coeffs:
                raise ValueError("empty coefficient list")
            if not p.start < p.end:
                raise ValueError(f"degenerate piece [{p.start}, {p.end})")
            if prev_end is not None and p.start != prev_end:
                raise ValueError(f"pieces must tile [0,1): gap at {prev_end}")
            prev_end = p.end

    @classmethod
    def from_pieces(cls, spec) -> "PiecewisePoly":
        """Build from an iterable of (start, end, coeffs) triples."""
        pieces = tuple(
            Piece(Fraction(s), Fraction(e), tuple(Fraction(c) for c in coeffs))
            for s, e, coeffs in spec
        )
        return cls(pieces)

    # -- evaluation ---------------------------------------------------------

    @property
    def breakpoints(self) -> tuple[Fraction, ...]:
        return tuple(p.start for p in self.pieces)

    def _piece_index(self, x: Fraction) -> int:
        return bisect_right(self.breakpoints, x) - 1

    def limit_right(self, x) -> Fraction:
        """f(x+), exact."""
        x = Fraction(x)
        x -= math.floor(x)
        p = self.pieces[self._piece_index(x)]
        return _poly_eval(p.coeffs, x)

    def limit_left(self, x) -> Fraction:
        """f(x-), exact; at a breakpoint this is the previous piece's value."""
        x = Fraction(x)
        x -= math.floor(x)
        if x == 0:
            return _poly_eval(self.pieces[-1].coeffs, Fraction(1))
        i = self._piece_index(x)
        if x == self.pieces[i].start:
            return _poly_eval(self.pieces[i - 1].coeffs, x)
        return _poly_eval(self.pieces[i].coeffs, x)

    def eval(self, x) -> Fraction:
        """Value at x (any rational; period-1 extension), exact.

        Breakpoints take the midpoint value (f(x+) + f(x-)) / 2.
        """
        x = Fraction(x)
        x -= math.floor(x)
        i = self._piece_index(x)
        p = self.pieces[i]
        if x == p.start:
            return (self.limit_right(x) + self.limit_left(x)) / 2
        return _poly_eval(p.coeffs, x)

    __call__ = eval

    # -- jump data ----------------------------------------------------------

    def jumps(self) -> tuple[tuple[Fraction, Fraction], ...]:
        """(location, f(x+) - f(x-)) for every genuine discontinuity."""
        out = []
        for p in self.pieces:
            x = p.start
            j = self.limit_right(x) - self.limit_left(x)
            if j != 0:
                out.append((x, j))
        return tuple(out)

    @property
    def d(self) -> int:
        """Number of genuine discontinuities."""
        return len(self.jumps())

    def d0(self) -> Fraction:
        """Max absolute jump, exact (0 for continuous functions)."""
        js = self.jumps()
        if not js:
            return Fraction(0)
        return max(abs(j) for _, j in js)

    # -- derivative data ----------------------------------------------------

    def fprime_l2_sq(self) -> Fraction:
        """Integral of f'(y)^2 over one period, exact."""
        total = Fraction(0)
        for p in self.pieces:
            dcoeffs = _poly_derivative(p.coeffs)
            # integrate the product polynomial termwise
            for i, a in enumerate(dcoeffs):
                for j, b in enumerate(dcoeffs):
                    n = i + j + 1
                    total += a * b * (p.end**n - p.start**n) / n
        return total

    def fprime_l2(self, ctx: PrecisionContext | None = None) -> mpfr:
        """||f'||_2, rounded at context precision."""
        ctx = ctx or DEFAULT_CONTEXT
        with ctx.working():
            val = gmpy2.sqrt(mpfr(self.fprime_l2_sq()))
        return ctx.round(val)

    def fprime_mean(self) -> Fraction:
        """Integral of f' over one period (the classical derivative only)."""
        total = Fraction(0)
        for p in self.pieces:
            total += _poly_eval(p.coeffs, p.end) - _poly_eval(p.coeffs, p.start)
        return total

    # -- grid snapping ------------------------------------------------------

    def snap_to_grid(self, k: int) -> "PiecewisePoly":
        """Move each breakpoint to the nearest multiple of 1/k, ties toward 0.

        Pieces whose snapped interval is empty are dropped; the surviving
        piece to their left absorbs the range.
        """
        if k < 2:
            raise ValueError(f"grid needs k >= 2, got {k}")
        snapped_starts = []
        for p in self.pieces:
            r = p.start * k
            j = math.floor(r + Fraction(1, 2))
            if 2 * r == 2 * j - 1:  # exact tie: round toward 0
                j -= 1
            snapped_starts.append(Fraction(j, k))
        pieces = []
        for i, p in enumerate(self.pieces):
            start = snapped_starts[i]
            end = snapped_starts[i + 1] if i + 1 < len(self.pieces) else Fraction(1)
            if start < end:
                pieces.append(Piece(start, end, p.coeffs))
        return PiecewisePoly(tuple(pieces))

    # -- serialization ------------------------------------------------------

    def to_json(self) -> str:
        return json.dumps(
            {
                "pieces": [
                    {
                        "start": str(p.start),
                        "end": str(p.end),
                        "poly": [str(c) for c in p.coeffs],
                    }
                    for p in self.pieces
                ]
            }
        )

    @classmethod
    def from_json(cls, source) -> "PiecewisePoly":
        """Parse the {"pieces": [{"start","end","poly"}, ...]} format."""
        data = json.loads(source) if isinstance(source, (str, bytes)) else source
        try:
            triples = [(p["start"], p["end"], p["poly"]) for p in data["pieces"]]
        except (TypeError, KeyError) as exc:
            raise ValueError(f"malformed piecewise JSON: {exc!r}") from exc
        return cls.from_pieces(triples)


def polynomial(*coeffs) -> PiecewisePoly:
    """Single polynomial piece on [0, 1), little-endian coefficients."""
    return PiecewisePoly.from_pieces([(0, 1, coeffs or (0,))])


def indicator(a, b) -> PiecewisePoly:
    """Indicator of the interval (a, b) inside [0, 1)."""
    a, b = Fraction(a), Fraction(b)
    if not 0 <= a < b <= 1:
        raise ValueError(f"need 0 <= a < b <= 1, got ({a}, {b})")
    spec = []
    if a > 0:
        spec.append((0, a, (0,)))
    spec.append((a, b, (1,)))
    if b < 1:
        spec.append((b, 1, (0,)))
    return PiecewisePoly.from_pieces(spec)


def linear_combine(cf, f: PiecewisePoly, cg, g: PiecewisePoly) -> PiecewisePoly:
    """cf*f + cg*g with merged breakpoints, exact."""
    cf, cg = Fraction(cf), Fraction(cg)
    cuts = sorted({p.start for p in f.pieces} | {p.start for p in g.pieces})
    spec = []
    for i, start in enumerate(cuts):
        end = cuts[i + 1] if i + 1 < len(cuts) else Fraction(1)
        pf = f.pieces[f._piece_index(start)].coeffs
        pg = g.pieces[g._piece_index(start)].coeffs
        n = max(len(pf), len(pg))
        coeffs = tuple(
            cf * (pf[j] if j < len(pf) else 0) + cg * (pg[j] if j < len(pg) else 0)
            for j in range(n)
        )
        spec.append((start, end, coeffs))
    return PiecewisePoly.from_pieces(spec)


def fprime_fourier(f: PiecewisePoly, n: int, ctx: PrecisionContext | None = None):
    """Fourier coefficient of the classical derivative:

        integral over [0,1) of f'(y) * exp(-2*pi*i*n*y) dy,  n != 0.

    Computed piecewise by integration by parts (exact antiderivative of
    polynomial times exponential), rounded once. Jump deltas are not
    included; f' means the piecewise classical derivative.
    """
    ctx = ctx or DEFAULT_CONTEXT
    if n == 0:
        raise ValueError("n = 0 is the mean; use fprime_mean")
    with ctx.working():
        two_pi = 2 * gmpy2.const_pi()
        c = gmpy2.mpc(0, -two_pi * n)
        total = gmpy2.mpc(0)
        for p in f.pieces:
            dcoeffs = _poly_derivative(p.coeffs)
            if all(a == 0 for a in dcoeffs):
                continue
            # F(y) = e(cy) * sum_j (-1)^j p^(j)(y) / c^(j+1)
            for y, sign_int in ((p.end, 1), (p.start, -1)):
                # exact angle reduction: exp(-2*pi*i*n*y) has period 1 in n*y
                phase = Fraction(n) * y
                phase -= math.floor(phase)
                ang = two_pi * mpfr(phase)
                e_cy = gmpy2.mpc(gmpy2.cos(ang), -gmpy2.sin(ang))
                inner = gmpy2.mpc(0)
                deriv = dcoeffs
                power = c
                sgn = 1
                while True:
                    val = _poly_eval(deriv, y)
                    inner += sgn * mpfr(val) / power
                    if len(deriv) == 1:
                        break
                    deriv = _poly_derivative(deriv)
                    power *= c
                    sgn = -sgn
                total += sign_int * e_cy * inner
        re, im = total.real, total.imag
    with ctx.final():
        return gmpy2.mpc(re, im)
