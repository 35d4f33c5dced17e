"""Exact continued-fraction arithmetic for rationals in (0, 1).

Everything in this module is integer or rational and exact. The numeric
modules rely on the invariants established here (continuant growth, quotient
reversal, the cross-continuant identity) without re-deriving them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

__all__ = [
    "ContinuedFraction",
    "continuants",
    "continued_fraction",
    "cross_continuant_check",
    "from_quotients",
    "mod_inverse",
    "parse_fraction",
    "reversed_star",
]


def parse_fraction(text: str) -> Fraction:
    """Parse the text form "h/k" (or a bare integer) into a Fraction."""
    return Fraction(text.strip())


def mod_inverse(h: int, k: int) -> int:
    """Multiplicative inverse of h modulo k, in [1, k-1].

    Raises ValueError if k < 2 or gcd(h, k) != 1.
    """
    if k < 2:
        raise ValueError(f"modulus must be >= 2, got {k}")
    try:
        return pow(h, -1, k)
    except ValueError as exc:
        raise ValueError(f"{h} is not invertible modulo {k}") from exc


def continuants(quotients) -> tuple[int, ...]:
    """Continuant sequence v_0..v_r of a partial-quotient list.

    v_0 = 1 and v_m = b_m * v_{m-1} + v_{m-2} (with v_{-1} = 0), so for the
    canonical expansion of h/k the last entry is k.
    """
    prev, cur = 0, 1
    out = [1]
    for b in quotients:
        prev, cur = cur, b * cur + prev
        out.append(cur)
    return tuple(out)


def from_quotients(quotients) -> Fraction:
    """Value of [0; b_1, ..., b_r] as an exact Fraction.

    Accepts non-canonical lists (a trailing quotient of 1 is allowed); the
    value is what matters here, normalization happens in continued_fraction.
    """
    if not quotients:
        raise ValueError("empty quotient list")
    num_prev, num = 1, 0
    den_prev, den = 0, 1
    for b in quotients:
        if b < 1:
            raise ValueError(f"partial quotients must be >= 1, got {b}")
        num_prev, num = num, b * num + num_prev
        den_prev, den = den, b * den + den_prev
    return Fraction(num, den)


@dataclass(frozen=True)
class ContinuedFraction:
    """Canonical expansion x = [0; b_1, ..., b_r] of a rational in (0, 1).

    quotients holds b_1..b_r (the implicit leading integer part is 0), v and
    u the denominator and numerator continuants with v[0] = 1, u[0] = 0,
    v[r] = denominator, u[r] = numerator. The Euclid expansion of a reduced
    fraction in (0, 1) always ends with b_r >= 2.
    """

    value: Fraction
    quotients: tuple[int, ...]
    v: tuple[int, ...]
    u: tuple[int, ...]

    @property
    def r(self) -> int:
        return len(self.quotients)

    def __str__(self) -> str:
        return "[0;" + ",".join(str(b) for b in self.quotients) + "]"


def continued_fraction(x) -> ContinuedFraction:
    """Canonical continued fraction of a Fraction in (0, 1)."""
    x = Fraction(x)
    if not 0 < x < 1:
        raise ValueError(f"need 0 < x < 1, got {x}")
    quotients = []
    num, den = x.denominator, x.numerator
    while den:
        q, num = divmod(num, den)
        quotients.append(q)
        num, den = den, num
    # Euclid on a reduced fraction cannot end with quotient 1 here: the last
    # divisor is 1 and the previous remainder is >= 2.
    v = continuants(quotients)
    u_prev, u_cur = 1, 0
    u = [0]
    for b in quotients:
        u_prev, u_cur = u_cur, b * u_cur + u_prev
        u.append(u_cur)
    return ContinuedFraction(value=x, quotients=tuple(quotients), v=v, u=tuple(u))


def reversed_star(x) -> Fraction:
    """The fraction h*/k whose quotients are those of h/k reversed.

    h* is the representative in [1, k-1] of (-1)^(r+1) * mod_inverse(h, k).
    Reversal is an involution whenever the leading quotient is >= 2; when
    b_1 = 1 the reversed expansion ends in 1 and normalization shortens it,
    so a second reversal need not return to x.
    """
    x = Fraction(x)
    cf = continued_fraction(x)
    hbar = mod_inverse(x.numerator, x.denominator)
    hstar = hbar if cf.r % 2 == 1 else x.denominator - hbar
    return Fraction(hstar, x.denominator)


def cross_continuant_check(x) -> bool:
    """Check k = v_s * w_{r-s} + v_{s-1} * w_{r-s-1} for every 0 <= s <= r.

    w are the continuants of the reversed quotient sequence (taken raw, not
    re-normalized: when b_1 = 1 the reversed list is non-canonical but the
    identity needs its continuants, not those of the shortened form). Also
    checks the sandwich k/2 <= v_s * w_{r-s} <= k. True for every valid
    input; False signals an implementation bug.
    """
    x = Fraction(x)
    cf = continued_fraction(x)
    w = continuants(tuple(reversed(cf.quotients)))
    k, r = x.denominator, cf.r
    for s in range(r + 1):
        vs = cf.v[s]
        vs1 = cf.v[s - 1] if s >= 1 else 0
        ws = w[r - s]
        ws1 = w[r - s - 1] if r - s >= 1 else 0
        if vs * ws + vs1 * ws1 != k:
            return False
        if not k <= 2 * vs * ws <= 2 * k:
            return False
    return True


def _coprime(h: int, k: int) -> bool:
    return gcd(h, k) == 1
