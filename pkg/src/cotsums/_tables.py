"""Shared lookup tables for the sum evaluators, cached per (k, bits).

Tables live at working precision (bits + GUARD_BITS) and are built with
mirrored symmetry so that the odd/even identities the tests rely on hold
bit-for-bit: cot_table[k-t] == -cot_table[t], cos2pi_table[k-t] ==
cos2pi_table[t], sin2pi_table[k-t] == -sin2pi_table[t].
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import gmpy2
from gmpy2 import mpfr

from .specialfn import GUARD_BITS


def _working(bits: int):
    return gmpy2.context(precision=bits + GUARD_BITS)


@lru_cache(maxsize=64)
def cot_table(k: int, bits: int) -> tuple:
    """cot(pi*t/k) for t = 1..k-1; index 0 (the pole) is None."""
    tab = [None] * k
    with _working(bits):
        pi = gmpy2.const_pi()
        for t in range(1, k // 2 + 1):
            c = gmpy2.cot(pi * t / k)
            tab[t] = c
            tab[k - t] = -c
        if k % 2 == 0:
            tab[k // 2] = mpfr(0)
    return tuple(tab)


@lru_cache(maxsize=64)
def cos2pi_table(k: int, bits: int) -> tuple:
    """cos(2*pi*t/k) for t = 0..k-1, even-mirrored."""
    tab = [None] * k
    with _working(bits):
        two_pi = 2 * gmpy2.const_pi()
        tab[0] = mpfr(1)
        for t in range(1, k // 2 + 1):
            c = gmpy2.cos(two_pi * t / k)
            tab[t] = c
            tab[k - t] = c
        if k % 2 == 0:
            tab[k // 2] = mpfr(-1)
    return tuple(tab)


@lru_cache(maxsize=64)
def sin2pi_table(k: int, bits: int) -> tuple:
    """sin(2*pi*t/k) for t = 0..k-1, odd-mirrored."""
    tab = [None] * k
    with _working(bits):
        two_pi = 2 * gmpy2.const_pi()
        tab[0] = mpfr(0)
        for t in range(1, k // 2 + 1):
            s = gmpy2.sin(two_pi * t / k)
            tab[t] = s
            tab[k - t] = -s
        if k % 2 == 0:
            tab[k // 2] = mpfr(0)
    return tuple(tab)


@lru_cache(maxsize=64)
def saw_table(k: int, bits: int) -> tuple:
    """((t/k)) = (k - 2t)/(2k) for t = 0..k-1 as working-precision reals.

    Rounding commutes with negation, so tab[k-t] == -tab[t] exactly.
    """
    with _working(bits):
        tab = [mpfr(0)]
        for t in range(1, k):
            tab.append(mpfr(Fraction(k - 2 * t, 2 * k)))
    return tuple(tab)


@lru_cache(maxsize=64)
def psi_table(k: int, bits: int) -> tuple:
    """digamma(t/k) for t = 1..k-1; index 0 is None."""
    tab = [None]
    with _working(bits):
        for t in range(1, k):
            tab.append(gmpy2.digamma(mpfr(Fraction(t, k))))
    return tuple(tab)


@lru_cache(maxsize=8)
def harm_table(k: int, M: int, bits: int) -> tuple:
    """H[t] = sum_{j=0}^{M-1} 1/(j*k + t) for t = 1..k; index 0 is None.

    Reorganizes sum_{m<=M*k} c_m/m for k-periodic c into k dot products.
    Entries are large (M*k mpfr values), hence the small cache.
    """
    tab = [None]
    with _working(bits):
        for t in range(1, k + 1):
            acc = mpfr(0)
            m = t
            for _ in range(M):
                acc += gmpy2.div(1, m)
                m += k
            tab.append(acc)
    return tuple(tab)


def clear_caches() -> None:
    """Drop all cached tables (used by benchmarks for cold-start timings)."""
    for fn in (cot_table, cos2pi_table, sin2pi_table, saw_table, psi_table, harm_table):
        fn.cache_clear()
