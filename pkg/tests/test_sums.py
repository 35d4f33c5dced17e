"""Finite cotangent and sawtooth sums against independent oracles."""

import math
from fractions import Fraction

import gmpy2
import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cotsums.numtheory import mod_inverse
from cotsums.piecewise import indicator, linear_combine, polynomial
from cotsums.specialfn import PrecisionContext, sawtooth
from cotsums.sums import (
    SumValue,
    cot_dft,
    dedekind_cot,
    dedekind_exact,
    partial_cot,
    partial_cot_profile,
    s_f,
    vasyunin,
)

CTX = PrecisionContext(128)
TOL = float(CTX.tolerance())


def dedekind_literal(h: int, k: int) -> Fraction:
    # the defining sum of sawtooth products, exact and O(k) slow
    return sum(
        (sawtooth(Fraction(m, k)) * sawtooth(Fraction(m * h, k)) for m in range(1, k)),
        Fraction(0),
    )


def test_dedekind_pinned_values():
    assert dedekind_exact(1, 3) == Fraction(1, 18)
    assert dedekind_exact(1, 2) == 0
    assert dedekind_exact(1, 5) == Fraction(1, 5)


def test_dedekind_matches_literal_sum():
    for k in range(2, 41):
        for h in range(1, k):
            if math.gcd(h, k) == 1:
                assert dedekind_exact(h, k) == dedekind_literal(h, k)


def test_dedekind_h_one_closed_form():
    for k in range(2, 80):
        assert dedekind_exact(1, k) == Fraction((k - 1) * (k - 2), 12 * k)


def test_dedekind_antisymmetry():
    for k in range(2, 60):
        for h in range(1, k):
            if math.gcd(h, k) == 1:
                assert dedekind_exact(k - h, k) == -dedekind_exact(h, k)


def test_dedekind_periodicity_in_h():
    assert dedekind_exact(7 + 11, 11) == dedekind_exact(7, 11)


def test_dedekind_reciprocity_small():
    for k in range(2, 61):
        for h in range(1, k):
            if math.gcd(h, k) != 1:
                continue
            lhs = dedekind_exact(h, k) + dedekind_exact(k, h)
            rhs = Fraction(-1, 4) + Fraction(1, 12) * (
                Fraction(h, k) + Fraction(k, h) + Fraction(1, h * k)
            )
            assert lhs == rhs


def test_dedekind_errors():
    with pytest.raises(ValueError):
        dedekind_exact(2, 4)
    with pytest.raises(ValueError):
        dedekind_exact(1, 0)


def test_dedekind_cot_form_matches_exact():
    for k in range(2, 81):
        for h in range(1, k):
            if math.gcd(h, k) != 1:
                continue
            sv = dedekind_cot(h, k, CTX)
            assert isinstance(sv, SumValue)
            with gmpy2.context(precision=160):
                diff = abs(sv.value - gmpy2.mpfr(
                    dedekind_exact(h, k).numerator) / dedekind_exact(h, k).denominator)
            assert diff < max(float(sv.err_estimate), TOL)


def test_vasyunin_pinned():
    # V(1/3) = -1/(3 sqrt(3))
    sv = vasyunin(1, 3, CTX)
    with gmpy2.context(precision=160):
        want = -1 / (3 * gmpy2.sqrt(3))
        assert abs(sv.value - want) < 1e-30


def test_vasyunin_antisymmetry():
    for (h, k) in ((2, 5), (3, 7), (16, 215)):
        a = vasyunin(h, k, CTX).value
        b = vasyunin(k - h, k, CTX).value
        with gmpy2.context(precision=160):
            assert abs(a + b) < 1e-30


def test_vasyunin_is_scaled_sawtooth_transform():
    # k * s_f for f(x) = x equals the sum at the inverse numerator
    f = polynomial(0, 1)
    for (h, k) in ((3, 7), (5, 12), (16, 215)):
        hbar = mod_inverse(h, k)
        sv = s_f(f, h, k, CTX)
        vv = vasyunin(hbar, k, CTX)
        with gmpy2.context(precision=160):
            assert abs(k * sv.value - vv.value) < 1e-28


def test_partial_cot_domain_and_profile():
    with pytest.raises(ValueError):
        partial_cot(3, 7, 0, CTX)
    with pytest.raises(ValueError):
        partial_cot(3, 7, 7, CTX)
    prof = partial_cot_profile(231, 677, CTX)
    assert len(prof) == 676
    for ell in (1, 100, 400, 676):
        assert prof[ell - 1] == partial_cot(231, 677, ell, CTX).value


def test_partial_cot_full_range_cancels():
    for (h, k) in ((1, 7), (3, 8), (7, 100), (231, 677)):
        sv = partial_cot(h, k, k - 1, CTX)
        assert abs(float(sv.value)) < k * TOL


def test_partial_cot_pinned_value():
    sv = partial_cot(231, 677, 100, CTX)
    assert float(format(sv.value, ".17g")) == 0.1796462863954349


def test_sf_is_linear():
    f = indicator(0, Fraction(1, 2))
    g = polynomial(0, 1)
    comb = linear_combine(2, f, -3, g)
    for (h, k) in ((3, 7), (10, 21)):
        with gmpy2.context(precision=160):
            lhs = s_f(comb, h, k, CTX).value
            rhs = 2 * s_f(f, h, k, CTX).value - 3 * s_f(g, h, k, CTX).value
            assert abs(lhs - rhs) < 1e-28


def test_sf_against_mpmath():
    mpmath.mp.dps = 50
    f = polynomial(0, 1)
    for (h, k) in ((3, 7), (16, 215)):
        want = mpmath.fsum(
            mpmath.mpf(m) / k * mpmath.cot(mpmath.pi * ((m * h) % k) / k)
            for m in range(1, k)
        ) / k
        got = float(s_f(f, h, k, CTX).value)
        assert math.isclose(got, float(want), rel_tol=0, abs_tol=1e-25)


def test_sf_constant_is_zero():
    f = polynomial(Fraction(5, 3))
    for (h, k) in ((1, 4), (5, 9)):
        assert abs(float(s_f(f, h, k, CTX).value)) < k * TOL


def test_cot_dft_small_against_mpmath():
    mpmath.mp.dps = 40
    for k in (3, 5, 8, 12):
        for h in range(1, k):
            if math.gcd(h, k) != 1:
                continue
            for n in (-3, 0, 2, 5):
                got = cot_dft(h, k, n, CTX)
                want = mpmath.fsum(
                    mpmath.cot(mpmath.pi * m * h / k)
                    * mpmath.e ** (-2j * mpmath.pi * n * m / k)
                    for m in range(1, k)
                )
                hbar = mod_inverse(h, k)
                expected = -2j * k * float(sawtooth(Fraction(n * hbar, k)))
                assert abs(complex(got) - complex(want)) < 1e-20
                assert abs(complex(want) - expected) < 1e-20


@given(st.integers(min_value=2, max_value=500), st.integers(min_value=1, max_value=499))
@settings(deadline=None, max_examples=80)
def test_dedekind_reciprocity_property(k, h):
    h = 1 + h % (k - 1) if k > 2 else 1
    g = math.gcd(h, k)
    h, k = h // g, k // g
    if k < 2:
        h, k = 1, 2
    lhs = dedekind_exact(h, k) + dedekind_exact(k, h)
    rhs = Fraction(-1, 4) + Fraction(1, 12) * (
        Fraction(h, k) + Fraction(k, h) + Fraction(1, h * k)
    )
    assert lhs == rhs
