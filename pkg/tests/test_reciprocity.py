"""Reciprocity residuals, the two-step reduction, and continuant bounds."""

import math
from fractions import Fraction

import gmpy2
import pytest

from cotsums.numtheory import continued_fraction, mod_inverse
from cotsums.piecewise import indicator
from cotsums.reciprocity import (
    BoundReport,
    ReciprocityReport,
    ReductionDegenerateError,
    bound_sf,
    bound_v1,
    mcc_check,
    mcc_reduce,
    prop_mp_residual,
)
from cotsums.specialfn import PrecisionContext

CTX = PrecisionContext(128)


def test_prop_mp_report_shape():
    rep = prop_mp_residual(3, 7, 2, CTX)
    assert isinstance(rep, ReciprocityReport)
    assert (rep.h, rep.k, rep.ell) == (3, 7, 2)
    assert rep.meta["k1"] == 1
    assert rep.meta["lprime"] == 2
    assert rep.meta["beta"] == Fraction(2)
    assert rep.meta["v2_blocks"] >= 1
    d = rep.to_json_dict()
    assert set(d) == {"h", "k", "l", "lhs", "main", "residual", "scale"}
    assert d["l"] == 2
    with gmpy2.context(precision=160):
        assert abs(rep.residual - (rep.lhs - rep.main_term)) < 1e-30
        assert abs(rep.scale - (Fraction(1, 3) + Fraction(1, 7))) < 1e-30


def test_prop_mp_pinned_ratio():
    # frozen regression value for the showcase-sized example
    assert prop_mp_residual(3, 7, 2, CTX).ratio() == pytest.approx(
        0.35429049620546205, rel=1e-9
    )


def test_prop_mp_h_one_has_no_shifted_term():
    rep = prop_mp_residual(1, 9, 4, CTX)
    assert "beta" not in rep.meta
    assert rep.ratio() < 3.0


def test_prop_mp_multiple_of_k_branch():
    rep = prop_mp_residual(2, 5, 5, CTX)
    assert math.isfinite(rep.ratio())
    with gmpy2.context(precision=160):
        want = (gmpy2.mpfr(1) / 2 - gmpy2.mpfr(1) / 5) * gmpy2.log(gmpy2.mpfr(5) / 2)
        assert abs(rep.main_term - want) < 1e-30


def test_prop_mp_ratios_stay_small():
    worst = 0.0
    for k in range(2, 40):
        for h in range(1, k):
            if math.gcd(h, k) != 1:
                continue
            for ell in (1, k // 2 or 1, k - 1):
                worst = max(worst, prop_mp_residual(h, k, ell, CTX).ratio())
    assert worst < 2.5


def test_prop_mp_errors():
    with pytest.raises(ValueError):
        prop_mp_residual(2, 4, 1, CTX)
    with pytest.raises(ValueError):
        prop_mp_residual(0, 5, 1, CTX)
    with pytest.raises(ValueError):
        prop_mp_residual(3, 7, 0, CTX)


def test_mcc_reduce_showcase():
    assert mcc_reduce(231, 677, 100) == (16, 215, 100, 100)
    assert mcc_reduce(16, 215, 100) == (2, 7, 4, 4)
    seen = {mcc_reduce(231, 677, ell)[:2] for ell in range(1, 677)}
    assert seen == {(16, 215)}


def test_mcc_reduce_representatives_land_in_range():
    for (h, k) in ((5, 12), (16, 215), (231, 677)):
        for ell in range(1, k):
            h1, k1, ell1, lprime = mcc_reduce(h, k, ell)
            assert 1 <= lprime <= h
            assert 1 <= ell1 <= k1
            assert 0 <= h1 < k1 or k1 == 1
            assert k1 == k % h


def test_mcc_reduce_errors():
    with pytest.raises(ValueError):
        mcc_reduce(1, 7, 3)  # one Euclid step needs h >= 2
    with pytest.raises(ValueError):
        mcc_reduce(7, 3, 1)
    with pytest.raises(ValueError):
        mcc_reduce(2, 4, 1)
    with pytest.raises(ValueError):
        mcc_reduce(3, 7, 0)


def test_mcc_check_valid_case():
    rep = mcc_check(231, 677, 100, CTX)
    assert rep.meta["k1"] == 215
    assert rep.meta["hbar"] == mod_inverse(231, 677)
    with gmpy2.context(precision=160):
        assert abs(rep.scale - gmpy2.mpfr(231) / 215) < 1e-30
        lo = -gmpy2.log(gmpy2.mpfr(677) / 231) / gmpy2.const_pi()
        assert lo - 1e-30 <= rep.main_term <= 1e-30
    assert rep.ratio() < 0.30  # frozen: observed max over the pair is 0.234


def test_mcc_check_degenerate_ells():
    bad = set()
    for ell in range(1, 677):
        try:
            mcc_check(231, 677, ell, CTX)
        except ReductionDegenerateError:
            bad.add(ell)
    assert bad == {215, 446}


def test_mcc_check_small_pair_degenerates():
    # k1 = 1 after one step: nothing to compare against
    with pytest.raises(ReductionDegenerateError):
        mcc_check(3, 7, 2, CTX)


def test_bound_v1_pinned_small():
    rep = bound_v1(1, 2)
    assert isinstance(rep, BoundReport)
    assert rep.quotients == (2,)
    assert rep.continuants == (1, 2)
    assert rep.sum_small == pytest.approx(math.log(2), rel=1e-12)
    assert rep.sum_large == pytest.approx(math.log(2), rel=1e-12)


def test_bound_v1_pinned_showcase():
    rep = bound_v1(16, 215)
    assert rep.quotients == (13, 2, 3, 2)
    assert rep.continuants == (1, 13, 27, 94, 215)
    assert rep.sum_small == pytest.approx(2.6761751424422693, rel=1e-14)
    assert rep.sum_large == pytest.approx(1.6196192854233742, rel=1e-14)


def test_bound_v1_matches_direct_formula():
    # independent float evaluation of both continuant sums
    for (h, k) in ((89, 144), (231, 677), (100, 501)):
        rep = bound_v1(h, k)
        v = continued_fraction(Fraction(h, k)).v
        r = len(v) - 1
        small = sum(
            math.log(v[m + 1] / v[m]) / v[m] for m in range(r)
        )
        large = sum(
            v[m] / v[r] * math.log(v[m] / v[m - 1]) for m in range(1, r + 1)
        )
        assert rep.sum_small == pytest.approx(small, rel=1e-10)
        assert rep.sum_large == pytest.approx(large, rel=1e-10)


def test_bound_v1_huge_modulus():
    k = 10**60 + 7
    h = 10**59 + 12  # coprime: k % h leaves a unit chain
    while math.gcd(h, k) != 1:
        h += 1
    rep = bound_v1(h, k)
    assert math.isfinite(rep.sum_small) and rep.sum_small > 0
    assert math.isfinite(rep.sum_large) and rep.sum_large > 0
    assert rep.continuants[-1] == k


def test_bound_v1_errors():
    with pytest.raises(ValueError):
        bound_v1(2, 4)
    with pytest.raises(ValueError):
        bound_v1(5, 3)


def test_bound_sf_scales_by_jump_data():
    f = indicator(0, Fraction(1, 2))  # d = 2, d0 = 1
    rep = bound_v1(16, 215)
    direct, inverse = bound_sf(f, 16, 215)
    factor = 2 * 1 / math.pi
    assert direct == pytest.approx(factor * rep.sum_large, rel=1e-12)
    assert inverse == pytest.approx(factor * rep.sum_small, rel=1e-12)
