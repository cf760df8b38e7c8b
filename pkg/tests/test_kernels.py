from fractions import Fraction

import pytest

from kempner import kernels
from kempner.exact import ClassQuery, enumerate_class
from kempner.logratio import correction_term, log_expression
from kempner.words import DigitSum, digit_sum, pattern_counter


def test_correction_buckets_match_exact_fractions():
    N = 3000
    buckets = kernels.correction_buckets_base2(N, precision=96)
    per_class: dict[int, Fraction] = {}
    for n in range(1, N + 1):
        k = digit_sum(n, 2)
        per_class[k] = per_class.get(k, Fraction(0)) + Fraction(1, 2 * n * (2 * n + 1))
    for k_upper in (1, 2, 3, 5, 8, 11):
        lo, hi = buckets.prefix_bounds(k_upper)
        truth = sum((per_class.get(k, Fraction(0)) for k in range(1, k_upper + 1)), Fraction(0))
        assert lo <= truth <= hi
        assert hi - lo < Fraction(1, 1 << 100)


def test_block_buckets_match_per_term_evaluation():
    expr = log_expression("11")
    N = 6000
    buckets = kernels.block_buckets(expr, N, precision=96)
    counter = pattern_counter("11")
    corr: dict[int, tuple[Fraction, Fraction]] = {}
    harm: dict[int, Fraction] = {}
    for n in range(1, N + 1):
        k = counter(n)
        enc = correction_term(expr, n, 256)
        lo, hi = corr.get(k, (Fraction(0), Fraction(0)))
        corr[k] = (lo + enc.lo_fraction(), hi + enc.hi_fraction())
        harm[k] = harm.get(k, Fraction(0)) + Fraction(1, n)
    for k in range(6):
        lo, hi = buckets.correction_bounds(k)
        tight_lo, tight_hi = corr[k]
        assert lo <= tight_hi and tight_lo <= hi
        assert lo <= tight_lo and tight_hi <= hi  # kernel encloses the truth
        hlo, hhi = buckets.harmonic_bounds(k)
        assert hlo <= harm[k] <= hhi
        assert buckets.count(k) == sum(1 for n in range(1, N + 1) if counter(n) == k)


def test_block_buckets_cover_small_and_large_regimes():
    # crossing the series threshold must not leave a gap: totals over all
    # classes equal the harmonic number
    expr = log_expression("1")
    N = kernels._SERIES_MIN_N + 500
    buckets = kernels.block_buckets(expr, N, precision=96)
    total_lo = sum(buckets.h_lo)
    total_hi = total_lo + sum(buckets.h_inexact)
    from kempner.exact import harmonic

    S = 1 << buckets.scale_bits
    truth = harmonic(N)
    assert Fraction(total_lo, S) <= truth <= Fraction(total_hi, S)
    assert sum(buckets.counts) == N


def test_parallel_runs_are_bit_identical():
    expr = log_expression("11")
    kernels._block_cache.clear()
    one = kernels.block_buckets(expr, 60_000, precision=128, workers=1)
    kernels._block_cache.clear()
    four = kernels.block_buckets(expr, 60_000, precision=128, workers=4)
    assert one == four
    kernels._correction_cache.clear()
    a = kernels.correction_buckets_base2(80_000, precision=128, workers=1)
    kernels._correction_cache.clear()
    b = kernels.correction_buckets_base2(80_000, precision=128, workers=3)
    assert a == b


def test_count_binary_digit_sum_at_most():
    for X in (1, 7, 8, 100, 1024, 5000):
        for K in range(0, 8):
            brute = sum(1 for n in range(X) if digit_sum(n, 2) <= K)
            assert kernels.count_binary_digit_sum_at_most(X, K) == brute, (X, K)
    assert kernels.count_binary_digit_sum_at_most(0, 3) == 0
    assert kernels.count_binary_digit_sum_at_most(10, -1) == 0


def test_correction_tail_bound_dominates_brute_force():
    N, k = 1000, 4
    bound = kernels.correction_tail_bound(N, k, 96)
    brute = 2 * sum(
        (
            Fraction(1, 2 * n * (2 * n + 1))
            for n in range(N + 1, 300_000)
            if digit_sum(n, 2) <= k - 1
        ),
        Fraction(0),
    )
    assert bound > brute
    # k = 1 leaves an empty class
    assert kernels.correction_tail_bound(N, 1, 96) == 0
    # dense regime falls back to the unconditional cap
    assert kernels.correction_tail_bound(N, 64, 96) == Fraction(1, 2 * N)


def test_correction_tail_bound_is_sharp_for_sparse_classes():
    # k = 2: the remaining class members are powers of two; the counting
    # bound must be dramatically below the unconditional 1/(2N)
    bound = kernels.correction_tail_bound(10**6, 2, 128)
    assert bound < Fraction(1, 10**11)


def test_digit_sum_class_members_match_scan():
    for b, k, J in [(3, 1, 8), (3, 5, 8), (10, 3, 4), (2, 4, 10), (5, 7, 5)]:
        members = list(kernels.digit_sum_class_members(b, k, J))
        scan = [n for n in range(1, b**J) if digit_sum(n, b) == k]
        assert members == scan


def test_digit_sum_class_sum_certifies():
    lo, hi, count = kernels.digit_sum_class_sum(3, 2, 6, precision=96)
    members = enumerate_class(ClassQuery(DigitSum(3), 2, 3**6 - 1))
    truth = sum((Fraction(1, n) for n in members), Fraction(0))
    assert count == len(members)
    assert lo <= truth <= hi
    assert hi - lo < Fraction(1, 1 << 80)


def test_scale_bits():
    assert kernels.scale_bits_for(128) == 168
    with pytest.raises(ValueError):
        kernels.correction_buckets_base2(0)
