"""Bulk certified summation kernels.

Summing tens of millions of certified terms with MPFR intervals would cost
minutes per run, so the hot loops here work in *scaled integer* arithmetic:
a real quantity ``x`` is carried as a pair of integers ``lo <= x * 2^s <=
hi``.  Floor and ceiling divisions give one-sided bounds, integer addition
is exact and associative, and the final conversion back to an enclosure
rounds outward once.  Because every partial result is an integer, splitting
a summation range across worker processes cannot change the total: parallel
runs are bit-identical to sequential ones by construction.

Reciprocal sums use one ``divmod`` per term.  The block-count correction
terms ``1/n + 2^r * log_ratio(n)`` are evaluated through their ``1/n``
power series (the first-order coefficient cancels exactly, which is the
whole point of the acceleration): truncated after a few terms with an
explicit remainder envelope, the series needs only integer multiplications
per summand.  Small ``n``, where the series converges slowly, are handled
with directed MPFR logarithms instead; the crossover is ``_SERIES_MIN_N``.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .logratio import LogExpression, log_expression
from .words import pattern_counter

__all__ = [
    "BlockBuckets",
    "CorrectionBuckets",
    "block_buckets",
    "correction_buckets_base2",
    "correction_tail_bound",
    "count_binary_digit_sum_at_most",
    "digit_sum_class_sum",
    "scale_bits_for",
]

_BUCKETS = 64  # statistic values handled per pass; ample for desk-scale N
_SERIES_MIN_N = 4096  # below: MPFR logs; above: integer power series
_SERIES_ORDER = 4  # highest 1/n power kept in the series


def scale_bits_for(precision: int) -> int:
    """Working scale: enough bits that tens of millions of one-ulp term
    errors stay far below the requested output precision."""
    return precision + 40


def _split_ranges(lo: int, hi: int, workers: int) -> list[tuple[int, int]]:
    span = hi - lo
    if span <= 0:
        return []
    parts = max(1, min(workers, span))
    step = span // parts
    bounds = [lo + i * step for i in range(parts)] + [hi]
    return [(bounds[i], bounds[i + 1]) for i in range(parts)]


def _run_partitioned(worker, args_list, workers: int):
    if len(args_list) <= 1 or workers <= 1:
        return [worker(args) for args in args_list]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(worker, args_list))


# ---------------------------------------------------------------------------
# base-2 telescoped correction: per-digit-sum buckets of 1/(2n(2n+1))
# ---------------------------------------------------------------------------


def _correction_range_base2(args: tuple[int, int, int]) -> tuple[list[int], list[int]]:
    n_lo, n_hi, s = args
    S = 1 << s
    sums = [0] * _BUCKETS
    inexact = [0] * _BUCKETS
    for n in range(n_lo, n_hi):
        q, r = divmod(S, 2 * n * (2 * n + 1))
        k = n.bit_count()
        sums[k] += q
        if r:
            inexact[k] += 1
    return sums, inexact


@dataclass(frozen=True)
class CorrectionBuckets:
    """Scaled sums of ``1/(2n(2n+1))`` over ``n <= N`` bucketed by the
    binary digit sum of ``n``."""

    N: int
    scale_bits: int
    sums: tuple[int, ...]
    inexact: tuple[int, ...]

    def prefix_bounds(self, k_upper: int) -> tuple[Fraction, Fraction]:
        """Exact bounds for the sum over ``1 <= digit_sum(n) <= k_upper``."""
        top = min(k_upper + 1, _BUCKETS)
        lo = sum(self.sums[1:top])
        hi = lo + sum(self.inexact[1:top])
        S = 1 << self.scale_bits
        return Fraction(lo, S), Fraction(hi, S)


_correction_cache: dict[tuple[int, int], CorrectionBuckets] = {}


def correction_buckets_base2(N: int, precision: int = 128, workers: int = 1) -> CorrectionBuckets:
    """Bucketed scaled sums for the telescoped base-2 series, cached per
    ``(N, scale)``.  Worker count never changes the result, only the wall
    time: integer partial sums combine exactly."""
    if N < 1:
        raise ValueError("N must be at least 1")
    if N.bit_length() >= _BUCKETS:
        raise ValueError("range too large for the per-class buckets")
    s = scale_bits_for(precision)
    key = (N, s)
    cached = _correction_cache.get(key)
    if cached is not None:
        return cached
    args = [(lo, hi, s) for lo, hi in _split_ranges(1, N + 1, workers)]
    sums = [0] * _BUCKETS
    inexact = [0] * _BUCKETS
    for part_sums, part_inexact in _run_partitioned(_correction_range_base2, args, workers):
        for i in range(_BUCKETS):
            sums[i] += part_sums[i]
            inexact[i] += part_inexact[i]
    result = CorrectionBuckets(N, s, tuple(sums), tuple(inexact))
    _correction_cache[key] = result
    return result


# ---------------------------------------------------------------------------
# counting tail for the telescoped base-2 series
# ---------------------------------------------------------------------------


def _cumulative_binomials(max_n: int, max_r: int) -> list[list[int]]:
    """``table[n][r] = sum_{i<=r} C(n, i)`` for ``0 <= n <= max_n``."""
    table = []
    row_binom = [1]  # C(n, i)
    for n in range(max_n + 1):
        acc = 0
        cum = []
        for r in range(max_r + 1):
            acc += row_binom[r] if r < len(row_binom) else 0
            cum.append(acc)
        table.append(cum)
        row_binom = [1] + [row_binom[i] + row_binom[i + 1] for i in range(len(row_binom) - 1)] + [1]
    return table


def count_binary_digit_sum_at_most(X: int, K: int, _table=None) -> int:
    """``#{0 <= n < X : digit_sum(n, 2) <= K}`` by walking the bits of X."""
    if X <= 0 or K < 0:
        return 0
    count = 0
    ones = 0
    for pos in range(X.bit_length() - 1, -1, -1):
        if (X >> pos) & 1:
            rem = K - ones
            if rem >= 0:
                if _table is not None:
                    count += _table[pos][min(rem, pos)]
                else:
                    count += sum(math.comb(pos, i) for i in range(min(rem, pos) + 1))
            ones += 1
            if ones > K:
                break
    return count


def correction_tail_bound(N: int, k: int, precision: int = 128) -> Fraction:
    """Upper bound for ``2 * sum over {n > N, 1 <= digit_sum(n,2) <= k-1}``
    of ``1/(2n) - 1/(2n+1)``: the tail of the telescoped series.

    The class gets sparse as soon as ``k - 1`` falls below half the bit
    length, so a counting bound beats the unconditional ``1/(2N)``: the tail
    is covered with geometrically growing sub-blocks, each contributing
    (exact member count) * (largest term).  The unconditional bound is kept
    as a cap for the dense regime.
    """
    if N < 1:
        raise ValueError("N must be at least 1")
    if k <= 1:
        return Fraction(0)  # the class {digit_sum <= k-1, n >= 1} is empty
    K = k - 1
    unconditional = Fraction(1, 2 * N)
    stop_bit = N.bit_length() + precision + 40
    table = _cumulative_binomials(stop_bit + 2, K)
    sc_bits = precision + 96
    SC = 1 << sc_bits
    acc = 0
    A = N + 1
    while True:
        j = A.bit_length() - 1
        if j > stop_bit:
            break
        # the whole remaining tail is below 2^-j; stop once that is under
        # 2^-30 of what has accumulated already
        if acc and acc << j > SC << 30:
            break
        step = 1 << max(0, j - 3)
        B = min(1 << (j + 1), (A // step + 1) * step)
        cnt = count_binary_digit_sum_at_most(B, K, table) - count_binary_digit_sum_at_most(A, K, table)
        if cnt:
            d = A * (2 * A + 1)  # largest term in [A, B) is 1/(A(2A+1))
            acc += (cnt * SC + d - 1) // d
        A = B
    # sum_{n >= A} 1/(n(2n+1)) < 1/(2(A-1)) <= 2^-j for A > 2^j
    remainder = Fraction(1, 1 << (A.bit_length() - 1))
    return min(Fraction(acc, SC) + remainder, unconditional)


# ---------------------------------------------------------------------------
# block-count buckets: reciprocals and series-accelerated correction terms
# ---------------------------------------------------------------------------


def _series_data(expr: LogExpression, order: int, min_n: int, s: int):
    """Scaled integer coefficients for the 1/n series of the correction term
    ``1/n + 2^r * log_ratio(n)`` and its truncation-remainder envelope."""
    r = len(expr.word)
    a_lo = []
    a_hi = []
    S = 1 << s
    for i in range(2, order + 1):
        alpha = Fraction((-1) ** (i + 1) * (1 << r), i) * expr.series_coefficient(i)
        num, den = alpha.numerator, alpha.denominator
        a_lo.append((num << s) // den)
        a_hi.append(-((-num << s) // den))
    # |remainder| <= 2^r * sum q_j^(order+1) / ((order+1)(1 - 1/min_n)) / n^(order+1)
    envelope = (1 << r) * sum(
        Fraction(t.offset, 1 << t.scale_exp) ** (order + 1) for t in expr.terms
    )
    envelope = envelope * Fraction(min_n, (order + 1) * (min_n - 1))
    rhat = -((-envelope.numerator << s) // envelope.denominator)
    return tuple(a_lo), tuple(a_hi), rhat


def _block_range(args) -> tuple[list[int], list[int], list[int], list[int], list[int]]:
    word, n_lo, n_hi, s, order, min_n = args
    expr = log_expression(word)
    a_lo, a_hi, rhat = _series_data(expr, order, min_n, s)
    counter = pattern_counter(word)
    S = 1 << s
    corr_lo = [0] * _BUCKETS
    corr_hi = [0] * _BUCKETS
    h_lo = [0] * _BUCKETS
    h_inexact = [0] * _BUCKETS
    counts = [0] * _BUCKETS
    coeff = list(zip(a_lo, a_hi))
    for n in range(n_lo, n_hi):
        k = counter(n)
        u, rem = divmod(S, n)
        h_lo[k] += u
        if rem:
            h_inexact[k] += 1
            v = u + 1
        else:
            v = u
        counts[k] += 1
        # one-sided bounds for S / n^i, i = 2 .. order+1
        plo = u
        phi = v
        lo_acc = 0
        hi_acc = 0
        for al, ah in coeff:
            plo = (plo * u) >> s
            phi = -((-(phi * v)) >> s)
            lo_acc += al * (phi if al < 0 else plo)
            hi_acc += ah * (plo if ah < 0 else phi)
        # remainder envelope needs S / n^(order+1)
        phi = -((-(phi * v)) >> s)
        slack = rhat * phi
        corr_lo[k] += lo_acc - slack
        corr_hi[k] += hi_acc + slack
    return corr_lo, corr_hi, h_lo, h_inexact, counts


def _small_block_part(expr: LogExpression, n_lo: int, n_hi: int, s: int):
    """Exact-log version of :func:`_block_range` for small ``n``. The
    correction values are converted to the same ``2^(2s)`` scale, so the
    two regimes merge by plain integer addition."""
    counter = pattern_counter(expr.word)
    prec = 2 * s + 32
    S = 1 << s
    two_s = 2 * s
    r = len(expr.word)
    corr_lo = [0] * _BUCKETS
    corr_hi = [0] * _BUCKETS
    h_lo = [0] * _BUCKETS
    h_inexact = [0] * _BUCKETS
    counts = [0] * _BUCKETS
    for n in range(n_lo, n_hi):
        k = counter(n)
        u, rem = divmod(S, n)
        h_lo[k] += u
        if rem:
            h_inexact[k] += 1
        counts[k] += 1
        value = expr.evaluate(n, prec)
        lo_fr = Fraction(1, n) + (1 << r) * value.lo_fraction()
        hi_fr = Fraction(1, n) + (1 << r) * value.hi_fraction()
        corr_lo[k] += (lo_fr.numerator << two_s) // lo_fr.denominator
        corr_hi[k] += -((-hi_fr.numerator << two_s) // hi_fr.denominator)
    return corr_lo, corr_hi, h_lo, h_inexact, counts


@dataclass(frozen=True)
class BlockBuckets:
    """Per-class scaled sums over ``n <= N`` for a block-count statistic:
    correction terms at scale ``2^(2s)``, reciprocals at scale ``2^s``."""

    word: str
    N: int
    scale_bits: int
    corr_lo: tuple[int, ...]
    corr_hi: tuple[int, ...]
    h_lo: tuple[int, ...]
    h_inexact: tuple[int, ...]
    counts: tuple[int, ...]

    def correction_bounds(self, k: int) -> tuple[Fraction, Fraction]:
        S2 = 1 << (2 * self.scale_bits)
        if k >= _BUCKETS:
            return Fraction(0), Fraction(0)
        return Fraction(self.corr_lo[k], S2), Fraction(self.corr_hi[k], S2)

    def harmonic_bounds(self, k: int) -> tuple[Fraction, Fraction]:
        S = 1 << self.scale_bits
        if k >= _BUCKETS:
            return Fraction(0), Fraction(0)
        return Fraction(self.h_lo[k], S), Fraction(self.h_lo[k] + self.h_inexact[k], S)

    def count(self, k: int) -> int:
        return self.counts[k] if k < _BUCKETS else 0


_block_cache: dict[tuple[str, int, int], BlockBuckets] = {}


def block_buckets(
    expr: LogExpression, N: int, precision: int = 128, workers: int = 1
) -> BlockBuckets:
    """Bucketed scaled sums of reciprocals and correction terms for every
    class of the word's occurrence statistic at once, cached per
    ``(word, N, scale)``."""
    if N < 1:
        raise ValueError("N must be at least 1")
    if N.bit_length() >= _BUCKETS:
        raise ValueError("range too large for the per-class buckets")
    s = scale_bits_for(precision)
    key = (expr.word, N, s)
    cached = _block_cache.get(key)
    if cached is not None:
        return cached
    split = min(_SERIES_MIN_N, N + 1)
    parts = [_small_block_part(expr, 1, split, s)]
    if split <= N:
        args = [
            (expr.word, lo, hi, s, _SERIES_ORDER, _SERIES_MIN_N)
            for lo, hi in _split_ranges(split, N + 1, workers)
        ]
        parts.extend(_run_partitioned(_block_range, args, workers))
    totals = [[0] * _BUCKETS for _ in range(5)]
    for part in parts:
        for row, part_row in zip(totals, part):
            for i in range(_BUCKETS):
                row[i] += part_row[i]
    result = BlockBuckets(
        expr.word, N, s, tuple(totals[0]), tuple(totals[1]), tuple(totals[2]),
        tuple(totals[3]), tuple(totals[4]),
    )
    _block_cache[key] = result
    return result


# ---------------------------------------------------------------------------
# digit-sum class enumeration (members are sparse for small k)
# ---------------------------------------------------------------------------


def _extend_digits(prefix: int, slots: int, rem: int, b: int):
    if slots == 0:
        yield prefix
        return
    cap = (slots - 1) * (b - 1)
    for d in range(max(0, rem - cap), min(b - 1, rem) + 1):
        yield from _extend_digits(prefix * b + d, slots - 1, rem - d, b)


def digit_sum_class_members(b: int, k: int, J: int):
    """Ascending ``n`` in ``[1, b^J - 1]`` with base-``b`` digit sum ``k``,
    generated from digit compositions rather than a range scan: the work is
    proportional to the class size."""
    if b < 2 or J < 1:
        raise ValueError("need b >= 2 and J >= 1")
    if k < 1:
        return
    for length in range(1, J + 1):
        rest = length - 1
        cap = rest * (b - 1)
        for lead in range(1, b):
            rem = k - lead
            if rem < 0:
                break
            if rem > cap:
                continue
            yield from _extend_digits(lead, rest, rem, b)


def digit_sum_class_sum(b: int, k: int, J: int, precision: int = 128) -> tuple[Fraction, Fraction, int]:
    """Certified bounds and member count for ``sum(1/n)`` over the class
    ``{n < b^J : digit_sum(n, b) = k}``."""
    s = scale_bits_for(precision)
    S = 1 << s
    lo = 0
    inexact = 0
    count = 0
    for n in digit_sum_class_members(b, k, J):
        q, r = divmod(S, n)
        lo += q
        if r:
            inexact += 1
        count += 1
    return Fraction(lo, S), Fraction(lo + inexact, S), count
