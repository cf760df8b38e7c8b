"""Certified evaluation of digit-restricted harmonic sums.

Three algorithms cover the three statistic families, all returning a
:class:`SeriesResult` whose enclosure provably contains the full (infinite)
class sum:

* ``telescoped_sum_base2`` -- binary digit sums.  The telescoping of the
  even/odd split turns the class sum into ``2`` minus twice an absolutely
  convergent correction series over the *union* of classes below ``k``,
  whose tail is controlled by an explicit counting bound.
* ``direct_sum_base_b`` -- digit sums in any base.  Class members below
  ``b^J`` are enumerated from digit compositions and summed directly; the
  tail over longer numbers is bounded by solution counts times the largest
  reciprocal per length block.
* ``accelerated_block_sum`` -- block-count statistics in base 2.  Direct
  class sums converge far too slowly here, so the sum is re-expressed
  through the word's log-ratio expression: the full-class log sum is
  exactly ``-log 2``, and what remains is a series of ``O(1/n^2)``
  correction terms with the explicit remainder constant of the expression.

Every summation accumulates in exact scaled integers (see ``kernels``), so
parallel evaluation is bit-identical to sequential evaluation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from . import kernels
from .enclosure import Enclosure, log2_enclosure, log_enclosure
from .exact import tail_bound_sum
from .logratio import log_expression
from .words import BlockCount, DigitSum, Statistic

__all__ = [
    "SeriesResult",
    "accelerated_block_sum",
    "convergence_table",
    "direct_sum_base_b",
    "limit_value",
    "telescoped_sum_base2",
]


@dataclass(frozen=True)
class SeriesResult:
    """One certified row of a convergence report.

    ``value`` already includes the tail interval; ``tail_bound`` records the
    exact rational magnitude that was folded in.  ``gap`` is the outward
    difference ``value - limit``.
    """

    spec: Statistic
    k: int
    N: int
    value: Enclosure
    tail_bound: Fraction
    limit: Enclosure
    gap: Enclosure


def limit_value(spec: Statistic, precision: int = 128) -> Enclosure:
    """Enclosure of the large-``k`` limit of the class sums: ``2 log b /
    (b - 1)`` for digit sums in base ``b`` and ``2^len(w) log 2`` for block
    counts."""
    if isinstance(spec, DigitSum):
        return log_enclosure(spec.base, precision) * Fraction(2, spec.base - 1)
    if isinstance(spec, BlockCount):
        return log2_enclosure(precision) * (1 << len(spec.word))
    raise TypeError(f"not a statistic: {spec!r}")


def telescoped_sum_base2(
    k: int, N: int = 10**6, precision: int = 128, workers: int = 1
) -> SeriesResult:
    """Certified enclosure of ``sum{1/n : digit_sum(n, 2) = k}``.

    Uses the telescoped identity: the class sum equals ``2`` (the ``k = 1``
    value, a geometric series) minus ``2 * sum(1/(2n) - 1/(2n+1))`` over all
    ``n >= 1`` with ``1 <= digit_sum(n, 2) <= k - 1``.  The summation set is
    dense, so a partial sum to ``N`` plus the counting tail bound gives a
    tight enclosure; for ``k = 1`` the correction is empty and the result is
    exactly 2.
    """
    if k < 1:
        raise ValueError("k must be at least 1 (the k = 0 class is empty)")
    if N < 1:
        raise ValueError("N must be at least 1")
    buckets = kernels.correction_buckets_base2(N, precision, workers)
    corr_lo, corr_hi = buckets.prefix_bounds(k - 1)
    tail = kernels.correction_tail_bound(N, k, precision)
    value = Enclosure.from_bounds(2 - 2 * corr_hi - tail, 2 - 2 * corr_lo, precision)
    limit = limit_value(DigitSum(2), precision)
    return SeriesResult(DigitSum(2), k, N, value, tail, limit, value - limit)


def _power_exponent(b: int, m: int) -> int:
    """The ``J`` with ``b^J == m``, or a ValueError."""
    J = 0
    while m % b == 0:
        m //= b
        J += 1
    if m != 1 or J < 1:
        raise ValueError("N must have the form b^J - 1")
    return J


def direct_sum_base_b(b: int, k: int, N: int, precision: int = 128) -> SeriesResult:
    """Certified enclosure of ``sum{1/n : digit_sum(n, b) = k}`` from the
    members below ``b^J`` (``N`` must equal ``b^J - 1``, aligning the tail
    with digit-length blocks) plus the counting tail bound, which requires
    ``J > k/(b-1) + 1``."""
    if b < 2:
        raise ValueError("base must be at least 2")
    if k < 1:
        raise ValueError("k must be at least 1 (the k = 0 class is empty)")
    J = _power_exponent(b, N + 1)
    tail = tail_bound_sum(b, k, J)
    lo, hi, _count = kernels.digit_sum_class_sum(b, k, J, precision)
    value = Enclosure.from_bounds(lo, hi + tail, precision)
    limit = limit_value(DigitSum(b), precision)
    return SeriesResult(DigitSum(b), k, N, value, tail, limit, value - limit)


def accelerated_block_sum(
    word: str, k: int, N: int, precision: int = 128, workers: int = 1
) -> SeriesResult:
    """Certified enclosure of ``sum{1/n : count_occurrences(word, n) = k}``.

    The reciprocal of each class member is written as ``correction - scale *
    log_ratio`` with ``scale = 2^len(word)``; the full-class log sum is
    ``-log 2`` exactly, and the corrections decay like ``C/n^2``, so::

        class_sum = scale * log 2 + sum_{n <= N, class} correction(n)
                    + (tail in [-C/N, C/N])

    For ``k = 0`` this rests on the enclosed rational function being 1 at
    ``n = 0`` (so that the degenerate ``n = 0`` term contributes nothing);
    words without that property are rejected for ``k = 0``.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    if N < 1:
        raise ValueError("N must be at least 1")
    expr = log_expression(word)
    if k == 0 and expr.value_at_zero() != 1:
        raise ValueError(
            f"k = 0 unsupported for word {word!r}: the class-sum identity over "
            f"n >= 1 needs the rational function to equal 1 at n = 0 "
            f"(it is {expr.value_at_zero()})"
        )
    scale = 1 << len(word)
    buckets = kernels.block_buckets(expr, N, precision, workers)
    corr_lo, corr_hi = buckets.correction_bounds(k)
    tail = Fraction(expr.remainder_constant(), N)
    limit = log2_enclosure(precision) * scale
    value = limit.pad_interval(corr_lo - tail, corr_hi + tail)
    return SeriesResult(BlockCount(word), k, N, value, tail, limit, value - limit)


def convergence_table(
    spec: Statistic,
    ks: Iterable[int],
    N: int = 10**6,
    precision: int = 128,
    workers: int = 1,
) -> list[SeriesResult]:
    """One :class:`SeriesResult` per ``k``, ascending.  The heavy bucketed
    summations are shared across all rows of a table.

    For digit sums in bases other than 2, ``N`` is rounded down to the
    largest ``b^J - 1`` not exceeding it (the direct algorithm needs
    length-aligned ranges).
    """
    ks = sorted(set(ks))
    if isinstance(spec, DigitSum) and spec.base != 2:
        b = spec.base
        J = 1
        while b ** (J + 1) - 1 <= N:
            J += 1
        N = b**J - 1
    rows = []
    for k in ks:
        if isinstance(spec, DigitSum):
            if spec.base == 2:
                rows.append(telescoped_sum_base2(k, N, precision, workers))
            else:
                rows.append(direct_sum_base_b(spec.base, k, N, precision))
        elif isinstance(spec, BlockCount):
            rows.append(accelerated_block_sum(spec.word, k, N, precision, workers))
        else:
            raise TypeError(f"not a statistic: {spec!r}")
    return rows
