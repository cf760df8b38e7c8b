"""Exact-rational ground truth for restricted harmonic sums.

Everything in this module is computed with :class:`fractions.Fraction`;
there is no rounding anywhere.  The identity checks return both sides of
the identity so that a failure is immediately diagnosable, and the class
sums here serve as the reference values that the floating enclosure engine
is tested against.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

from .words import BlockCount, DigitSum, Statistic, digit_sum, pattern_counter

__all__ = [
    "ClassQuery",
    "IdentityCheck",
    "bounded_class_sum",
    "class_partition_check",
    "enumerate_class",
    "harmonic",
    "partial_sum_exact",
    "split_identity_check",
    "sum_reciprocals",
    "tail_bound_sum",
    "tail_count_bound",
    "vsum_identity_check",
    "vsum_identity_sweep",
]


@dataclass(frozen=True)
class ClassQuery:
    """The class ``{1 <= n <= N : statistic(n) = k}``."""

    spec: Statistic
    k: int
    N: int

    def __post_init__(self) -> None:
        if self.k < 0:
            raise ValueError("k must be non-negative")
        if self.N < 1:
            raise ValueError("N must be at least 1")


@dataclass(frozen=True)
class IdentityCheck:
    """Outcome of an exact identity check, with both sides retained."""

    ok: bool
    lhs: Fraction
    rhs: Fraction

    def __bool__(self) -> bool:
        return self.ok


def _sum_balanced(terms: Sequence[Fraction]) -> Fraction:
    """Pairwise (tree) summation; far cheaper than a left fold because the
    denominators stay balanced in size."""
    items = list(terms)
    if not items:
        return Fraction(0)
    while len(items) > 1:
        items = [items[i] + items[i + 1] for i in range(0, len(items) - 1, 2)] + (
            [items[-1]] if len(items) % 2 else []
        )
    return items[0]


def sum_reciprocals(values: Iterable[int]) -> Fraction:
    """Exact ``sum(1/n for n in values)``."""
    return _sum_balanced([Fraction(1, n) for n in values])


def harmonic(n: int) -> Fraction:
    """The n-th harmonic number ``1 + 1/2 + ... + 1/n``, exactly."""
    if n < 1:
        raise ValueError("n must be at least 1")
    return _harmonic_range(1, n + 1)


def _harmonic_range(lo: int, hi: int) -> Fraction:
    # sum of 1/m over [lo, hi) by binary splitting
    if hi - lo == 1:
        return Fraction(1, lo)
    mid = (lo + hi) // 2
    return _harmonic_range(lo, mid) + _harmonic_range(mid, hi)


@lru_cache(maxsize=64)
def _bucketed_members(spec: Statistic, N: int) -> tuple[tuple[int, ...], ...]:
    """Class members of every statistic value at once: index ``k`` of the
    result holds the ascending members of ``{1 <= n <= N : stat(n) = k}``."""
    if isinstance(spec, BlockCount):
        counter = pattern_counter(spec.word)
    else:
        b = spec.base
        counter = lambda n: digit_sum(n, b)  # noqa: E731
    buckets: list[list[int]] = []
    for n in range(1, N + 1):
        k = counter(n)
        while len(buckets) <= k:
            buckets.append([])
        buckets[k].append(n)
    return tuple(tuple(b) for b in buckets)


def enumerate_class(query: ClassQuery) -> list[int]:
    """All ``n`` in ``[1, N]`` with statistic value ``k``, ascending.

    For binary digit sums with few set bits it is cheaper to enumerate
    ``k``-subsets of bit positions than to scan; the result is identical to
    the scan (and the tests check that it is).
    """
    spec, k, N = query.spec, query.k, query.N
    if isinstance(spec, DigitSum) and spec.base == 2 and k >= 1:
        bits = N.bit_length()
        if k <= bits and math.comb(bits, k) * max(k, 1) < N:
            members = []
            for positions in combinations(range(bits), k):
                n = 0
                for p in positions:
                    n |= 1 << p
                if 1 <= n <= N:
                    members.append(n)
            members.sort()
            return members
    buckets = _bucketed_members(spec, N)
    if k >= len(buckets):
        return []
    return list(buckets[k])


def partial_sum_exact(query: ClassQuery) -> Fraction:
    """Exact ``sum(1/n)`` over :func:`enumerate_class`."""
    return sum_reciprocals(enumerate_class(query))


def split_identity_check(b: int, k: int, J: int) -> IdentityCheck:
    """Check, exactly, the residue-split identity obtained by partitioning
    ``{1, ..., b^(J+1) - 1}`` into the multiples of ``b`` and the classes
    ``b*n + j``::

        sum_{m <= b^(J+1)-1, s_b(m)=k} 1/m
            = (1/b) * sum_{n <= b^J-1, s_b(n)=k} 1/n
              + sum_{j=1}^{b-1} sum_{0 <= n <= b^J-1, s_b(n)=k-j} 1/(b*n+j)

    using ``s_b(b*n + j) = s_b(n) + j``.  Both sides are returned.
    """
    if b < 2:
        raise ValueError("base must be at least 2")
    if k < 1:
        raise ValueError("k must be at least 1")
    if J < 1:
        raise ValueError("J must be at least 1")
    spec = DigitSum(b)
    lhs = partial_sum_exact(ClassQuery(spec, k, b ** (J + 1) - 1))
    top = b**J - 1
    rhs = Fraction(1, b) * partial_sum_exact(ClassQuery(spec, k, top))
    for j in range(1, b):
        kk = k - j
        if kk < 0:
            continue
        members = [0] if kk == 0 else enumerate_class(ClassQuery(spec, kk, top))
        if kk == 0:
            # n = 0 is the only member with digit sum 0
            terms = [Fraction(1, j)]
        else:
            terms = [Fraction(1, b * n + j) for n in members]
        rhs += _sum_balanced(terms)
    return IdentityCheck(lhs == rhs, lhs, rhs)


def _v_term(b: int, n: int) -> Fraction:
    return _sum_balanced([Fraction(1, b * n + j) for j in range(b)]) - Fraction(1, n)


def vsum_identity_check(b: int, N: int) -> IdentityCheck:
    """Check ``sum_{n<=N} v_n == H_{bN+b-1} - H_{b-1} - H_N`` exactly, where
    ``v_n = sum_{0<=j<b} 1/(bn+j) - 1/n``."""
    if b < 2:
        raise ValueError("base must be at least 2")
    if N < 1:
        raise ValueError("N must be at least 1")
    lhs = _sum_balanced([_v_term(b, n) for n in range(1, N + 1)])
    rhs = harmonic(b * N + b - 1) - harmonic(b - 1) - harmonic(N)
    return IdentityCheck(lhs == rhs, lhs, rhs)


def vsum_identity_sweep(b: int, N_max: int) -> bool:
    """Check the ``vsum`` identity for every ``N`` up to ``N_max`` in one
    incremental pass (both sides grow term by term)."""
    if b < 2:
        raise ValueError("base must be at least 2")
    lhs = Fraction(0)
    h_small = harmonic(b - 1) if b > 1 else Fraction(0)
    h_big = h_small  # H_{b-1}, will be extended to H_{bN+b-1}
    h_n = Fraction(0)
    for n in range(1, N_max + 1):
        lhs += _v_term(b, n)
        for m in range(b * (n - 1) + b, b * n + b):
            h_big += Fraction(1, m)
        h_n += Fraction(1, n)
        if lhs != h_big - h_small - h_n:
            return False
    return True


def class_partition_check(b: int, J: int) -> IdentityCheck:
    """The classes of the digit-sum statistic partition ``[1, b^J - 1]``; so
    the per-class sums must add up to the harmonic number, exactly."""
    if b < 2 or J < 1:
        raise ValueError("need b >= 2 and J >= 1")
    N = b**J - 1
    buckets = _bucketed_members(DigitSum(b), N)
    lhs = _sum_balanced([sum_reciprocals(members) for members in buckets if members])
    rhs = harmonic(N)
    return IdentityCheck(lhs == rhs, lhs, rhs)


def tail_count_bound(b: int, k: int, j: int) -> Fraction:
    """``C(j+k-1, k) / b^(j-1)``: the number of non-negative integer vectors
    with ``j`` coordinates summing to ``k``, times the largest reciprocal in
    the block ``b^(j-1) <= n < b^j``.  An upper bound for the block's class
    sum."""
    if b < 2 or k < 0 or j < 1:
        raise ValueError("need b >= 2, k >= 0, j >= 1")
    return Fraction(math.comb(j + k - 1, k), b ** (j - 1))


def tail_bound_sum(b: int, k: int, J: int, explicit_terms: int = 48) -> Fraction:
    """Upper bound for the whole tail ``sum_{j>J}`` of :func:`tail_count_bound`.

    The term ratio is ``((j+k)/j)/b``, which is decreasing in ``j``; after
    summing ``explicit_terms`` leading terms exactly, the remainder is capped
    by a geometric series at the current ratio.  Rejects ``J`` too small for
    the ratio at ``j = J+1`` to be below 1.
    """
    if not J > Fraction(k, b - 1) + 1:
        raise ValueError(
            f"J={J} too small for a convergent tail bound with b={b}, k={k}; "
            f"need J > k/(b-1) + 1"
        )
    total = Fraction(0)
    j = J + 1
    for _ in range(explicit_terms):
        total += tail_count_bound(b, k, j)
        j += 1
    rho = Fraction(j + k, j) / b
    assert rho < 1
    total += tail_count_bound(b, k, j) / (1 - rho)
    return total


def bounded_class_sum(b: int, k: int, J: int) -> tuple[Fraction, Fraction]:
    """Exact-rational enclosure ``[partial, partial + tail]`` of the full
    class sum ``sum{1/n : s_b(n) = k}``, from the exact partial sum up to
    ``b^J - 1`` plus the counting tail bound."""
    partial = partial_sum_exact(ClassQuery(DigitSum(b), k, b**J - 1))
    return partial, partial + tail_bound_sum(b, k, J)
