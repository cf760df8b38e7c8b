"""Signed logarithmic expressions attached to binary words.

For every nonempty binary word ``w`` there is a rational function whose
logarithm, summed over any single class ``{n >= 1 : count_occurrences(w, n)
= k}``, equals ``-log 2``.  This module builds that logarithm symbolically,
as a signed multiset of terms ``±log(2^l * n + c)``, by a four-case
recursion on a pair of auxiliary words:

* ``(z, t)`` with ``z`` empty yields the base pair
  ``log(2^|t| n + v(t)) - log(2^|t| n + v(t) + 1)`` where ``v(t)`` is the
  value of ``t`` read in binary;
* if ``z`` is a one-letter suffix of ``w``, split into the base pair minus
  the expression for the complemented letter prepended to ``t``;
* if ``z`` is a longer suffix of ``w``, recurse on ``z`` minus its first
  letter, and subtract the expression for ``z`` with its first letter
  complemented and its last letter moved onto ``t``;
* otherwise move the last letter of ``z`` onto ``t``.

The expression for ``w`` itself starts from ``z = w[:-1]``, ``t = w[-1]``.
Flattening to base pairs makes evaluation and coefficient extraction a
linear scan over terms.

Three exact coefficient identities hold for the flattened multiset: the
signs cancel, the scale exponents cancel against the signs, and the signed
sum of ``c / 2^l`` equals ``-2^(-len(w))``.  They encode the asymptotic
behaviour ``log_ratio(n) = -1/(2^len(w) * n) + O(1/n^2)`` and are checked
exhaustively in the tests; the explicit ``O(1/n^2)`` constant is
:meth:`LogExpression.remainder_constant`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Optional

from .enclosure import Enclosure, log_enclosure
from .words import complement_digit, is_suffix, word_value, _check_binary_word

__all__ = [
    "LogExpression",
    "LogTerm",
    "correction_term",
    "log_expression",
    "log_sum_over_class",
]


@dataclass(frozen=True, order=True)
class LogTerm:
    """One factor ``sign * log(2^scale_exp * n + offset)``."""

    scale_exp: int
    offset: int
    sign: int

    def __post_init__(self) -> None:
        if self.sign not in (-1, 1):
            raise ValueError("sign must be +1 or -1")
        if self.scale_exp < 1:
            raise ValueError("scale exponent must be at least 1")
        if not 0 <= self.offset <= (1 << self.scale_exp):
            raise ValueError("offset must lie in [0, 2^scale_exp]")

    def argument(self, n: int) -> int:
        return (n << self.scale_exp) + self.offset

    def render(self) -> str:
        sign = "+" if self.sign > 0 else "-"
        scale = 1 << self.scale_exp
        if self.offset:
            return f"{sign}log({scale}n+{self.offset})"
        return f"{sign}log({scale}n)"


@dataclass(frozen=True)
class LogExpression:
    """Flattened signed multiset of log-affine terms for a binary word."""

    word: str
    terms: tuple[LogTerm, ...]

    # -- exact structure ---------------------------------------------------

    def coefficient_sums(self) -> tuple[int, int, Fraction]:
        """``(sum of signs, sum of sign*scale_exp, sum of sign*offset/2^scale_exp)``,
        all exact.  The flattening is correct iff this equals
        ``(0, 0, -2^(-len(word)))``."""
        s0 = sum(t.sign for t in self.terms)
        s1 = sum(t.sign * t.scale_exp for t in self.terms)
        s2 = sum(Fraction(t.sign * t.offset, 1 << t.scale_exp) for t in self.terms)
        return s0, s1, s2

    def remainder_constant(self) -> Fraction:
        """Exact ``C`` with ``|1/n + 2^len(word) * value(n)| <= C / n^2`` for
        every ``n >= 1``, from ``0 <= x - log(1+x) <= x^2/2`` for ``x >= 0``:
        ``C = 2^(len(word)-1) * sum (offset/2^scale_exp)^2``."""
        r = len(self.word)
        square_sum = sum(Fraction(t.offset, 1 << t.scale_exp) ** 2 for t in self.terms)
        return 2 ** (r - 1) * square_sum

    def series_coefficient(self, i: int) -> Fraction:
        """Signed power sum ``sum sign * (offset/2^scale_exp)^i``; the
        ``1/n``-expansion of ``value(n)`` is
        ``sum_{i>=1} (-1)^(i+1) * series_coefficient(i) / (i * n^i)``."""
        if i < 1:
            raise ValueError("i must be at least 1")
        return sum(t.sign * Fraction(t.offset, 1 << t.scale_exp) ** i for t in self.terms)

    def value_at_zero(self) -> Optional[Fraction]:
        """The enclosed rational function evaluated at ``n = 0``, or ``None``
        when a zero offset makes it degenerate there."""
        num = 1
        den = 1
        for t in self.terms:
            if t.offset == 0:
                return None
            if t.sign > 0:
                num *= t.offset
            else:
                den *= t.offset
        return Fraction(num, den)

    def negated(self) -> "LogExpression":
        flipped = tuple(
            sorted(LogTerm(t.scale_exp, t.offset, -t.sign) for t in self.terms)
        )
        return LogExpression(self.word, flipped)

    # -- evaluation ----------------------------------------------------------

    def evaluate(self, n: int, precision: int = 128) -> Enclosure:
        """Certified enclosure of ``sum sign * log(2^scale_exp * n + offset)``."""
        if n < 0:
            raise ValueError("n must be non-negative")
        total = Enclosure.zero(precision)
        for t in self.terms:
            arg = t.argument(n)
            if arg <= 0:
                raise ValueError(f"log of non-positive argument at n={n}: {t.render()}")
            piece = log_enclosure(arg, precision)
            total = total + (piece if t.sign > 0 else -piece)
        return total

    # -- rendering -------------------------------------------------------------

    def canonical_text(self) -> str:
        """Factors sorted by (scale exponent, offset, sign), e.g.
        ``+log(2n+1) -log(2n+2) -log(4n+1) +log(4n+2)``."""
        return " ".join(t.render() for t in self.terms)

    def rational_function_text(self) -> str:
        """The enclosed rational function in factored form."""

        def factor(t: LogTerm) -> str:
            scale = 1 << t.scale_exp
            return f"({scale}n+{t.offset})" if t.offset else f"({scale}n)"

        num = "".join(factor(t) for t in self.terms if t.sign > 0)
        den = "".join(factor(t) for t in self.terms if t.sign < 0)
        return f"{num or '1'} / ({den or '1'})"


def _build(w: str, z: str, t: str, sign: int, out: list[LogTerm]) -> None:
    if not z:
        ell = len(t)
        c = word_value(t)
        out.append(LogTerm(ell, c, sign))
        out.append(LogTerm(ell, c + 1, -sign))
    elif is_suffix(z, w):
        if len(z) == 1:
            _build(w, "", t, sign, out)
            _build(w, "", complement_digit(z[0]) + t, -sign, out)
        else:
            _build(w, z[1:], t, sign, out)
            _build(w, complement_digit(z[0]) + z[1:-1], z[-1] + t, -sign, out)
    else:
        _build(w, z[:-1], z[-1] + t, sign, out)


@lru_cache(maxsize=1024)
def log_expression(w: str) -> LogExpression:
    """Flattened expression for the word ``w`` (see module docstring)."""
    _check_binary_word(w)
    out: list[LogTerm] = []
    _build(w, w[:-1], w[-1], 1, out)
    return LogExpression(w, tuple(sorted(out)))


def correction_term(expr: LogExpression, n: int, precision: int = 128) -> Enclosure:
    """Enclosure of ``1/n + 2^len(word) * expr.evaluate(n)``, the summand of
    the accelerated series; decays like ``1/n^2``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    scale = 1 << len(expr.word)
    return expr.evaluate(n, precision) * scale + Fraction(1, n)


def _power_class_members(k: int, max_exponent: int) -> list[int]:
    """Members of the one-letter-word class with ``k`` set bits and all bits
    at positions <= max_exponent, ascending."""
    members = []
    for positions in combinations(range(max_exponent + 1), k):
        n = 0
        for p in positions:
            n |= 1 << p
        members.append(n)
    members.sort()
    return members


def log_sum_over_class(
    w: str, k: int, N: int, precision: int = 128, workers: int = 1
) -> Enclosure:
    """Enclosure of the partial sum ``sum_{n <= N, count(w, n) = k}`` of the
    word's log expression.  No tail bound is added: this is evidence for the
    class-sum identity (the full sum equals ``-log 2``), not a certified
    value of it.

    For ``w = "1"`` the class members are the integers with ``k`` set bits,
    so they are enumerated from bit positions directly and ``N`` may be
    astronomically large.  For other words the range is scanned with the
    bulk summation kernel, which keeps ``N`` at desk scale.
    """
    _check_binary_word(w)
    if k < 0:
        raise ValueError("k must be non-negative")
    if N < 1:
        raise ValueError("N must be at least 1")
    expr = log_expression(w)
    if w == "1":
        if k == 0:
            return Enclosure.zero(precision)
        bits = N.bit_length()
        if math.comb(bits, min(k, bits)) > 2_000_000:
            raise ValueError(
                f"class of {k}-bit integers below 2^{bits} is too large to "
                f"enumerate; lower N or k"
            )
        total = Enclosure.zero(precision)
        for n in _power_class_members(k, bits - 1):
            if n <= N:
                total = total + expr.evaluate(n, precision)
        return total
    from . import kernels

    buckets = kernels.block_buckets(expr, N, precision=precision, workers=workers)
    correction_lo, correction_hi = buckets.correction_bounds(k)
    harmonic_lo, harmonic_hi = buckets.harmonic_bounds(k)
    # sum of logs = 2^-r * (sum of corrections - sum of reciprocals)
    r = len(w)
    lo = Fraction(correction_lo - harmonic_hi, 1 << r)
    hi = Fraction(correction_hi - harmonic_lo, 1 << r)
    return Enclosure.from_bounds(lo, hi, precision)
