"""Digit words and digit statistics.

Two families of statistics drive everything else in this package:

* ``digit_sum(n, b)`` -- the sum of the base-``b`` digits of ``n``;
* ``count_occurrences(w, n)`` -- the number of possibly overlapping
  occurrences of a binary word ``w`` in the binary expansion of ``n``.

Words are plain strings over ``"01"`` (most significant digit first).  For a
word that starts with ``0`` and contains a ``1``, the expansion of ``n`` is
padded on the left with ``len(w) - 1`` zeros before matching; because the
word contains a ``1``, this is equivalent to padding with infinitely many
zeros.  For an all-zero word the canonical expansion (leading digit ``1``)
is used unpadded.  Both conventions follow the classical definition of
block-counting sequences.

``n = 0`` has the empty expansion here, so every statistic of 0 is 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Union

__all__ = [
    "BlockCount",
    "DigitSum",
    "Statistic",
    "complement_digit",
    "count_occurrences",
    "digit_sum",
    "is_suffix",
    "parse_statistic",
    "pattern_counter",
    "render_statistic",
    "statistic_value",
    "word_value",
]


def _check_binary_word(w: str) -> str:
    if not isinstance(w, str) or not w:
        raise ValueError("word must be a nonempty string of 0s and 1s")
    if any(ch not in "01" for ch in w):
        raise ValueError(f"word must contain only 0 and 1, got {w!r}")
    return w


def word_value(t: str) -> int:
    """Integer value of the binary word ``t`` (leading zeros allowed)."""
    _check_binary_word(t)
    return int(t, 2)


def complement_digit(d: str) -> str:
    """Swap the binary digits: ``"0" <-> "1"``."""
    if d == "0":
        return "1"
    if d == "1":
        return "0"
    raise ValueError(f"not a binary digit: {d!r}")


def is_suffix(z: str, w: str) -> bool:
    """True iff ``z`` equals the trailing ``len(z)`` symbols of ``w``."""
    return w.endswith(z)


def digit_sum(n: int, b: int) -> int:
    """Sum of the base-``b`` digits of ``n``; satisfies
    ``digit_sum(b*n + j, b) == digit_sum(n, b) + j`` for ``0 <= j < b``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if b < 2:
        raise ValueError("base must be at least 2")
    if b == 2:
        return n.bit_count()
    s = 0
    while n:
        n, r = divmod(n, b)
        s += r
    return s


def count_occurrences(w: str, n: int) -> int:
    """Number of (possibly overlapping) occurrences of ``w`` in the binary
    expansion of ``n``, with the padding conventions of the module docstring.
    """
    _check_binary_word(w)
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return 0
    bits = format(n, "b")
    if w[0] == "0" and "1" in w:
        bits = "0" * (len(w) - 1) + bits
    width = len(w)
    return sum(1 for i in range(len(bits) - width + 1) if bits[i : i + width] == w)


def pattern_counter(w: str) -> Callable[[int], int]:
    """Compile ``w`` into a fast bit-parallel occurrence counter.

    The returned callable agrees with ``count_occurrences(w, n)`` for every
    ``n >= 0`` but runs in O(len(w)) word operations, which matters inside
    summation loops over tens of millions of integers.
    """
    _check_binary_word(w)
    r = len(w)
    if "1" not in w:
        # all-zero word: windows must sit strictly below the leading 1 bit
        def count_zero_runs(n: int) -> int:
            if n < 0:
                raise ValueError("n must be non-negative")
            span = n.bit_length() - r
            if span <= 0:
                return 0
            m = (1 << span) - 1
            for t in range(r):
                m &= ~(n >> t)
            return m.bit_count()

        return count_zero_runs

    # Bit t of the mask witnesses an occurrence whose lowest digit sits at
    # bit t of n.  Zeros of w above the leading 1 bit of n are matched by the
    # implicit zero padding, which Python's unbounded integers provide.
    ones = [t for t in range(r) if w[r - 1 - t] == "1"]
    zeros = [t for t in range(r) if w[r - 1 - t] == "0"]

    if w == "1":
        def count_single(n: int) -> int:
            if n < 0:
                raise ValueError("n must be non-negative")
            return n.bit_count()

        return count_single

    if w == "11":
        def count_pair(n: int) -> int:
            if n < 0:
                raise ValueError("n must be non-negative")
            return (n & (n >> 1)).bit_count()

        return count_pair

    def count(n: int) -> int:
        if n < 0:
            raise ValueError("n must be non-negative")
        m = n >> ones[0]
        for t in ones[1:]:
            m &= n >> t
        for t in zeros:
            m &= ~(n >> t)
        return m.bit_count()

    return count


@dataclass(frozen=True)
class DigitSum:
    """Restrict by the sum of base-``base`` digits."""

    base: int

    def __post_init__(self) -> None:
        if self.base < 2:
            raise ValueError("base must be at least 2")


@dataclass(frozen=True)
class BlockCount:
    """Restrict by the number of occurrences of a binary word."""

    word: str

    def __post_init__(self) -> None:
        _check_binary_word(self.word)


Statistic = Union[DigitSum, BlockCount]


def statistic_value(spec: Statistic, n: int) -> int:
    """Evaluate the statistic described by ``spec`` at ``n``."""
    if isinstance(spec, DigitSum):
        return digit_sum(n, spec.base)
    if isinstance(spec, BlockCount):
        return count_occurrences(spec.word, n)
    raise TypeError(f"not a statistic: {spec!r}")


def parse_statistic(text: str) -> Statistic:
    """Parse ``s2``, ``sb:<base>`` or ``word:<w>`` into a statistic.

    ``s2`` is shorthand for ``sb:2`` (digit sums in base 2) and is distinct
    from ``word:1``, which counts occurrences of the one-letter word ``1``;
    the two describe the same classes through different machinery.
    """
    if text == "s2":
        return DigitSum(2)
    kind, sep, arg = text.partition(":")
    if sep == ":":
        if kind == "sb":
            try:
                base = int(arg)
            except ValueError:
                raise ValueError(f"bad base in statistic {text!r}") from None
            return DigitSum(base)
        if kind == "word":
            return BlockCount(arg)
    raise ValueError(f"unknown statistic {text!r}; expected s2, sb:<b> or word:<w>")


def render_statistic(spec: Statistic) -> str:
    """Canonical string form, the inverse of :func:`parse_statistic`."""
    if isinstance(spec, DigitSum):
        return f"sb:{spec.base}"
    if isinstance(spec, BlockCount):
        return f"word:{spec.word}"
    raise TypeError(f"not a statistic: {spec!r}")
