"""Certified interval arithmetic on arbitrary-precision floats.

An :class:`Enclosure` is a pair ``lo <= hi`` of MPFR floats at a stated
binary precision, guaranteed to contain the exact real value it stands for.
Every operation rounds the lower endpoint toward minus infinity and the
upper endpoint toward plus infinity, so containment is preserved through
arbitrary compositions.  Where one operand is an exact ``int`` or
``Fraction``, the computation is carried out exactly in rational arithmetic
and rounded outward exactly once.

MPFR's elementary functions are correctly rounded, which makes the directed
logarithms below genuine bounds rather than heuristics.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

import gmpy2

__all__ = [
    "Enclosure",
    "decimal_digits",
    "decimal_string",
    "log2_enclosure",
    "log_enclosure",
]

Scalar = Union[int, Fraction]
DEFAULT_PRECISION = 128


def _down(precision: int) -> "gmpy2.context":
    return gmpy2.context(precision=precision, round=gmpy2.RoundDown)


def _up(precision: int) -> "gmpy2.context":
    return gmpy2.context(precision=precision, round=gmpy2.RoundUp)


def _to_fraction(x) -> Fraction:
    """Exact value of an mpfr (every finite mpfr is a dyadic rational)."""
    q = gmpy2.mpq(x)
    return Fraction(int(q.numerator), int(q.denominator))


def _fraction_down(value: Scalar, precision: int):
    with _down(precision):
        return gmpy2.mpfr(Fraction(value))


def _fraction_up(value: Scalar, precision: int):
    with _up(precision):
        return gmpy2.mpfr(Fraction(value))


class Enclosure:
    """Interval ``[lo, hi]`` certified to contain an exact real value."""

    __slots__ = ("lo", "hi", "precision")

    def __init__(self, lo, hi, precision: int = DEFAULT_PRECISION):
        if precision < 32:
            raise ValueError("precision must be at least 32 bits")
        with _down(precision):
            lo = gmpy2.mpfr(lo)
        with _up(precision):
            hi = gmpy2.mpfr(hi)
        if gmpy2.is_nan(lo) or gmpy2.is_nan(hi) or gmpy2.is_infinite(lo) or gmpy2.is_infinite(hi):
            raise ValueError("enclosure endpoints must be finite")
        if lo > hi:
            raise ValueError(f"inverted enclosure: {lo} > {hi}")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        object.__setattr__(self, "precision", precision)

    def __setattr__(self, name, value):
        raise AttributeError("Enclosure is immutable")

    # -- constructors ----------------------------------------------------

    @classmethod
    def from_fraction(cls, value: Scalar, precision: int = DEFAULT_PRECISION) -> "Enclosure":
        """Tightest enclosure of an exact rational at the given precision."""
        value = Fraction(value)
        return cls(_fraction_down(value, precision), _fraction_up(value, precision), precision)

    @classmethod
    def from_bounds(cls, lo: Scalar, hi: Scalar, precision: int = DEFAULT_PRECISION) -> "Enclosure":
        """Enclosure of an exact rational interval ``[lo, hi]``."""
        lo = Fraction(lo)
        hi = Fraction(hi)
        if lo > hi:
            raise ValueError("inverted bounds")
        return cls(_fraction_down(lo, precision), _fraction_up(hi, precision), precision)

    @classmethod
    def zero(cls, precision: int = DEFAULT_PRECISION) -> "Enclosure":
        return cls(0, 0, precision)

    # -- exact views ------------------------------------------------------

    def lo_fraction(self) -> Fraction:
        return _to_fraction(self.lo)

    def hi_fraction(self) -> Fraction:
        return _to_fraction(self.hi)

    def width_fraction(self) -> Fraction:
        return self.hi_fraction() - self.lo_fraction()

    def width(self):
        with _up(self.precision):
            return self.hi - self.lo

    def midpoint(self):
        with gmpy2.context(precision=self.precision):
            return (self.lo + self.hi) / 2

    # -- predicates -------------------------------------------------------

    def contains(self, value: Scalar) -> bool:
        value = Fraction(value)
        return self.lo_fraction() <= value <= self.hi_fraction()

    def contains_zero(self) -> bool:
        return self.contains(0)

    def intersects(self, other: "Enclosure") -> bool:
        return self.lo_fraction() <= other.hi_fraction() and other.lo_fraction() <= self.hi_fraction()

    def strictly_above(self, other: "Enclosure") -> bool:
        return self.lo_fraction() > other.hi_fraction()

    def abs_hi_fraction(self) -> Fraction:
        """Upper bound on the absolute value of the enclosed quantity."""
        return max(abs(self.lo_fraction()), abs(self.hi_fraction()))

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Enclosure):
            return other
        if isinstance(other, (int, Fraction)):
            return Enclosure.from_fraction(other, self.precision)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        p = max(self.precision, other.precision)
        with _down(p):
            lo = self.lo + other.lo
        with _up(p):
            hi = self.hi + other.hi
        return Enclosure(lo, hi, p)

    __radd__ = __add__

    def __neg__(self):
        # negation must happen inside a full-precision context: operator
        # arithmetic re-rounds to the *active* gmpy2 context otherwise
        with _down(self.precision):
            lo = -self.hi
        with _up(self.precision):
            hi = -self.lo
        return Enclosure(lo, hi, self.precision)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            # exact rational scaling, a single outward rounding
            q = Fraction(other)
            a = self.lo_fraction() * q
            b = self.hi_fraction() * q
            if a > b:
                a, b = b, a
            return Enclosure.from_bounds(a, b, self.precision)
        if isinstance(other, Enclosure):
            p = max(self.precision, other.precision)
            pairs = [(self.lo, other.lo), (self.lo, other.hi), (self.hi, other.lo), (self.hi, other.hi)]
            with _down(p):
                lo = min(x * y for x, y in pairs)
            with _up(p):
                hi = max(x * y for x, y in pairs)
            return Enclosure(lo, hi, p)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            if q == 0:
                raise ZeroDivisionError("division of an enclosure by zero")
            return self * (Fraction(1) / q)
        return NotImplemented

    def pad(self, radius: Scalar) -> "Enclosure":
        """Widen both endpoints outward by an exact non-negative amount."""
        radius = Fraction(radius)
        if radius < 0:
            raise ValueError("pad radius must be non-negative")
        return Enclosure.from_bounds(self.lo_fraction() - radius, self.hi_fraction() + radius, self.precision)

    def pad_interval(self, lo_shift: Scalar, hi_shift: Scalar) -> "Enclosure":
        """Add the exact interval ``[lo_shift, hi_shift]``; used to fold a
        one-sided or asymmetric tail bound into a computed partial sum."""
        lo_shift = Fraction(lo_shift)
        hi_shift = Fraction(hi_shift)
        if lo_shift > hi_shift:
            raise ValueError("inverted pad interval")
        return Enclosure.from_bounds(self.lo_fraction() + lo_shift, self.hi_fraction() + hi_shift, self.precision)

    # -- formatting ---------------------------------------------------------

    def decimal_bounds(self, digits: int) -> tuple[str, str]:
        """Decimal strings with ``lo`` rounded down and ``hi`` rounded up."""
        return (
            decimal_string(self.lo_fraction(), digits, round_up=False),
            decimal_string(self.hi_fraction(), digits, round_up=True),
        )

    def __repr__(self) -> str:
        return f"Enclosure({self.lo!r}, {self.hi!r}, precision={self.precision})"

    def __str__(self) -> str:
        lo, hi = self.decimal_bounds(max(6, decimal_digits(self.precision) // 2))
        return f"[{lo}, {hi}]"


def log_enclosure(x: Scalar, precision: int = DEFAULT_PRECISION) -> Enclosure:
    """Enclosure of ``log(x)`` for an exact positive ``int`` or ``Fraction``.

    For a fraction ``p/q`` the bound is ``log p - log q`` with each logarithm
    rounded in the defensive direction; for integers a single directed
    logarithm per endpoint suffices (log is increasing, so rounding the
    argument and the result the same way is safe).
    """
    x = Fraction(x)
    if x <= 0:
        raise ValueError("log_enclosure needs a positive argument")
    p_num, q_den = x.numerator, x.denominator
    if q_den == 1:
        with _down(precision):
            lo = gmpy2.log(p_num)
        with _up(precision):
            hi = gmpy2.log(p_num)
    else:
        with _up(precision):
            log_q_up = gmpy2.log(q_den)
        with _down(precision):
            log_q_down = gmpy2.log(q_den)
            lo = gmpy2.log(p_num) - log_q_up
        with _up(precision):
            hi = gmpy2.log(p_num) - log_q_down
    return Enclosure(lo, hi, precision)


def log2_enclosure(precision: int = DEFAULT_PRECISION) -> Enclosure:
    """Enclosure of ``log 2``."""
    with _down(precision):
        lo = gmpy2.const_log2()
    with _up(precision):
        hi = gmpy2.const_log2()
    return Enclosure(lo, hi, precision)


def decimal_digits(precision: int) -> int:
    """Number of decimal digits carried when printing enclosures computed at
    ``precision`` bits: ``ceil(precision * log10 2) + 2``, evaluated exactly.
    """
    return len(str(1 << precision)) + 2


def decimal_string(value: Fraction, digits: int, round_up: bool) -> str:
    """Fixed-point decimal rendering of an exact rational, rounded toward
    +infinity or -infinity.  Pure integer arithmetic, hence byte-stable
    across platforms and runs."""
    if digits < 1:
        raise ValueError("digits must be positive")
    value = Fraction(value)
    scaled = value * 10**digits
    num, den = scaled.numerator, scaled.denominator
    if round_up:
        units = -((-num) // den)
    else:
        units = num // den
    sign = "-" if units < 0 else ""
    units = abs(units)
    whole, frac = divmod(units, 10**digits)
    return f"{sign}{whole}.{frac:0{digits}d}"
