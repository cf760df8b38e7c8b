"""Finite-difference convergence filters and certified root moduli.

A polynomial ``P(X) = sum a_k X^(d-k)`` with every complex root inside the
unit disk transfers convergence backwards: the filtered sequence
``sum a_k u_{n-k}`` tends to 0 iff ``u_n`` does.  The filter used for the
base-``b`` digit-sum limit has the descending coefficients ``(b-1, b-2,
..., 2, 1)``; multiplying it by ``1 - X`` collapses it to ``1 + X + ... +
X^(b-2) - (b-1) X^(b-1)``, which forces every root modulus below 1.

Root moduli are certified, not just estimated.  Approximate roots from the
companion matrix are polished by complex Newton iteration, and the maximum
modulus is bracketed by a radius derived from the coefficient-wise residual
between the polynomial and the monic product over the computed roots: if
that residual is ``E``, every true root lies within

    delta = (E * (d+1) * max(1, R)^d / |a_0|)^(1/d)

of some computed root and vice versa (``R`` is the Cauchy bound), since at
any point ``z`` the product of distances to the computed (resp. true) roots
is exactly ``|residual(z)| / |a_0|``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import gmpy2
import numpy as np

from .enclosure import Enclosure

__all__ = [
    "FilterDemo",
    "Polynomial",
    "RootAnalysis",
    "filter_convergence_demo",
    "filter_sequence",
    "geometric_decay",
    "max_root_modulus",
    "reciprocal_decay",
    "root_analysis",
    "transfer_polynomial",
]


@dataclass(frozen=True)
class Polynomial:
    """Dense polynomial with exact rational coefficients, leading first:
    ``coefficients[k]`` multiplies ``X^(degree-k)``."""

    coefficients: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if not self.coefficients:
            raise ValueError("a polynomial needs at least one coefficient")
        coeffs = tuple(Fraction(c) for c in self.coefficients)
        if coeffs[0] == 0:
            raise ValueError("leading coefficient must be nonzero")
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, x):
        acc = self.coefficients[0]
        for c in self.coefficients[1:]:
            acc = acc * x + c
        return acc

    def derivative(self) -> "Polynomial":
        d = self.degree
        if d == 0:
            raise ValueError("derivative of a constant is the zero polynomial")
        return Polynomial(tuple(c * (d - k) for k, c in enumerate(self.coefficients[:-1])))

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        if not isinstance(other, Polynomial):
            return NotImplemented
        out = [Fraction(0)] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            for j, b in enumerate(other.coefficients):
                out[i + j] += a * b
        return Polynomial(tuple(out))

    def __str__(self) -> str:
        d = self.degree
        pieces = []
        for k, c in enumerate(self.coefficients):
            if c == 0:
                continue
            power = d - k
            if power == 0:
                body = str(abs(c))
            else:
                magnitude = "" if abs(c) == 1 else str(abs(c))
                body = magnitude + ("X" if power == 1 else f"X^{power}")
            if not pieces:
                pieces.append(("-" if c < 0 else "") + body)
            else:
                pieces.append(("- " if c < 0 else "+ ") + body)
        return " ".join(pieces) if pieces else "0"


def transfer_polynomial(b: int) -> Polynomial:
    """The filter ``(b-1) X^(b-2) + (b-2) X^(b-3) + ... + 2 X + 1``; for
    ``b = 2`` the combination is a single term and the filter is the
    constant 1 (the identity)."""
    if b < 2:
        raise ValueError("base must be at least 2")
    if b == 2:
        return Polynomial((Fraction(1),))
    return Polynomial(tuple(Fraction(c) for c in range(b - 1, 0, -1)))


@dataclass(frozen=True)
class RootAnalysis:
    """Certified root report: every true root lies within ``radius`` of one
    of ``roots`` and vice versa; ``max_modulus`` bounds the largest true
    root modulus."""

    polynomial: Polynomial
    roots: tuple
    radius: Fraction
    max_modulus: Enclosure


def _mpc_coefficients(p: Polynomial, precision: int):
    with gmpy2.context(precision=precision):
        return [gmpy2.mpc(gmpy2.mpq(c.numerator, c.denominator)) for c in p.coefficients]


def _newton_polish(p: Polynomial, seeds, precision: int):
    coeffs = _mpc_coefficients(p, precision)
    dcoeffs = _mpc_coefficients(p.derivative(), precision) if p.degree >= 1 else []
    polished = []
    with gmpy2.context(precision=precision):
        for z in seeds:
            z = gmpy2.mpc(z)
            for _ in range(64):
                pv = coeffs[0]
                for c in coeffs[1:]:
                    pv = pv * z + c
                dv = dcoeffs[0]
                for c in dcoeffs[1:]:
                    dv = dv * z + c
                if dv == 0:
                    break
                step = pv / dv
                z = z - step
                if abs(step) <= abs(z) * gmpy2.exp2(-(precision - 8)):
                    break
            polished.append(z)
    return polished


def _mpc_parts(z) -> tuple[Fraction, Fraction]:
    req = gmpy2.mpq(z.real)
    imq = gmpy2.mpq(z.imag)
    return Fraction(int(req.numerator), int(req.denominator)), Fraction(
        int(imq.numerator), int(imq.denominator)
    )


def root_analysis(p: Polynomial, precision: int = 128) -> RootAnalysis:
    """Compute all complex roots with a certified pairing radius.

    Raises if the Newton-polished residual is too large to certify a radius
    below the trivial Cauchy bound (root finder failure).
    """
    d = p.degree
    if d < 1:
        raise ValueError("root analysis needs degree >= 1")
    float_coeffs = [float(c) for c in p.coefficients]
    seeds = np.roots(float_coeffs)
    work = 2 * precision + 64
    roots = _newton_polish(p, seeds, work)

    # coefficient-wise residual of a0 * prod (X - z) against p, exactly
    expand_prec = 4 * precision + 128
    with gmpy2.context(precision=expand_prec):
        prod = [gmpy2.mpc(1)]
        for z in roots:
            nxt = [gmpy2.mpc(0)] * (len(prod) + 1)
            for i, c in enumerate(prod):
                nxt[i] += c
                nxt[i + 1] -= c * z
            prod = nxt
    a0 = p.coefficients[0]
    residual = Fraction(0)
    for exact, approx in zip(p.coefficients, prod):
        re, im = _mpc_parts(approx)
        diff = abs(a0 * re - exact) + abs(a0 * im)
        residual = max(residual, diff)
    # crude but enormous-margin cover for the rounding of the expansion
    mags = [abs(z) for z in roots]
    with gmpy2.context(precision=64, round=gmpy2.RoundUp):
        mag_bound = gmpy2.mpfr(1)
        for m in mags:
            mag_bound = mag_bound * (1 + m)
    mag_q = gmpy2.mpq(mag_bound)
    expansion_slack = (
        8 * (d + 2) * (d + 2) * abs(a0)
        * Fraction(int(mag_q.numerator), int(mag_q.denominator))
        * Fraction(1, 1 << (expand_prec - 4))
    )
    residual += expansion_slack

    cauchy = 1 + max(abs(c / a0) for c in p.coefficients[1:]) if d >= 1 else Fraction(1)
    bound = residual * (d + 1) * max(Fraction(1), cauchy) ** d / abs(a0)
    with gmpy2.context(precision=64, round=gmpy2.RoundUp):
        # mpq -> mpfr rounds up here, and rootn is increasing, so this is
        # an upper bound on bound^(1/d)
        delta_up = gmpy2.rootn(gmpy2.mpfr(gmpy2.mpq(bound.numerator, bound.denominator)), d)
    dq = gmpy2.mpq(delta_up)
    delta = Fraction(int(dq.numerator), int(dq.denominator))
    if delta >= cauchy:
        raise ArithmeticError(
            f"root certification failed: radius {float(delta):.3g} exceeds the "
            f"Cauchy bound {float(cauchy):.3g}"
        )

    with gmpy2.context(precision=work, round=gmpy2.RoundUp):
        max_up = max(abs(z) for z in roots)
    with gmpy2.context(precision=work, round=gmpy2.RoundDown):
        max_down = max(abs(z) for z in roots)
    up_q = gmpy2.mpq(max_up)
    down_q = gmpy2.mpq(max_down)
    hi = Fraction(int(up_q.numerator), int(up_q.denominator)) + delta
    lo = max(Fraction(0), Fraction(int(down_q.numerator), int(down_q.denominator)) - delta)
    modulus = Enclosure.from_bounds(lo, hi, precision)
    return RootAnalysis(p, tuple(roots), delta, modulus)


def max_root_modulus(p: Polynomial, precision: int = 128) -> Enclosure:
    """Certified enclosure of the maximum root modulus of ``p``."""
    return root_analysis(p, precision).max_modulus


def filter_sequence(p: Polynomial, u: Sequence) -> list:
    """Apply the filter: element ``n`` of the result is
    ``sum_k coefficients[k] * u[n - k]`` for ``n`` from ``degree`` to the
    end.  Exact when the input terms are rational."""
    u = list(u)
    d = p.degree
    if len(u) <= d:
        raise ValueError(f"sequence of length {len(u)} is too short for degree {d}")
    coeffs = p.coefficients
    return [sum(coeffs[k] * u[n - k] for k in range(d + 1)) for n in range(d, len(u))]


def geometric_decay(ratio: Fraction) -> Callable[[int], Fraction]:
    """Decay profile ``n -> ratio^n`` with ``|ratio| < 1``."""
    ratio = Fraction(ratio)
    if not abs(ratio) < 1:
        raise ValueError("|ratio| must be below 1")
    return lambda n: ratio**n


def reciprocal_decay() -> Callable[[int], Fraction]:
    """Decay profile ``n -> 1/(n+1)``."""
    return lambda n: Fraction(1, n + 1)


@dataclass(frozen=True)
class FilterDemo:
    """Quantitative demonstration that the filter recovers the limit."""

    b: int
    target: Fraction
    profile: str
    n_max: int
    max_deviation: Fraction


def filter_convergence_demo(
    b: int,
    target: Fraction,
    decay: Callable[[int], Fraction],
    n_max: int,
    profile: str = "custom",
) -> FilterDemo:
    """Build ``u_n = 2*target/(b(b-1)) + decay(n)``, filter it, and measure
    the worst deviation of the filtered values from ``target`` over the last
    tenth of the indices.  Exact in rational arithmetic."""
    if b < 3:
        raise ValueError("the demo needs b >= 3 (b = 2 filters trivially)")
    if n_max < 10:
        raise ValueError("n_max too small to report a meaningful tail")
    target = Fraction(target)
    p = transfer_polynomial(b)
    base = 2 * target / (b * (b - 1))
    u = [base + decay(n) for n in range(n_max)]
    filtered = filter_sequence(p, u)
    window = filtered[-max(1, len(filtered) // 10) :]
    deviation = max(abs(x - target) for x in window)
    return FilterDemo(b, target, profile, n_max, deviation)
