from fractions import Fraction

import gmpy2
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kempner.filters import (
    Polynomial,
    filter_convergence_demo,
    filter_sequence,
    geometric_decay,
    max_root_modulus,
    reciprocal_decay,
    root_analysis,
    transfer_polynomial,
)

ONE_OVER_SQRT3 = Fraction(
    "0.57735026918962576450914878050195745564760175127012687601860232648397767230293334569371539558574952522520871380514556"
)

small_rationals = st.fractions(
    min_value=Fraction(-50), max_value=Fraction(50), max_denominator=1000
)


def test_polynomial_basics():
    p = Polynomial((Fraction(2), Fraction(0), Fraction(-1)))
    assert p.degree == 2
    assert p(Fraction(3)) == 17
    assert p.derivative().coefficients == (Fraction(4), Fraction(0))
    with pytest.raises(ValueError):
        Polynomial(())
    with pytest.raises(ValueError):
        Polynomial((Fraction(0), Fraction(1)))


def test_polynomial_multiplication_exact():
    p = Polynomial((Fraction(1), Fraction(1)))  # X + 1
    q = Polynomial((Fraction(1), Fraction(-1)))  # X - 1
    assert (p * q).coefficients == (Fraction(1), Fraction(0), Fraction(-1))


def test_transfer_polynomial_coefficients():
    assert transfer_polynomial(3).coefficients == (Fraction(2), Fraction(1))
    assert transfer_polynomial(2).coefficients == (Fraction(1),)
    for b in range(2, 13):
        coeffs = transfer_polynomial(b).coefficients
        assert sum(coeffs) == Fraction(b * (b - 1), 2)
        if b > 2:
            assert coeffs == tuple(Fraction(c) for c in range(b - 1, 0, -1))


def test_one_minus_x_expansion():
    one_minus_x = Polynomial((Fraction(-1), Fraction(1)))
    for b in range(3, 13):
        product = one_minus_x * transfer_polynomial(b)
        expected = Polynomial(tuple([Fraction(-(b - 1))] + [Fraction(1)] * (b - 1)))
        assert product == expected


def test_max_root_modulus_linear():
    enc = max_root_modulus(transfer_polynomial(3), 128)
    assert enc.contains(Fraction(1, 2))
    assert enc.width_fraction() < Fraction(1, 10**20)


def test_max_root_modulus_quadratic():
    enc = max_root_modulus(Polynomial((Fraction(3), Fraction(2), Fraction(1))), 128)
    assert enc.contains(ONE_OVER_SQRT3)


def test_transfer_roots_inside_unit_disk():
    for b in range(3, 13):
        analysis = root_analysis(transfer_polynomial(b), 128)
        assert analysis.max_modulus.hi_fraction() < 1, b
        assert len(analysis.roots) == b - 2
        assert analysis.radius < Fraction(1, 10**6)


def test_root_analysis_rejects_constants():
    with pytest.raises(ValueError):
        root_analysis(transfer_polynomial(2), 64)


def test_filter_constant_sequence():
    p = transfer_polynomial(3)
    out = filter_sequence(p, [Fraction(7)] * 12)
    assert out == [Fraction(21)] * 11


def test_filter_annihilates_its_root():
    z = Fraction(2, 5)
    p = Polynomial((Fraction(1), -z))
    out = filter_sequence(p, [z**n for n in range(15)])
    assert all(value == 0 for value in out)


def test_filter_too_short():
    with pytest.raises(ValueError):
        filter_sequence(transfer_polynomial(5), [Fraction(1)] * 3)


@settings(max_examples=60)
@given(
    u=st.lists(small_rationals, min_size=6, max_size=12),
    v=st.lists(small_rationals, min_size=6, max_size=12),
    alpha=small_rationals,
    beta=small_rationals,
)
def test_filter_linearity_exact(u, v, alpha, beta):
    size = min(len(u), len(v))
    u, v = u[:size], v[:size]
    p = transfer_polynomial(4)
    mixed = [alpha * a + beta * b for a, b in zip(u, v)]
    direct = filter_sequence(p, mixed)
    combined = [
        alpha * a + beta * b
        for a, b in zip(filter_sequence(p, u), filter_sequence(p, v))
    ]
    assert direct == combined


def test_composition_of_first_order_filters():
    # applying (X - z_j) for every root, in any order, equals the direct
    # filter up to the certified pairing radius and rounding
    precision = 128
    b = 6
    p = transfer_polynomial(b)
    analysis = root_analysis(p, precision)
    with gmpy2.context(precision=precision):
        seq = [gmpy2.mpc(1) / (n * n + 1) for n in range(1, 30)]
        lead = gmpy2.mpc(gmpy2.mpq(p.coefficients[0].numerator, p.coefficients[0].denominator))
        for order in (analysis.roots, tuple(reversed(analysis.roots))):
            filtered = seq
            for z in order:
                filtered = [
                    filtered[i] - z * filtered[i - 1] for i in range(1, len(filtered))
                ]
            composed = [lead * value for value in filtered]
            direct = filter_sequence(p, seq)
            assert len(composed) == len(direct)
            tolerance = gmpy2.mpfr(2) ** (8 - precision) + gmpy2.mpfr(float(analysis.radius)) * 100
            for a, c in zip(direct, composed):
                assert abs(a - c) <= tolerance


def test_demo_geometric_decay_is_annihilated():
    demo = filter_convergence_demo(
        3, Fraction(1), geometric_decay(Fraction(1, 2)), 200, "geometric(1/2)"
    )
    assert demo.max_deviation < Fraction(1, 10**30)


def test_demo_reciprocal_decay():
    demo = filter_convergence_demo(3, Fraction(1), reciprocal_decay(), 10_000, "1/n")
    assert demo.max_deviation < Fraction(1, 10**3)


def test_demo_zero_target():
    demo = filter_convergence_demo(10, Fraction(0), reciprocal_decay(), 10_000, "1/n")
    assert demo.max_deviation < Fraction(1, 100)


def test_demo_validation():
    with pytest.raises(ValueError):
        filter_convergence_demo(2, Fraction(1), reciprocal_decay(), 100)
    with pytest.raises(ValueError):
        geometric_decay(Fraction(3, 2))
