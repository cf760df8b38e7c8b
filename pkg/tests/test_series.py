from fractions import Fraction

import pytest

from kempner.enclosure import Enclosure
from kempner.exact import ClassQuery, bounded_class_sum, partial_sum_exact, tail_bound_sum
from kempner.series import (
    accelerated_block_sum,
    convergence_table,
    direct_sum_base_b,
    limit_value,
    telescoped_sum_base2,
)
from kempner.words import BlockCount, DigitSum

TWO_LOG_2 = Fraction("1.38629436111989061883446424291635313615100014136")
FOUR_LOG_2 = Fraction("2.77258872223978123766892848583270627230200028272")
# independent geometric route: 2 + 2*sum_j (1/(2^(j+1)+1) - 1/2^(j+1))
A2_REFERENCE = Fraction("1.528999560696888418382639494510996965115393997")


def geometric_a2_oracle(precision: int = 256) -> Enclosure:
    acc = Enclosure.zero(precision)
    for j in range(0, 600):
        acc = acc + Fraction(1, (1 << (j + 1)) + 1) - Fraction(1, 1 << (j + 1))
    return (Enclosure.from_fraction(2, precision) + acc * 2).pad(Fraction(1, 1 << 590))


def test_limit_values():
    assert limit_value(DigitSum(2), 128).contains(TWO_LOG_2)
    assert limit_value(BlockCount("11"), 128).contains(FOUR_LOG_2)
    ten = limit_value(DigitSum(10), 128)
    assert ten.contains(
        Fraction("0.511685576220899040892886989929858712800244775")
    )
    for spec in (DigitSum(2), DigitSum(7), BlockCount("101")):
        enc = limit_value(spec, 128)
        assert enc.width_fraction() <= Fraction(1, 1 << 124)  # <= 2^(4 - precision)


def test_telescoped_k1_is_exactly_two():
    result = telescoped_sum_base2(1, 50)
    assert result.value.contains(2)
    assert result.value.width_fraction() == 0
    assert result.tail_bound == 0


def test_telescoped_k2_matches_geometric_oracle():
    # the oracle enclosure is ~1e-75 wide; pad it to compare against the
    # 45-digit recorded reference
    oracle = geometric_a2_oracle()
    assert oracle.pad(Fraction(1, 10**44)).contains(A2_REFERENCE)
    result = telescoped_sum_base2(2, 10**6)
    assert result.value.intersects(oracle)
    assert result.value.contains(A2_REFERENCE)
    assert result.value.width_fraction() < Fraction(1, 10**5)


def test_telescoped_rejects_bad_arguments():
    with pytest.raises(ValueError):
        telescoped_sum_base2(0, 100)
    with pytest.raises(ValueError):
        telescoped_sum_base2(2, 0)


def test_telescoped_bounded_by_oracle_partials():
    result = telescoped_sum_base2(3, 200_000)
    for M in (1_000, 30_000):
        partial = partial_sum_exact(ClassQuery(DigitSum(2), 3, M))
        assert partial <= result.value.hi_fraction()
    assert result.value.lo_fraction() > limit_value(DigitSum(2)).hi_fraction()


def test_telescoped_decreasing_in_k():
    rows = [telescoped_sum_base2(k, 300_000) for k in range(2, 9)]
    for earlier, later in zip(rows, rows[1:]):
        assert later.value.hi_fraction() < earlier.value.lo_fraction()
    for row in rows:
        assert row.value.lo_fraction() > limit_value(DigitSum(2)).hi_fraction()


def test_direct_base3_k1_encloses_three_halves():
    result = direct_sum_base_b(3, 1, 3**15 - 1)
    assert result.value.contains(Fraction(3, 2))


def test_direct_requires_aligned_N():
    with pytest.raises(ValueError):
        direct_sum_base_b(3, 1, 100)
    with pytest.raises(ValueError):
        direct_sum_base_b(3, 12, 3**3 - 1)  # tail ratio not below 1


def test_direct_agrees_with_exact_oracle():
    oracle_lo, oracle_hi = bounded_class_sum(3, 2, 8)
    result = direct_sum_base_b(3, 2, 3**12 - 1)
    assert result.value.lo_fraction() <= oracle_hi
    assert oracle_lo <= result.value.hi_fraction()
    # the engine partial is itself between oracle partial and oracle bound
    assert oracle_lo <= result.value.hi_fraction()


def test_direct_base2_consistent_with_telescoped():
    for k in (1, 2, 4):
        direct = direct_sum_base_b(2, k, 2**20 - 1)
        telescoped = telescoped_sum_base2(k, 10**5)
        assert direct.value.intersects(telescoped.value), k


def test_accelerated_word1_matches_telescoped():
    for k in (1, 2, 5):
        accelerated = accelerated_block_sum("1", k, 10**5)
        telescoped = telescoped_sum_base2(k, 10**5)
        assert accelerated.value.intersects(telescoped.value), k
    one = accelerated_block_sum("1", 1, 10**5)
    assert one.value.contains(2)


def test_accelerated_word11_against_exact_partials():
    # partial class sums are lower bounds (all terms positive)
    result = accelerated_block_sum("11", 0, 1 << 18)
    partial = partial_sum_exact(ClassQuery(BlockCount("11"), 0, 1 << 16))
    assert partial < result.value.lo_fraction()
    # frozen reference from an independent longer run (N = 2^25)
    assert result.value.contains(Fraction("3.704711752754887670114932657"))


def test_accelerated_k0_needs_unit_value_at_zero():
    with pytest.raises(ValueError):
        accelerated_block_sum("1", 0, 1000)
    with pytest.raises(ValueError):
        accelerated_block_sum("10", 0, 1000)
    # w = 11 has value 1 at zero, so k = 0 is legitimate
    accelerated_block_sum("11", 0, 1000)


def test_accelerated_tail_bound_recorded():
    result = accelerated_block_sum("11", 1, 1 << 16)
    assert result.tail_bound == Fraction(25, 8) / (1 << 16)
    # width = 2 * tail + series-remainder envelope + outward rounding
    assert result.value.width_fraction() <= 2 * result.tail_bound + Fraction(1, 10**12)


def test_convergence_table_shapes_and_order():
    rows = convergence_table(DigitSum(2), [4, 2, 3], 50_000)
    assert [row.k for row in rows] == [2, 3, 4]
    assert all(row.N == 50_000 for row in rows)
    # gap enclosures straddle value - limit
    for row in rows:
        diff_lo = row.value.lo_fraction() - row.limit.hi_fraction()
        diff_hi = row.value.hi_fraction() - row.limit.lo_fraction()
        assert row.gap.lo_fraction() <= diff_lo <= row.gap.hi_fraction() or abs(
            row.gap.lo_fraction() - diff_lo
        ) < Fraction(1, 1 << 100)
        assert row.gap.hi_fraction() >= diff_hi - Fraction(1, 1 << 100)


def test_convergence_table_aligns_base_b_range():
    rows = convergence_table(DigitSum(3), [1, 2], 10**6)
    assert all(row.N == 3**12 - 1 for row in rows)


def test_convergence_table_block_words():
    rows = convergence_table(BlockCount("11"), range(0, 3), 1 << 16)
    gaps = [row.gap.abs_hi_fraction() for row in rows]
    assert gaps[0] > gaps[1] > gaps[2]


def test_oracle_tail_plus_partial_inside_engine_enclosure():
    # engine enclosures contain oracle partial + true tail (bounded above
    # by the oracle tail bound)
    result = direct_sum_base_b(3, 3, 3**10 - 1)
    partial = partial_sum_exact(ClassQuery(DigitSum(3), 3, 3**10 - 1))
    tail = tail_bound_sum(3, 3, 10)
    assert result.value.lo_fraction() <= partial + tail
    assert partial <= result.value.hi_fraction()
