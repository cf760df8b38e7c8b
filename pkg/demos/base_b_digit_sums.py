"""Digit-sum restricted harmonic sums in bases other than 2.

The limit of the class sums in base b is 2 log b / (b - 1).  Here the sums
are computed directly: the class members below b^J are generated from digit
compositions (work proportional to the class size, not to b^J), and the
tail over longer integers is bounded by stars-and-bars solution counts.

The exact-rational oracle brackets the same quantity from much smaller
ranges; the certified engine enclosures must land inside those brackets,
and they do.

Run:  python demos/base_b_digit_sums.py
"""

from kempner import (
    ClassQuery,
    DigitSum,
    convergence_table,
    limit_value,
    partial_sum_exact,
    tail_bound_sum,
)

for b, J, J_oracle in ((3, 12, 8), (10, 7, 4)):
    N = b**J - 1
    limit = limit_value(DigitSum(b))
    print(f"base {b}: limit 2 log {b} / {b - 1} = {float(limit.midpoint()):.12f}")
    print(f"{'k':>3} {'engine enclosure':>34} {'oracle bracket (small range)':>34}")
    for row in convergence_table(DigitSum(b), range(1, 9), N):
        oracle_lo = partial_sum_exact(ClassQuery(DigitSum(b), row.k, b**J_oracle - 1))
        oracle_hi = oracle_lo + tail_bound_sum(b, row.k, J_oracle)
        engine = f"[{float(row.value.lo_fraction()):.10f}, {float(row.value.hi_fraction()):.10f}]"
        oracle = f"[{float(oracle_lo):.6f}, {float(oracle_hi):.6f}]"
        inside = row.value.lo_fraction() <= oracle_hi and oracle_lo <= row.value.hi_fraction()
        print(f"{row.k:>3} {engine:>34} {oracle:>34}  overlap: {inside}")
    print()

print("note: in base 10 the values dip below the limit near k = 4..5 and")
print("approach it from below afterwards; the approach need not be monotone")
