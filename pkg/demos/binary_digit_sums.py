"""The sums 1/n over integers with a fixed binary digit sum.

For every k the sum converges, and as k grows the values decrease toward
2 log 2 = 1.3862943...  The algorithm never touches the class for k
directly: telescoping the even/odd split expresses the k-th sum as

    2  -  2 * sum of 1/(2n(2n+1)) over n with digit sum below k,

a dense, absolutely convergent series whose tail is controlled by counting
integers with small digit sums.  Every row is a certified enclosure: the
true value is provably between value_lo and value_hi.

Run:  python demos/binary_digit_sums.py
"""

from kempner import DigitSum, convergence_table, limit_value

N = 10**6
PRECISION = 128

limit = limit_value(DigitSum(2), PRECISION)
print(f"limit 2 log 2 = {limit}")
print(f"summing to N = {N}")
print()
print(f"{'k':>3} {'value_lo':>22} {'value_hi':>22} {'gap to limit':>14}")
for row in convergence_table(DigitSum(2), range(1, 13), N, PRECISION):
    lo, hi = row.value.decimal_bounds(18)
    gap = float(row.gap.hi_fraction())
    print(f"{row.k:>3} {lo:>22} {hi:>22} {gap:>14.3e}")

print()
print("the gap to the limit shrinks roughly geometrically in k, and every")
print("enclosure sits strictly above the limit")
