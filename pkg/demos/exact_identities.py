"""Exact-rational identities behind the restricted harmonic sums.

Everything printed here is computed with exact fractions: the identity
checks compare both sides literally, with zero tolerance.  These identities
are the skeleton of the whole package: the residue split drives the
telescoped base-2 algorithm, and the v-sum identity pins the constant that
the base-b limits are built from.

Run:  python demos/exact_identities.py
"""

from fractions import Fraction

from kempner import (
    ClassQuery,
    DigitSum,
    class_partition_check,
    enumerate_class,
    harmonic,
    partial_sum_exact,
    split_identity_check,
    vsum_identity_check,
)

print("harmonic numbers, exactly")
for n in (1, 4, 9, 30):
    print(f"  H_{n} = {harmonic(n)}")

print()
print("class members and their reciprocal sums")
for k in (1, 2, 3):
    query = ClassQuery(DigitSum(2), k, 31)
    members = enumerate_class(query)
    print(f"  binary digit sum {k}, n <= 31: {members}  sum = {partial_sum_exact(query)}")

print()
print("residue split: partition {1..b^(J+1)-1} by n mod b, re-index, compare")
for b, k, J in ((2, 2, 3), (2, 1, 4), (3, 2, 2), (5, 4, 3)):
    check = split_identity_check(b, k, J)
    print(f"  b={b} k={k} J={J}: both sides {check.lhs}  equal: {check.ok}")

print()
print("v-sum identity: sum of (1/(bn) + ... + 1/(bn+b-1) - 1/n) telescopes")
for b, N in ((2, 1), (3, 1), (10, 100)):
    check = vsum_identity_check(b, N)
    print(f"  b={b} N={N}: both sides {Fraction(check.lhs)}  equal: {check.ok}")

print()
print("classes partition the integers: per-class sums add up to H_N")
for b, J in ((2, 10), (3, 7)):
    check = class_partition_check(b, J)
    print(f"  b={b}, N={b}^{J}-1: equal: {check.ok}")
