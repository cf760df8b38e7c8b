"""The log-ratio expressions attached to binary words.

Every nonempty binary word carries a rational function of n whose
logarithm, summed over any class {n : count(word, n) = k}, equals exactly
-log 2, independently of k.  The expressions are built by a four-case
recursion and flattened into signed multisets of log(2^l n + c) factors.

Three exact identities hold for the flattened terms: signs cancel, scale
exponents cancel, and the signed offset sum equals -2^(-len(word)).  They
force the asymptotics log_ratio(n) = -1/(2^len(word) n) + O(1/n^2), the key
to the accelerated class summation.

Run:  python demos/log_ratio_expressions.py
"""

from kempner import log2_enclosure, log_expression, log_sum_over_class

print("expressions for short words")
for word in ("1", "0", "10", "11", "010", "0110"):
    expr = log_expression(word)
    s0, s1, s2 = expr.coefficient_sums()
    print(f"  {word:>5}: {expr.canonical_text()}")
    print(f"         = log of {expr.rational_function_text()}")
    print(f"         coefficient sums ({s0}, {s1}, {s2}), remainder constant {expr.remainder_constant()}")

print()
print("identity evidence: partial class log sums versus -log 2")
log2 = log2_enclosure(128)
for word, k, N, label in (
    ("1", 1, 1 << 40, "bit positions to 2^40"),
    ("1", 2, 1 << 30, "bit pairs to 2^30"),
    ("11", 1, 1 << 20, "scan to 2^20"),
    ("10", 1, 1 << 20, "scan to 2^20"),
):
    enc = log_sum_over_class(word, k, N, 128)
    gap = enc + log2
    print(f"  word {word:>3}, k={k} ({label}): partial = {float(enc.midpoint()):+.9f}, "
          f"distance to -log 2 = {float(gap.abs_hi_fraction()):.2e}")

print()
print("the k = 1 sum for the word 1 runs over powers of two, so pushing N")
print("to 2^40 costs nothing and the identity is visible to 12 digits")
