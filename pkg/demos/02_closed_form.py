"""The closed form: a whole walk collapsed into one exact rational.

Walking the word q = q1 q2 ... qs from n lands on (3^r n + W) / 2^s, where
W depends only on the positions of the odd steps.  The identity holds as an
exact rational for any word whatsoever; it lands on an integer exactly when
q really is the parity word of n.
"""

from fractions import Fraction

from collatzstop import (apply_closed_form, is_parity_prefix, parse_sequence,
                         shortcut_step, sigma, weighted_sum)

q = parse_sequence("1110110100")
print(f"word {q}: s={q.s}, r={q.r}, odd-step positions {q.one_positions}")
print(f"W = {weighted_sum(q)}, sigma = W/2^s = {sigma(q)}")

n = 423
out = apply_closed_form(q, n)
print(f"\nclosed form at n={n}: {out.value} (exact integer: {out.exact})")

v = n
for _ in q.bits:
    v, _bit = shortcut_step(v)
print(f"replaying the ten steps: {v}")

# A mismatched word still evaluates, just not to an integer.
bad = apply_closed_form(parse_sequence("10"), 4)
print(f"\nword 10 applied to 4: {bad.value} (exact: {bad.exact}, "
      f"prefix match: {is_parity_prefix(parse_sequence('10'), 4)})")

# The walk value splits into a start part and a word part:
# value = (3^r / 2^s) n + sigma, so sigma alone decides where between
# n/2 and n the landing sits.
for text in ("1100", "11010", "1110100"):
    w = parse_sequence(text)
    n = 51
    val = apply_closed_form(w, n).value
    split = Fraction(3 ** w.r, 2 ** w.s) * n + sigma(w)
    print(f"word {text:<8} value {val} = (3^r/2^s)n + sigma = {split}")
