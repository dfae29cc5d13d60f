"""Residue classes, the census of minimal words, and how one word covers
three arithmetic progressions of starters.
"""

from collatzstop import (ResidueFamily, apply_closed_form, class_transition,
                         classify, enumerate_minimal, family_member,
                         is_parity_prefix, two_step_reduce)

print("classification:")
for n in (7, 9, 12, 13, 35):
    lab = classify(n)
    print(f"  {n:<3} {lab.mod3:<5} {lab.mod12 or '(even)'}")

print("\nwhere one step lands (mod 3), by n mod 6:")
for res in range(6):
    print(f"  n = {res} mod 6  ->  {class_transition(res)}")

print("\ntwo-step shortcut for odd n = 1 mod 4:")
for n in (5, 9, 13):
    print(f"  {n} -> {two_step_reduce(n)}")

print("\ncensus of odd m < 2^s stopping in exactly s steps:")
for s in range(4, 11):
    census = enumerate_minimal(s)
    sample = ", ".join(f"{m}:{q}" for m, q in census[:4])
    more = " ..." if len(census) > 4 else ""
    print(f"  s={s:<3} {len(census):>3} words   {sample}{more}")

# One census row covers the whole progression n = 2^s (3j + k) + m:
# the first s parities agree with m's word, so the descent transfers.
m, q = enumerate_minimal(4)[0]
print(f"\ntransfer of m={m}, q={q}:")
for k in (0, 1, 2):
    fam = ResidueFamily(s=4, m=m, k=k)
    members = [family_member(fam, j) for j in range(4)]
    assert all(is_parity_prefix(q, n) for n in members)
    landings = [int(apply_closed_form(q, n).value) for n in members]
    print(f"  k={k}: {members} -> {landings}")
