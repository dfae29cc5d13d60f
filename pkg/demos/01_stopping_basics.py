"""Walking the halved Collatz map and measuring stopping times.

The map sends even n to n/2 and odd n to (3n+1)/2, so every odd step
already absorbs one halving.  The stopping time of n is the number of steps
until the walk first drops strictly below n; the parity word records, per
step, whether the value was odd (1) or even (0).
"""

from collatzstop import shortcut_step, stopping_record, trajectory

print("single steps:")
for n in (7, 8, 1):
    print(f"  {n} -> {shortcut_step(n)}")

print("\nstopping records (start, steps, odd steps, parity word, landing):")
for n in (2, 3, 7, 11, 27, 97, 871):
    rec = stopping_record(n)
    word = rec.q.bits if rec.s <= 20 else f"({rec.s} steps)"
    print(f"  n={n:<4} s={rec.s:<3} r={rec.r:<3} q={word:<22} value={rec.value}")

# Every even start halves once and is done; every odd start that is
# 1 mod 4 descends in exactly two steps.  Only 3 mod 4 starts take longer.
print("\neven and 1-mod-4 starts are immediate:")
for n in (10, 12, 5, 13, 21):
    rec = stopping_record(n)
    print(f"  n={n:<3} s={rec.s} q={rec.q.bits}")

print("\nfull walk of 27 down to 1 (first 12 shown):")
walk = trajectory(27, 200)
print(" ", " ".join(str(v) for v, _ in walk[:12]), "...")
print(f"  reaches 1 after {len(walk)} steps; the stopping point came after "
      f"{stopping_record(27).s} steps at {stopping_record(27).value}")
