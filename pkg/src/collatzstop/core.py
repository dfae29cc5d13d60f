"""The halved Collatz map and stopping-time walks with exact integers."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import CycleDetectedError, DomainError, StepLimitError
from .sequences import ParitySequence

DEFAULT_STEP_CAP = 10 ** 6


@dataclass(frozen=True)
class StoppingRecord:
    """The minimal descent of a start value.

    value is the first iterate strictly below n, reached after s steps of
    which r were odd; q is the exact parity word of those steps.
    """

    n: int
    s: int
    r: int
    q: ParitySequence
    value: int


def shortcut_step(n: int) -> tuple[int, int]:
    """One application of the map: (n/2, 0) for even n, ((3n+1)/2, 1) for odd."""
    if n < 1:
        raise DomainError(f"the map is defined on positive integers, got {n}")
    if n & 1:
        return (3 * n + 1) >> 1, 1
    return n >> 1, 0


def descend(n: int, step_cap: int) -> tuple[int, int, int, int, int]:
    """Walk from n until the first value < n.

    Returns (s, r, w, word, value) where w is the weighted sum of the walk's
    parity word and word is that word packed as an integer (leftmost step =
    most significant bit).  The weighted sum is grown incrementally: an odd
    step at length L maps w -> 3w + 2^L, an even step leaves it unchanged.
    """
    v = n
    s = r = w = word = 0
    while v >= n:
        if v == n and s:
            raise CycleDetectedError(f"{n} returned to itself after {s} steps")
        if s >= step_cap:
            raise StepLimitError(n, s, r, format(word, "b").zfill(s), v)
        if v & 1:
            w = 3 * w + (1 << s)
            v = (3 * v + 1) >> 1
            word = (word << 1) | 1
            r += 1
        else:
            v >>= 1
            word <<= 1
        s += 1
    return s, r, w, word, v


def stopping_record(n: int, step_cap: int = DEFAULT_STEP_CAP) -> StoppingRecord:
    """Minimal descent record for n >= 2.

    n = 1 is rejected: it sits on the 1-2-1 loop and never descends.  A walk
    that exceeds step_cap raises StepLimitError carrying the partial walk.
    """
    if n < 2:
        raise DomainError(f"stopping is defined for n >= 2, got {n}")
    s, r, _, word, value = descend(n, step_cap)
    q = ParitySequence(format(word, "b").zfill(s))
    return StoppingRecord(n=n, s=s, r=r, q=q, value=value)


def trajectory(n: int, limit: int) -> list[tuple[int, int]]:
    """Up to `limit` iterates of n as (value, parity_bit) pairs.

    Stops early once an iterate reaches 1; for n = 1 the walk simply loops
    the 1-2-1 cycle for exactly `limit` steps.  Truncation is visible in the
    result (length == limit without reaching 1), never an error.
    """
    if n < 1:
        raise DomainError(f"the map is defined on positive integers, got {n}")
    if limit < 1:
        raise DomainError(f"limit must be >= 1, got {limit}")
    out = []
    v = n
    for _ in range(limit):
        v, b = shortcut_step(v)
        out.append((v, b))
        if v == 1 and n != 1:
            break
    return out
