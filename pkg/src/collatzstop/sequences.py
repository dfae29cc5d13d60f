"""Parity words and the exact closed form for iterating the halved Collatz map.

A parity word records, left to right, the parity of each value along a walk:
"1" for an odd step n -> (3n+1)/2 and "0" for an even step n -> n/2.  Walking
s steps from n, with ones at (1-based) positions p_1 < ... < p_r, lands on

    (3^r * n + W) / 2^s      where  W = sum_i 3^(r-i) * 2^(p_i - 1),

an identity that holds as an exact rational for any word, and yields an
integer exactly when the word really is the parity word of n.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, ParseError


@dataclass(frozen=True)
class ParitySequence:
    """A finite word over {1,0}; the leftmost bit is the first step taken."""

    bits: str

    def __post_init__(self):
        if not self.bits:
            raise ParseError("parity word must be nonempty")
        if self.bits.strip("01"):
            raise ParseError(f"parity word may only contain 1 and 0: {self.bits!r}")

    @property
    def s(self) -> int:
        """Word length (total number of steps)."""
        return len(self.bits)

    @property
    def r(self) -> int:
        """Number of odd steps."""
        return self.bits.count("1")

    @property
    def one_positions(self) -> list[int]:
        """Ascending 1-based positions of the odd steps."""
        return [i + 1 for i, b in enumerate(self.bits) if b == "1"]

    def __str__(self) -> str:
        return self.bits


@dataclass(frozen=True)
class ExactOutcome:
    """A closed-form value plus whether it is an exact integer."""

    value: Fraction
    exact: bool


def parse_sequence(text: str) -> ParitySequence:
    """Parse a {1,0} word; raises ParseError on empty or foreign symbols."""
    return ParitySequence(text)


def weighted_sum(q: ParitySequence) -> int:
    """The additive term W of the closed form, an exact nonnegative integer.

    Zero exactly when the word has no odd step.
    """
    r = q.r
    return sum(3 ** (r - i) * 2 ** (pos - 1) for i, pos in enumerate(q.one_positions, 1))


def apply_closed_form(q: ParitySequence, n: int) -> ExactOutcome:
    """Evaluate (3^r * n + W) / 2^s as an exact reduced rational.

    Well defined for any word; the result is an integer iff 2^s divides the
    numerator, which happens exactly when q matches n's parities.
    """
    if n < 1:
        raise DomainError(f"start value must be >= 1, got {n}")
    value = Fraction(3 ** q.r * n + weighted_sum(q), 1 << q.s)
    return ExactOutcome(value=value, exact=value.denominator == 1)


def sigma(q: ParitySequence) -> Fraction:
    """The start-independent term W / 2^s of the closed form."""
    return Fraction(weighted_sum(q), 1 << q.s)


def is_parity_prefix(q: ParitySequence, n: int) -> bool:
    """True iff the parities of the first s iterates of n equal q bit for bit."""
    if n < 1:
        raise DomainError(f"start value must be >= 1, got {n}")
    v = n
    for b in q.bits:
        if v & 1:
            if b != "1":
                return False
            v = (3 * v + 1) >> 1
        else:
            if b != "0":
                return False
            v >>= 1
    return True


def lower_unit_numerator(r: int) -> int:
    """3^(r-1) - 2^(r-1): the conservative per-word floor used by every bound
    here (sigma floors, the alpha envelope, cycle-number bounds).

    Note this undershoots the true minimum of weighted_sum (see
    min_weighted_sum); both are kept because the bound chain is built on this
    weaker unit.  Zero when r = 1.
    """
    if r < 1:
        raise DomainError(f"need at least one odd step, got r={r}")
    return 3 ** (r - 1) - 2 ** (r - 1)


def min_weighted_sum(r: int) -> int:
    """3^r - 2^r: the true minimum of weighted_sum over words with r ones,
    attained when all ones lead (positions 1..r).  Verified exhaustively in
    the test suite for word lengths up to 12.
    """
    if r < 1:
        raise DomainError(f"need at least one odd step, got r={r}")
    return 3 ** r - 2 ** r
