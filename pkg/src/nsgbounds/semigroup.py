"""Numerical semigroups with exact integer arithmetic.

A numerical semigroup is a subset of the non-negative integers that
contains 0, is closed under addition and has finite complement.  The
canonical representation stores the minimal generators, the conductor c
(every integer >= c is a member; c = Frobenius number + 1), the genus
(number of gaps) and a membership bitmap for the finite window [0, c).
Membership tables are plain Python ints used as bitsets, so the whole
module is exact and allocation-light.

Semigroups generated by two coprime integers a < b admit O(1)
membership: with c the inverse of b modulo a,

    i is a member  <=>  b * ((i*c) mod a) <= i      (i >= 0)

and each member has exactly one representation i = m*a + n*b with
m >= 0 and 0 <= n <= a-1, namely n = (i*c) mod a.  All modular
reductions return the canonical representative in [0, modulus).
"""

import math
from dataclasses import dataclass, field

from .errors import EmptyInput, NonCoprimeGenerators

__all__ = [
    "NumericalSemigroup",
    "TwoGenSemigroup",
    "from_generators",
    "is_member",
    "is_member_two_gen",
    "unique_representation",
    "is_member_consecutive",
    "bit_indices",
]


def bit_indices(mask: int) -> list[int]:
    """Positions of the set bits of ``mask``, ascending."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


@dataclass(frozen=True)
class NumericalSemigroup:
    """Canonical finite description of a numerical semigroup.

    ``member_bitmap`` has bit i set iff i is a member, for
    0 <= i < conductor; membership at or above the conductor is
    implicit.  Instances are immutable and safe to share across threads
    and processes.  Build them with :func:`from_generators`; the raw
    constructor trusts its arguments.
    """

    min_generators: tuple[int, ...]
    conductor: int
    genus: int
    member_bitmap: int = field(repr=False)

    @property
    def multiplicity(self) -> int:
        """Smallest nonzero member."""
        return self.min_generators[0]

    @property
    def frobenius(self) -> int:
        """Largest gap; -1 when there are no gaps."""
        return self.conductor - 1

    def member_mask(self, limit: int) -> int:
        """Bitmask of the members in [0, limit)."""
        if limit <= self.conductor:
            return self.member_bitmap & ((1 << max(limit, 0)) - 1)
        ones = (1 << (limit - self.conductor)) - 1
        return self.member_bitmap | (ones << self.conductor)

    def members(self, limit: int) -> list[int]:
        """All members below ``limit``."""
        return bit_indices(self.member_mask(limit))

    def gaps(self) -> list[int]:
        """The finite complement, ascending."""
        return bit_indices(~self.member_bitmap & ((1 << self.conductor) - 1))

    def __contains__(self, x: int) -> bool:
        return is_member(self, x)


def _closure(gens: list[int], window: int) -> int:
    """Bitset of all sums of the generators inside [0, window).

    Saturating each generator in turn with doubling shifts is complete:
    after generator g the set is closed under adding any multiple of g,
    and later saturations preserve that property.
    """
    mask = (1 << window) - 1
    bits = 1
    for g in gens:
        shift = g
        while shift < window:
            bits |= (bits << shift) & mask
            shift <<= 1
    return bits


def _minimal_generators(bits: int, conductor: int, multiplicity: int) -> tuple[int, ...]:
    """Minimal generators read off a membership bitset.

    A member is minimal iff it is not a sum of two nonzero members.
    Every minimal generator is below conductor + multiplicity, since
    anything larger splits off one multiplicity.
    """
    if conductor == 0:
        return (1,)
    limit = conductor + multiplicity
    lmask = (1 << limit) - 1
    nonzero = bits & lmask & ~1
    sums = 0
    for y in bit_indices(nonzero):
        if 2 * y >= limit:
            break  # every pair has its smaller element <= (limit-1)/2
        sums |= (nonzero << y) & lmask
    return tuple(bit_indices(nonzero & ~sums))


def from_generators(gens) -> NumericalSemigroup:
    """Canonical semigroup generated by a coprime set of positive integers.

    The generating set may be redundant; generators expressible as sums
    of smaller members are dropped so that equal semigroups compare
    equal however they were presented.

    Raises EmptyInput for an empty set, NonCoprimeGenerators when the
    gcd exceeds 1 (the complement would be infinite), and ValueError
    for non-positive entries.
    """
    gens = sorted({int(g) for g in gens})
    if not gens:
        raise EmptyInput("at least one generator is required")
    if gens[0] <= 0:
        raise ValueError("generators must be positive integers")
    if math.gcd(*gens) != 1:
        raise NonCoprimeGenerators(f"gcd of {gens} exceeds 1")

    lo, hi = gens[0], gens[-1]
    window = (lo - 1) * (hi - 1) + hi
    while True:
        bits = _closure(gens, window)
        gap_mask = ~bits & ((1 << window) - 1)
        conductor = gap_mask.bit_length()
        # A run of `lo` consecutive members certifies that everything at
        # and above the run is a member; otherwise the window was too
        # small (the initial window provably suffices for a coprime pair).
        if window - conductor >= lo:
            break
        window *= 2

    member_bitmap = bits & ((1 << conductor) - 1)
    genus = conductor - member_bitmap.bit_count()
    min_gens = _minimal_generators(bits, conductor, lo)
    return NumericalSemigroup(min_gens, conductor, genus, member_bitmap)


def is_member(S: NumericalSemigroup, x: int) -> bool:
    """Membership of an arbitrary integer (negatives are never members)."""
    if x < 0:
        return False
    if x >= S.conductor:
        return True
    return (S.member_bitmap >> x) & 1 == 1


@dataclass(frozen=True)
class TwoGenSemigroup:
    """Semigroup generated by two coprime integers 2 <= a < b.

    ``c`` is the inverse of b modulo a, precomputed so that membership
    and the unique representation are O(1).
    """

    a: int
    b: int
    c: int = field(init=False)

    def __post_init__(self):
        if self.a < 2:
            raise ValueError("smaller generator must be at least 2")
        if self.b <= self.a:
            raise ValueError("generators must satisfy a < b")
        if math.gcd(self.a, self.b) != 1:
            raise NonCoprimeGenerators(f"gcd({self.a}, {self.b}) exceeds 1")
        object.__setattr__(self, "c", pow(self.b, -1, self.a))

    @property
    def genus(self) -> int:
        return (self.a - 1) * (self.b - 1) // 2

    def __contains__(self, i: int) -> bool:
        return is_member_two_gen(self, i)


def is_member_two_gen(S: TwoGenSemigroup, i: int) -> bool:
    """O(1) membership: b * ((i*c) mod a) <= i."""
    if i < 0:
        return False
    return S.b * ((i * S.c) % S.a) <= i


def unique_representation(S: TwoGenSemigroup, i: int) -> tuple[int, int] | None:
    """The unique (m, n) with i = m*a + n*b, m >= 0, 0 <= n <= a-1.

    Returns None when i is not a member.
    """
    if i < 0:
        return None
    n = (i * S.c) % S.a
    rest = i - n * S.b
    if rest < 0:
        return None
    return (rest // S.a, n)


def is_member_consecutive(a: int, i: int) -> bool:
    """Membership in the semigroup generated by a and a+1.

    Reduces to comparing remainder and quotient: i belongs iff
    i mod a <= i // a.
    """
    if a < 2:
        raise ValueError("smaller generator must be at least 2")
    if i < 0:
        return False
    return i % a <= i // a
