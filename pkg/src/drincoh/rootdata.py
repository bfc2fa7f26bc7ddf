"""Type A_n root combinatorics: subsets of the simple roots, compositions,
and the subset lattice indexing parabolic subgroups of GL_{n+1}.

The n simple roots are indexed 0..n-1.  A subset I is stored as a bitmask;
I determines (and is determined by) a composition of n+1: the composition's
interior partial sums are exactly the positions j+1 with root j missing
from I.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations


@dataclass(frozen=True)
class ParabolicType:
    """A subset of the n simple roots, as a bitmask over {0, ..., n-1}.

    Ordering is lexicographic on the sorted member tuple, so lists of
    subsets sort the same way on every run.
    """

    n: int
    mask: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"rank must be >= 1, got n={self.n}")
        if self.mask < 0 or self.mask >> self.n:
            raise ValueError(f"mask {self.mask:#b} has bits outside 0..{self.n - 1}")

    def __lt__(self, other: "ParabolicType") -> bool:
        if self.n != other.n:
            return self.n < other.n
        return self.members < other.members

    @property
    def members(self) -> tuple[int, ...]:
        return tuple(j for j in range(self.n) if self.mask >> j & 1)

    @property
    def size(self) -> int:
        return bin(self.mask).count("1")

    @property
    def is_proper(self) -> bool:
        return self.mask != (1 << self.n) - 1

    def contains(self, other: "ParabolicType") -> bool:
        return self.n == other.n and other.mask & ~self.mask == 0

    def union(self, *roots: int) -> "ParabolicType":
        m = self.mask
        for j in roots:
            m |= 1 << j
        return ParabolicType(self.n, m)

    def without(self, root: int) -> "ParabolicType":
        return ParabolicType(self.n, self.mask & ~(1 << root))

    @staticmethod
    def full(n: int) -> "ParabolicType":
        return ParabolicType(n, (1 << n) - 1)

    @staticmethod
    def empty(n: int) -> "ParabolicType":
        return ParabolicType(n, 0)

    @staticmethod
    def of(n: int, members) -> "ParabolicType":
        m = 0
        for j in members:
            m |= 1 << j
        return ParabolicType(n, m)

    @staticmethod
    def from_composition(comp) -> "ParabolicType":
        """Inverse of to_composition."""
        comp = tuple(comp)
        if not comp or any(p <= 0 for p in comp):
            raise ValueError(f"composition parts must be positive, got {comp}")
        n = sum(comp) - 1
        mask = 0
        pos = 0
        for part in comp:
            for j in range(pos, pos + part - 1):
                mask |= 1 << j
            pos += part
        return ParabolicType(n, mask)

    def to_composition(self) -> tuple[int, ...]:
        """The composition of n+1 whose interior cuts sit after each missing root."""
        parts = []
        start = 0
        for j in range(self.n):
            if not self.mask >> j & 1:
                parts.append(j + 1 - start)
                start = j + 1
        parts.append(self.n + 1 - start)
        return tuple(parts)

    def subset_str(self) -> str:
        return "{" + ",".join(f"a{j}" for j in self.members) + "}"

    def composition_str(self) -> str:
        return "(" + ",".join(str(p) for p in self.to_composition()) + ")"

    def __str__(self) -> str:
        return self.composition_str()


def standard_subset(n: int, j: int) -> ParabolicType:
    """The prefix subset {0, ..., j-1}; empty for j = 0, full for j = n."""
    if not 0 <= j <= n:
        raise ValueError(f"need 0 <= j <= n, got j={j}, n={n}")
    return ParabolicType(n, (1 << j) - 1)


def i_of_I(I: ParabolicType) -> int:
    """Smallest root index missing from I.  Rejects the full subset."""
    if not I.is_proper:
        raise ValueError("i_of_I is undefined for the full subset")
    j = 0
    while I.mask >> j & 1:
        j += 1
    return j


def cover_sign(I: ParabolicType, a: int) -> int:
    """Sign attached to the lattice covering J = I ∪ {a} -> I.

    Equals (-1)^k where k is the position of root a among the roots missing
    from I.  This is the unique alternating convention (up to global basis
    rescaling) making the subset-lattice differentials square to zero,
    including against the augmentation term.
    """
    if I.mask >> a & 1:
        raise ValueError(f"root {a} is not missing from {I.subset_str()}")
    missing_below = (~I.mask & ((1 << a) - 1)).bit_count()
    return -1 if missing_below % 2 else 1


def subsets_of_size(
    n: int,
    c: int,
    containing: ParabolicType | None = None,
    proper: bool = True,
) -> list[ParabolicType]:
    """All size-c subsets of the n simple roots, optionally constrained.

    Ordered lexicographically by member tuple.
    """
    if not 0 <= c <= n:
        raise ValueError(f"need 0 <= c <= n, got c={c}")
    lower = containing if containing is not None else ParabolicType.empty(n)
    if lower.n != n:
        raise ValueError(f"containing has rank {lower.n}, expected {n}")
    out = []
    for members in combinations(range(n), c):
        I = ParabolicType.of(n, members)
        if not I.contains(lower):
            continue
        if proper and not I.is_proper:
            continue
        out.append(I)
    return out
