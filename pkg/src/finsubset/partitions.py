"""Ordered compositions of integers and the signed binomial coefficient."""

from __future__ import annotations

from functools import total_ordering
from itertools import combinations
from math import comb


class InvalidArgument(ValueError):
    pass


class PartTooSmall(ValueError):
    pass


class IndexOutOfRange(IndexError):
    pass


@total_ordering
class Composition:
    """An ordered partition ``(s_1, ..., s_l)`` of ``|S| = s_1 + ... + s_l``.

    Immutable and hashable.  The total order compares length first and then
    the parts lexicographically; it is what fixes basis orders downstream.
    """

    __slots__ = ("parts",)

    def __init__(self, parts):
        parts = tuple(int(p) for p in parts)
        if not parts:
            raise InvalidArgument("a composition needs at least one part")
        if any(p < 1 for p in parts):
            raise InvalidArgument(f"parts must be positive: {parts}")
        object.__setattr__(self, "parts", parts)

    def __setattr__(self, name, value):
        raise AttributeError("Composition is immutable")

    def norm(self) -> int:
        return sum(self.parts)

    def length(self) -> int:
        return len(self.parts)

    def __len__(self):
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    def prefix_norm(self, a: int) -> int:
        """``|S|_{[a-1]}|``: sum of the parts strictly before 1-based position ``a``."""
        return sum(self.parts[: a - 1])

    def restrict(self, positions) -> "Composition":
        """Keep the parts at the given 1-based positions, in order."""
        return Composition(self.parts[i - 1] for i in sorted(positions))

    def sort_key(self):
        return (len(self.parts), self.parts)

    def __eq__(self, other):
        if not isinstance(other, Composition):
            return NotImplemented
        return self.parts == other.parts

    def __lt__(self, other):
        if not isinstance(other, Composition):
            return NotImplemented
        return self.sort_key() < other.sort_key()

    def __hash__(self):
        return hash(self.parts)

    def __repr__(self):
        return f"Composition({self.parts})"

    def __str__(self):
        return "(" + ",".join(map(str, self.parts)) + ")"


def compositions(j: int) -> list[Composition]:
    """All ``2**(j-1)`` compositions of ``j``.

    Order: bit ``i`` of a counter ``b`` in ``range(2**(j-1))`` means "break
    after position ``i+1``", and compositions are listed by increasing
    ``b``.  So ``compositions(3)`` is ``(3), (1,2), (2,1), (1,1,1)``.
    """
    if j < 1:
        raise InvalidArgument(f"compositions need j >= 1, got {j}")
    out = []
    for bars in range(1 << (j - 1)):
        parts, run = [], 1
        for i in range(j - 1):
            if bars >> i & 1:
                parts.append(run)
                run = 1
            else:
                run += 1
        parts.append(run)
        out.append(Composition(parts))
    return out


def compositions_of_length(j: int, length: int) -> list[Composition]:
    """Compositions of ``j`` with exactly ``length`` parts, in ascending total order."""
    if j < 1 or length < 1 or length > j:
        return []
    out = []
    for cuts in combinations(range(1, j), length - 1):
        bounds = (0,) + cuts + (j,)
        out.append(Composition(b - a for a, b in zip(bounds, bounds[1:])))
    out.sort()
    return out


def merge(s: Composition, a: int) -> Composition:
    """Merge parts ``a`` and ``a+1`` (1-based)."""
    if not 1 <= a <= len(s) - 1:
        raise IndexOutOfRange(f"merge position {a} out of range for {s}")
    p = s.parts
    return Composition(p[: a - 1] + (p[a - 1] + p[a],) + p[a + 1:])


def decrement(s: Composition, a: int) -> Composition:
    """Lower part ``a`` (1-based) by one.  A part equal to 1 cannot be lowered."""
    if not 1 <= a <= len(s):
        raise IndexOutOfRange(f"decrement position {a} out of range for {s}")
    p = s.parts
    if p[a - 1] < 2:
        raise PartTooSmall(f"part {a} of {s} is 1")
    return Composition(p[: a - 1] + (p[a - 1] - 1,) + p[a:])


def signed_binomial(m: int, r: int) -> int:
    """Closed form of the (-1)-binomial coefficient."""
    if m < 0 or r < 0 or r > m:
        raise InvalidArgument(f"need 0 <= r <= m, got m={m}, r={r}")
    if (r * (m - r)) % 2:
        return 0
    return comb(m // 2, r // 2)

