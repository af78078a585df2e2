"""Partitions, multipartitions and the statistics used throughout the package."""
from __future__ import annotations

from collections import Counter
from functools import lru_cache
from itertools import product
from math import factorial, prod
from typing import Iterable, Sequence


class Partition(tuple):
    """A nonincreasing tuple of positive integers."""

    def __new__(cls, parts: Iterable[int] = ()):
        parts = tuple(int(p) for p in parts)
        if any(p <= 0 for p in parts):
            raise ValueError(f"partition parts must be positive: {parts}")
        if any(parts[k] < parts[k + 1] for k in range(len(parts) - 1)):
            raise ValueError(f"partition parts must be nonincreasing: {parts}")
        return super().__new__(cls, parts)

    @property
    def size(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    @property
    def age(self) -> int:
        return self.size - self.length

    @property
    def aut(self) -> int:
        return prod(factorial(m) for m in Counter(self).values())

    @property
    def z(self) -> int:
        return z_of(self)

    def conjugate(self) -> Partition:
        if not self:
            return Partition()
        return Partition(sum(1 for p in self if p > j) for j in range(self[0]))

    def boxes(self) -> list[tuple[int, int]]:
        return [(r, c) for r, p in enumerate(self) for c in range(p)]

    def arm_leg(self, box: tuple[int, int]) -> tuple[int, int]:
        return arm_leg(self, box)

    def multiplicities(self) -> dict[int, int]:
        return dict(Counter(self))

    def dominates(self, other: Partition) -> bool:
        """True if self >= other in dominance order (same size assumed)."""
        a = b = 0
        for k in range(max(len(self), len(other))):
            a += self[k] if k < len(self) else 0
            b += other[k] if k < len(other) else 0
            if a < b:
                return False
        return True

    def __repr__(self):
        return f"Partition({list(self)})"


class MultiPartition(tuple):
    """An s-tuple of partitions; slot k belongs to fixed point k."""

    def __new__(cls, slots: Iterable[Iterable[int]] = ()):
        return super().__new__(cls, tuple(p if isinstance(p, Partition) else Partition(p) for p in slots))

    @property
    def size(self) -> int:
        return sum(p.size for p in self)

    @property
    def length(self) -> int:
        return sum(p.length for p in self)

    @property
    def age(self) -> int:
        return sum(p.age for p in self)

    @property
    def slot_sizes(self) -> tuple[int, ...]:
        return tuple(p.size for p in self)

    def to_json(self) -> list[list[int]]:
        return [list(p) for p in self]

    def __repr__(self):
        return f"MultiPartition({[list(p) for p in self]})"


def z_of(lam: Sequence[int]) -> int:
    """Centralizer order |Aut(lam)| * prod(parts)."""
    return prod(factorial(m) for m in Counter(lam).values()) * prod(lam)


def arm_leg(lam: Sequence[int], box: tuple[int, int]) -> tuple[int, int]:
    """(arm, leg) of a box (row, col) in the Young diagram, rows drawn downward."""
    r, c = box
    if r < 0 or c < 0 or r >= len(lam) or c >= lam[r]:
        raise ValueError(f"box {box} is outside the diagram of {list(lam)}")
    arm = lam[r] - c - 1
    leg = sum(1 for p in lam[r + 1:] if p > c)
    return arm, leg


def hook_product(lam: Sequence[int]) -> int:
    out = 1
    for r, p in enumerate(lam):
        for c in range(p):
            a, l = arm_leg(lam, (r, c))
            out *= a + l + 1
    return out


@lru_cache(maxsize=None)
def _partitions(n: int, largest: int) -> tuple[tuple[int, ...], ...]:
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


def enumerate_partitions(n: int, descending: bool = True) -> list[Partition]:
    """All partitions of n, lexicographically descending by default."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    parts = [Partition(p) for p in _partitions(n, n)]
    return parts if descending else parts[::-1]


def partition_count(n: int) -> int:
    return len(_partitions(n, n))


def _compositions(n: int, s: int):
    if s == 1:
        yield (n,)
        return
    for first in range(n, -1, -1):
        for rest in _compositions(n - first, s - 1):
            yield (first,) + rest


def enumerate_multipartitions(n: int, s: int) -> list[MultiPartition]:
    """All s-tuples of partitions with total size n, in descending lex order."""
    if n < 0 or s < 1:
        raise ValueError("need n >= 0 and s >= 1")
    out = []
    for sizes in _compositions(n, s):
        for combo in product(*(enumerate_partitions(k) for k in sizes)):
            out.append(MultiPartition(combo))
    out.sort(reverse=True)
    return out


def multipartitions_with_sizes(sizes: Sequence[int]) -> list[MultiPartition]:
    out = [MultiPartition(c) for c in product(*(enumerate_partitions(k) for k in sizes))]
    out.sort(reverse=True)
    return out


def cycle_type(perm: Sequence[int]) -> Partition:
    """Cycle type of a permutation given as the image list of 0..n-1."""
    n = len(perm)
    seen = [False] * n
    lengths = []
    for start in range(n):
        if seen[start]:
            continue
        k, length = start, 0
        while not seen[k]:
            seen[k] = True
            k = perm[k]
            length += 1
        lengths.append(length)
    return Partition(sorted(lengths, reverse=True))


def parse_partition(text: str) -> Partition:
    """Parse '2,1', '[2,1]', '(2 1)' or '' into a Partition."""
    body = text.strip().strip("[]()")
    if not body:
        return Partition()
    return Partition(sorted((int(x) for x in body.replace(",", " ").split()), reverse=True))
