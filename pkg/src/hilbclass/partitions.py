"""Integer partitions and the statistics used to index universal coefficients."""

from __future__ import annotations

from collections import Counter
from math import factorial, prod
from typing import Iterable, Iterator, NamedTuple


class PartitionStats(NamedTuple):
    length: int
    weight: int
    norm2: int
    multfact: int


class Partition(tuple):
    """A partition, stored as a tuple of positive parts in descending order.

    Being a tuple, a ``Partition`` hashes and compares equal to the plain
    descending tuple of its parts, so engine internals may use bare tuples.

    >>> Partition([1, 2, 1])
    Partition(2, 1, 1)
    >>> Partition([2, 1]).stats()
    PartitionStats(length=2, weight=3, norm2=5, multfact=1)
    """

    def __new__(cls, parts: Iterable[int] = ()):
        parts = sorted((int(p) for p in parts), reverse=True)
        if parts and parts[-1] < 1:
            raise ValueError(f"partition parts must be positive: {parts}")
        return super().__new__(cls, parts)

    def __repr__(self) -> str:
        return f"Partition({', '.join(map(str, self))})"

    def __str__(self) -> str:
        return "[" + ",".join(map(str, self)) + "]"

    @property
    def length(self) -> int:
        return len(self)

    @property
    def weight(self) -> int:
        return sum(self)

    @property
    def norm2(self) -> int:
        return sum(p * p for p in self)

    @property
    def multfact(self) -> int:
        """``prod(m_i!)`` over the multiplicities ``m_i`` of the parts."""
        return prod(factorial(m) for m in Counter(self).values())

    def stats(self) -> PartitionStats:
        return PartitionStats(self.length, self.weight, self.norm2, self.multfact)

    def concat(self, other: Iterable[int]) -> Partition:
        return Partition((*self, *other))

    @classmethod
    def parse(cls, text: str) -> Partition:
        """Inverse of ``str``: ``"[3,1,1]"`` -> ``Partition(3, 1, 1)``."""
        body = text.strip().removeprefix("[").removesuffix("]").strip()
        if not body:
            return cls()
        return cls(int(p) for p in body.split(","))


def partition_stats(lam: Iterable[int]) -> PartitionStats:
    return Partition(lam).stats()


def partition_concat(lam: Iterable[int], mu: Iterable[int]) -> Partition:
    return Partition((*lam, *mu))


def partitions_of(n: int) -> list[Partition]:
    """All partitions of ``n`` in reverse-lexicographic order.

    >>> [tuple(p) for p in partitions_of(4)]
    [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    return [Partition(p) for p in _descending(n, n)]


def _descending(n: int, largest: int) -> Iterator[tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _descending(n - first, first):
            yield (first, *rest)


def table_order(lam: Iterable[int]) -> tuple:
    """Sort key for coefficient tables: weight first, then the parts in
    lexicographic order, giving (1), (1,1), (2), (1,1,1), (2,1), (3), ..."""
    lam = tuple(lam)
    return (sum(lam), lam)
