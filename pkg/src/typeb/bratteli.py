"""Bratteli combinatorics for B*B_n: pairs of Young diagrams.

Level ``n`` holds the pairs of total size n, n-2, ...; consecutive levels
are joined when one box is added to or removed from either component.
The sum of squared path counts at level ``n`` should equal 2^n (2n-1)!!.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .algebra.presentations import double_factorial_odd
from .errors import UsageError

Partition = tuple[int, ...]


@dataclass(frozen=True, order=True)
class PartitionPair:
    left: Partition = ()
    right: Partition = ()

    def __post_init__(self):
        for p in (self.left, self.right):
            if any(x <= 0 for x in p) or list(p) != sorted(p, reverse=True):
                raise UsageError(f"{p} is not a partition")

    @property
    def size(self) -> int:
        return sum(self.left) + sum(self.right)

    def __str__(self) -> str:
        return f"({','.join(map(str, self.left))}|{','.join(map(str, self.right))})"


@lru_cache(maxsize=None)
def partitions(k: int, largest: int | None = None) -> tuple[Partition, ...]:
    if k == 0:
        return ((),)
    largest = k if largest is None else largest
    out = []
    for first in range(min(k, largest), 0, -1):
        for rest in partitions(k - first, first):
            out.append((first,) + rest)
    return tuple(out)


def level_vertices(n: int) -> list[PartitionPair]:
    if n < 0:
        raise UsageError("levels start at 0")
    out = []
    for total in range(n, -1, -2):
        for k in range(total + 1):
            for mu in partitions(k):
                for lam in partitions(total - k):
                    out.append(PartitionPair(mu, lam))
    return sorted(out)


def _add_box(p: Partition) -> list[Partition]:
    out = []
    parts = list(p)
    for i in range(len(parts) + 1):
        if i == len(parts):
            out.append(tuple(parts + [1]))
        elif i == 0 or parts[i - 1] > parts[i]:
            q = parts.copy()
            q[i] += 1
            out.append(tuple(q))
    return out


def _remove_box(p: Partition) -> list[Partition]:
    out = []
    parts = list(p)
    for i in range(len(parts)):
        if i == len(parts) - 1 or parts[i] > parts[i + 1]:
            q = parts.copy()
            q[i] -= 1
            out.append(tuple(x for x in q if x))
    return out


def branching(p: PartitionPair) -> list[PartitionPair]:
    """Pairs reachable by adding or removing one box in either component."""
    out = set()
    for f in (_add_box, _remove_box):
        for mu in f(p.left):
            out.add(PartitionPair(mu, p.right))
        for lam in f(p.right):
            out.add(PartitionPair(p.left, lam))
    return sorted(out)


def path_counts(n: int) -> dict[PartitionPair, int]:
    if n < 0:
        raise UsageError("levels start at 0")
    counts = {PartitionPair(): 1}
    for level in range(1, n + 1):
        allowed = set(level_vertices(level))
        nxt: dict[PartitionPair, int] = {}
        for v, k in counts.items():
            for u in branching(v):
                if u in allowed:
                    nxt[u] = nxt.get(u, 0) + k
        counts = {v: nxt.get(v, 0) for v in sorted(allowed)}
    return counts


def dimension_check(n: int) -> bool:
    if n > 8:
        raise UsageError("dimension_check is bounded to n <= 8")
    return sum(k * k for k in path_counts(n).values()) == 2 ** n * double_factorial_odd(n)


def format_counts(counts: dict[PartitionPair, int]) -> str:
    return "\n".join(f"{v}: {k}" for v, k in sorted(counts.items()))
