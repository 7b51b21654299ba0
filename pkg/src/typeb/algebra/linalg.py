"""Sparse Gaussian elimination over the rational-function field."""

from __future__ import annotations

from typing import Hashable, Iterable, Mapping

from ..errors import InconsistentSystemError
from ..ring import RationalFn, Registry

CONST = None  # key of the constant term in an equation


class AffineSolver:
    """Incrementally solves ``sum a_k u_k + b = 0`` equations.

    Pivot rows are kept fully reduced: each pivot unknown is expressed in
    the current free unknowns only.  ``priority`` decides which unknown of
    an equation becomes the pivot (largest wins).
    """

    def __init__(self, registry: Registry, priority=None):
        self.registry = registry
        self.pivots: dict[Hashable, dict[Hashable, RationalFn]] = {}
        self.priority = priority or (lambda k: k)
        self.rank = 0

    def _reduce(self, eq: Mapping[Hashable, RationalFn]) -> dict[Hashable, RationalFn]:
        out: dict[Hashable, RationalFn] = {}
        for k, a in eq.items():
            if a.is_zero():
                continue
            row = self.pivots.get(k) if k is not CONST else None
            if row is None:
                _acc(out, k, a)
            else:
                for j, b in row.items():
                    _acc(out, j, a * b)
        return out

    def add(self, eq: Mapping[Hashable, RationalFn]) -> bool:
        """Add an equation; returns True when it raised the rank."""
        eq = self._reduce(eq)
        unknowns = [k for k in eq if k is not CONST]
        if not unknowns:
            if CONST in eq:
                raise InconsistentSystemError(f"inconsistent equation: {eq[CONST]} = 0")
            return False
        p = max(unknowns, key=self.priority)
        inv = -eq.pop(p).inverse()
        row = {k: a * inv for k, a in eq.items()}
        # substitute into existing pivots
        for k, other in self.pivots.items():
            a = other.pop(p, None)
            if a is not None:
                for j, b in row.items():
                    _acc(other, j, a * b)
        self.pivots[p] = row
        self.rank += 1
        return True

    def add_all(self, eqs: Iterable[Mapping[Hashable, RationalFn]]) -> None:
        for eq in eqs:
            self.add(eq)

    def free(self, unknowns: Iterable[Hashable]) -> list[Hashable]:
        return [k for k in unknowns if k not in self.pivots]

    def value(self, k: Hashable, assignment: Mapping[Hashable, RationalFn]) -> RationalFn:
        """Value of unknown ``k`` once free unknowns are assigned."""
        if k not in self.pivots:
            return assignment[k]
        total = self.registry.zero
        for j, a in self.pivots[k].items():
            total = total + (a if j is CONST else a * assignment[j])
        return total


def _acc(out: dict, k, c: RationalFn) -> None:
    prev = out.get(k)
    if prev is None:
        if not c.is_zero():
            out[k] = c
    else:
        s = prev + c
        if s.is_zero():
            del out[k]
        else:
            out[k] = s


def rank_fraction_matrix(rows: list[list]) -> int:
    """Rank of a matrix of Fractions (exact)."""
    m = [list(r) for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        pv = m[rank][col]
        for i in range(len(m)):
            if i != rank and m[i][col] != 0:
                f = m[i][col] / pv
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank
