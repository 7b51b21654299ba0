"""Markov traces on a tower of basis tables, by linear solving.

The unknowns are the trace values of the basis words of the top algebra.
Constraints: the trace restricts to the already solved trace of the next
lower algebra, it is central (checked against every generator, which is
enough since the generators span the algebra multiplicatively), and it
satisfies the two stabilization rules

    tr(w X_{n-1})    = (x lam)^-1 tr(w)
    tr(w X_{n-1}^-1) = (lam / x)   tr(w)

for ``w`` in the lower algebra.  Anything left undetermined becomes a fresh
parameter ``s1, s2, ...``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from ..errors import UsageError
from ..ring import RationalFn, Registry
from .engine import BasisTable, Element
from .linalg import CONST, AffineSolver, rank_fraction_matrix
from .presentations import bmw_parameters


@dataclass
class MarkovTrace:
    table: BasisTable
    values: list[RationalFn]
    parameters: tuple[str, ...]
    registry: Registry
    # parameter name -> basis word whose trace it is
    moments: dict[str, tuple[str, ...]] = field(default_factory=dict)
    lower: list["MarkovTrace"] = field(default_factory=list, repr=False)

    def __call__(self, a: Element) -> RationalFn:
        if a.table is not self.table:
            raise UsageError("element is not in the traced algebra")
        total = self.registry.zero
        for k, c in a.coeffs.items():
            total = total + c * self.values[k]
        return total

    def of_word(self, word) -> RationalFn:
        return self(self.table.word_element(word))

    def __repr__(self) -> str:
        return f"MarkovTrace({self.table.name}, params={list(self.parameters)})"


def _embed(lower: BasisTable, upper: BasisTable) -> list[Element]:
    """Images of the lower basis words in the upper table."""
    return [upper.word_element(w) for w in lower.basis]


def _equation(a: Element, b: Element | None = None, scale: RationalFn | None = None,
              rhs: RationalFn | None = None) -> dict:
    """Linear form ``tr(a) - scale*tr(b) - rhs`` as a coefficient map."""
    eq: dict = {}
    for k, c in a.coeffs.items():
        eq[k] = c
    if b is not None:
        for k, c in b.coeffs.items():
            prev = eq.get(k)
            v = -scale * c
            eq[k] = v if prev is None else prev + v
    if rhs is not None and not rhs.is_zero():
        eq[CONST] = -rhs
    return {k: v for k, v in eq.items() if not v.is_zero()}


def solve_markov_trace(table: BasisTable, tower: Sequence[BasisTable] = (), prefix: str = "s") -> MarkovTrace:
    """Solve for the Markov trace family on ``table``.

    ``tower`` lists the lower algebras bottom-up (e.g. B*B_1, B*B_2 below
    B*B_3).  The whole tower is solved as one linear system, because the
    stabilization rules on a higher level can fix moments that look free
    lower down (for B*B_2 they determine tr(Y)).  Unknowns are pairs
    (level, basis index); pivoting prefers high levels and long words, so
    surviving parameters are traces of short low-level words.  The traces
    of the lower levels are attached as ``lower``.
    """
    levels = list(tower) + [table]
    reg = table.registry
    one = reg.one
    solver = AffineSolver(reg)

    for lv, t in enumerate(levels):
        solver.add({(lv, 0): one, CONST: -one})  # basis word 0 is the empty word
        gen_el = {g: t.gen(g) for g in t.generators}
        if lv > 0:
            lower = levels[lv - 1]
            imgs = _embed(lower, t)
            for j, img in enumerate(imgs):
                solver.add(_lift_eq(_equation(img, rhs=None), lv, extra={(lv - 1, j): -one}))
            top = _top_crossing(t)
            if top is not None:
                P = bmw_parameters(reg)
                x, lam = P["x"], P["lam"]
                plus = (x * lam).inverse()
                minus = lam / x
                Xinv = t.inverse_of_generator(top)
                for j, img in enumerate(imgs):
                    solver.add(_lift_eq(_equation(t.act_generator(img, top)), lv, extra={(lv - 1, j): -plus}))
                    solver.add(_lift_eq(_equation(t.multiply(img, Xinv)), lv, extra={(lv - 1, j): -minus}))
        for k in range(t.dimension):
            b = t.basis_element(k)
            for g in t.generators:
                solver.add(_lift_eq(_equation(t.act_generator(b, g), t.multiply(gen_el[g], b), one), lv))

    unknowns = [(lv, k) for lv, t in enumerate(levels) for k in range(t.dimension)]
    free = solver.free(unknowns)
    names = _numbered(prefix, 0, len(free), reg)
    new_reg = reg.extend(*names)
    assignment = {k: new_reg.var(nm) for k, nm in zip(free, names)}
    moments = {nm: levels[lv].basis[k] for (lv, k), nm in zip(free, names)}
    traces: list[MarkovTrace] = []
    for lv, t in enumerate(levels):
        values = [solver.value((lv, k), assignment).lift(new_reg) for k in range(t.dimension)]
        params = tuple(sorted({v for val in values for v in val.variables() if v in names},
                              key=names.index))
        tr = MarkovTrace(t, values, params, new_reg,
                         {nm: w for nm, w in moments.items() if nm in params})
        tr.lower = list(traces)
        traces.append(tr)
    return traces[-1]


def _lift_eq(eq: dict, level: int, extra: dict | None = None) -> dict:
    out = {(k if k is CONST else (level, k)): v for k, v in eq.items()}
    if extra:
        out.update(extra)
    return out


def _numbered(prefix: str, start: int, count: int, reg: Registry) -> list[str]:
    out, k = [], start + 1
    while len(out) < count:
        nm = f"{prefix}{k}"
        if nm not in reg:
            out.append(nm)
        k += 1
    return out


def _top_crossing(table: BasisTable) -> str | None:
    xs = [g for g in table.generators if g.startswith("X") and g != "X0"]
    if not xs:
        return None
    return max(xs, key=lambda g: int(g[1:]))


def check_e_rule(tr: MarkovTrace, lower: BasisTable) -> bool:
    """tr(w e_{n-1}) == tr(w)/x for every lower basis word ``w``."""
    table = tr.table
    top = _top_crossing(table)
    e = "e" + top[1:]
    x = bmw_parameters(table.registry)["x"]
    for img in _embed(lower, table):
        if tr(table.act_generator(img, e)) != tr(img) / x:
            return False
    return True


def random_specialization(names: Sequence[str], rng: random.Random,
                          avoid: Sequence[Fraction] = (0, 1, -1)) -> dict[str, Fraction]:
    out = {}
    for nm in names:
        while True:
            v = Fraction(rng.randint(-30, 30), rng.randint(1, 12))
            if v not in avoid:
                break
        out[nm] = v
    return out


def gram_rank(tr: MarkovTrace, values: Mapping[str, Fraction]) -> int:
    """Rank of ``tr(b_i b_j)`` at a rational point (exact)."""
    table = tr.table.specialize({k: v for k, v in values.items() if k in tr.table.registry})
    tv = [v.evaluate(values) for v in tr.values]
    n = table.dimension
    rows = []
    for i in range(n):
        bi = table.basis_element(i)
        row = []
        for j in range(n):
            prod = table.act_word(bi, table.basis[j])
            row.append(sum((c.constant_value() * tv[k] for k, c in prod.coeffs.items()), Fraction(0)))
        rows.append(row)
    return rank_fraction_matrix(rows)


def is_nondegenerate(tr: MarkovTrace, seed: int = 0) -> bool:
    rng = random.Random(seed)
    names = [n for n in tr.registry.names]
    vals = random_specialization(names, rng)
    return gram_rank(tr, vals) == tr.table.dimension
