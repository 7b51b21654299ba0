"""Finite-dimensional algebras from presentations by linear closure.

``compute_basis`` runs a vector enumeration on the right regular module:
vectors are defined as ``v_parent * g``; every defining relation is pushed
through every live vector and any nonzero result is a linear dependency,
eliminated by Gaussian elimination over the rational-function field.  The
newest vector of a dependency is always the one eliminated, so surviving
vectors carry short defining words.  When every live vector has all
generator images and all relations vanish on it, the live vectors form a
basis of the algebra and the generator images are its structure constants.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from ..errors import DomainError, NonConfluenceError, UsageError
from ..ring import RationalFn, Registry

log = logging.getLogger(__name__)

Word = tuple[str, ...]
Combination = dict  # Word -> RationalFn, or int -> RationalFn for vectors


def _as_rf(c, registry: Registry) -> RationalFn:
    return c if isinstance(c, RationalFn) else RationalFn.constant(registry, c)


def _word_key(word: Word, order: Mapping[str, int]):
    return (len(word), tuple(order[g] for g in word))


@dataclass
class Presentation:
    """Generators, directed rewrite rules and formal inverses.

    ``rules`` pairs a left word with a linear combination of strictly
    smaller words (length-lex, generator order as listed).  ``inverses``
    maps a generator to a linear combination of words equal to its inverse.
    """

    name: str
    registry: Registry
    generators: tuple[str, ...]
    rules: list[tuple[Word, dict[Word, RationalFn]]]
    inverses: dict[str, dict[Word, RationalFn]] = field(default_factory=dict)
    expected_dim: int | None = None
    aliases: dict[str, dict[Word, RationalFn]] = field(default_factory=dict)

    def __post_init__(self):
        self.rules = [(tuple(lhs), {tuple(w): _as_rf(c, self.registry) for w, c in rhs.items()})
                      for lhs, rhs in self.rules]
        self.inverses = {g: {tuple(w): _as_rf(c, self.registry) for w, c in e.items()}
                         for g, e in self.inverses.items()}
        order = {g: i for i, g in enumerate(self.generators)}
        for lhs, rhs in self.rules:
            for word in (lhs, *rhs):
                for g in word:
                    if g not in order:
                        raise UsageError(f"{self.name}: undeclared generator {g!r} in rule {lhs}")
            for word in rhs:
                if _word_key(word, order) >= _word_key(lhs, order):
                    raise UsageError(f"{self.name}: rule {lhs} -> ... is not length-lex decreasing ({word})")

    @property
    def order(self) -> dict[str, int]:
        return {g: i for i, g in enumerate(self.generators)}

    def relations(self) -> list[list[tuple[RationalFn, Word]]]:
        one = self.registry.one
        out = []
        for lhs, rhs in self.rules:
            rel = [(one, lhs)]
            rel.extend((-c, w) for w, c in rhs.items())
            out.append(rel)
        return out


# ---------------------------------------------------------------------------
# Vector enumeration


class _Enumerator:
    def __init__(self, pres: Presentation, bound: int | None):
        self.pres = pres
        self.reg = pres.registry
        self.gens = pres.generators
        self.ng = len(self.gens)
        self.gidx = {g: i for i, g in enumerate(self.gens)}
        self.relations = [
            [(c, tuple(self.gidx[g] for g in w)) for c, w in rel] for rel in pres.relations()
        ]
        self.words: list[tuple[int, ...]] = [()]
        self.rows: list[list | None] = [[None] * self.ng]
        self.alive = [True]
        self.repl: dict[int, dict[int, RationalFn]] = {}
        self.n_alive = 1
        self.queue: deque = deque()
        self.bound = bound
        self.one = self.reg.one

    # -- vectors
    def _define(self, k: int, g: int) -> int:
        m = len(self.words)
        self.words.append(self.words[k] + (g,))
        self.rows.append([None] * self.ng)
        self.alive.append(True)
        self.n_alive += 1
        self.rows[k][g] = {m: self.one}
        if self.bound is not None and self.n_alive > self.bound:
            raise NonConfluenceError(
                f"{self.pres.name}: closure exceeded {self.bound} live vectors",
                self.word_names(self.words[m]),
            )
        return m

    def word_names(self, word: Sequence[int]) -> Word:
        return tuple(self.gens[g] for g in word)

    def reduce(self, comb: dict[int, RationalFn]) -> dict[int, RationalFn]:
        if all(self.alive[k] for k in comb):
            return comb
        out: dict[int, RationalFn] = {}
        for k, c in comb.items():
            if self.alive[k]:
                _acc(out, k, c)
            else:
                r = self.repl[k]
                if not all(self.alive[j] for j in r):
                    r = self.reduce(r)
                    self.repl[k] = r
                for j, cj in r.items():
                    _acc(out, j, c * cj)
        return out

    def act(self, comb: dict[int, RationalFn], g: int) -> dict[int, RationalFn]:
        out: dict[int, RationalFn] = {}
        for k, c in self.reduce(comb).items():
            row = self.rows[k][g]
            if row is None:
                m = self._define(k, g)
                _acc(out, m, c)
                continue
            if not all(self.alive[j] for j in row):
                row = self.reduce(row)
                self.rows[k][g] = row
            for j, cj in row.items():
                _acc(out, j, c * cj if not cj.is_one() else c)
        return out

    def push(self, v: int, rel) -> dict[int, RationalFn]:
        total: dict[int, RationalFn] = {}
        cache: dict[tuple[int, ...], dict[int, RationalFn]] = {(): {v: self.one}}
        for coeff, word in rel:
            comb = cache[()]
            for depth in range(1, len(word) + 1):
                prefix = word[:depth]
                nxt = cache.get(prefix)
                if nxt is None:
                    nxt = self.act(comb, word[depth - 1])
                    cache[prefix] = nxt
                comb = nxt
            for j, cj in self.reduce(comb).items():
                _acc(total, j, coeff * cj)
        return self.reduce(total)

    def impose(self, comb: dict[int, RationalFn]) -> None:
        comb = self.reduce(comb)
        comb = {k: c for k, c in comb.items() if not c.is_zero()}
        if not comb:
            return
        p = max(comb)
        cp = comb.pop(p)
        inv = -cp.inverse()
        self.repl[p] = {k: c * inv for k, c in comb.items()}
        self.alive[p] = False
        self.n_alive -= 1
        row = self.rows[p]
        self.rows[p] = None
        for g, image in enumerate(row):
            if image is not None:
                self.queue.append((p, g, image))

    def drain(self) -> None:
        while self.queue:
            p, g, image = self.queue.popleft()
            lhs = self.act(self.repl[p], g)
            diff = dict(lhs)
            for j, c in self.reduce(image).items():
                _acc(diff, j, -c)
            self.impose(diff)

    def run(self) -> None:
        i = 0
        while i < len(self.words):
            if self.alive[i]:
                for rel in self.relations:
                    self.impose(self.push(i, rel))
                    self.drain()
                    if not self.alive[i]:
                        break
            if self.alive[i]:
                for g in range(self.ng):
                    if self.rows[i][g] is None:
                        self._define(i, g)
            i += 1
        log.debug("%s: %d vectors defined, %d live", self.pres.name, len(self.words), self.n_alive)


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


# ---------------------------------------------------------------------------
# Basis tables and elements


@dataclass(frozen=True)
class Element:
    """Linear combination of basis words of a :class:`BasisTable`."""

    table: "BasisTable"
    coeffs: Mapping[int, RationalFn]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", {k: c for k, c in self.coeffs.items() if not c.is_zero()})

    def __add__(self, other):
        if not isinstance(other, Element):
            other = self.table.scalar(other)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            _acc(out, k, c)
        return Element(self.table, out)

    __radd__ = __add__

    def __neg__(self):
        return Element(self.table, {k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other):
        if not isinstance(other, Element):
            other = self.table.scalar(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Element):
            return self.table.multiply(self, other)
        return Element(self.table, {k: c * other for k, c in self.coeffs.items()})

    def __rmul__(self, other):
        return Element(self.table, {k: other * c for k, c in self.coeffs.items()})

    def __truediv__(self, other):
        return self * (self.table.registry.one / other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Element):
            other = self.table.scalar(other)
        return other.table is self.table and dict(self.coeffs) == dict(other.coeffs)

    def __hash__(self):
        return hash(tuple(sorted((k, hash(c)) for k, c in self.coeffs.items())))

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, word: Word | str) -> RationalFn:
        k = self.table.index_of(word)
        return self.coeffs.get(k, self.table.registry.zero)

    def map_coefficients(self, f) -> "Element":
        return Element(self.table, {k: f(c) for k, c in self.coeffs.items()})

    def __str__(self) -> str:
        return self.table.render(self)

    __repr__ = __str__


class BasisTable:
    """Basis words plus right-multiplication structure constants."""

    def __init__(self, presentation: Presentation, words: list[Word], right: list[list[dict[int, RationalFn]]]):
        self.presentation = presentation
        self.registry = presentation.registry
        self.generators = presentation.generators
        self.basis = words
        self.right = right
        self._gidx = {g: i for i, g in enumerate(self.generators)}
        self._index = {w: i for i, w in enumerate(words)}
        self._inverse_cache: dict[str, Element] = {}

    @property
    def name(self) -> str:
        return self.presentation.name

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def __len__(self) -> int:
        return len(self.basis)

    def __repr__(self) -> str:
        return f"BasisTable({self.name}, dim={self.dimension})"

    def index_of(self, word: Word | str) -> int:
        if isinstance(word, str):
            word = tuple(word.split()) if word else ()
        try:
            return self._index[tuple(word)]
        except KeyError:
            raise UsageError(f"{word} is not a basis word of {self.name}") from None

    # -- constructors
    def scalar(self, value) -> Element:
        if not isinstance(value, RationalFn):
            value = RationalFn.constant(self.registry, value)
        return Element(self, {0: value})

    @property
    def unit(self) -> Element:
        return self.scalar(1)

    def zero(self) -> Element:
        return Element(self, {})

    def basis_element(self, k: int) -> Element:
        return Element(self, {k: self.registry.one})

    def gen(self, name: str) -> Element:
        if name in self.presentation.aliases:
            return self.combination(self.presentation.aliases[name])
        return self.act_generator(self.unit, name)

    def combination(self, comb: Mapping[Word, RationalFn]) -> Element:
        total = self.zero()
        for word, c in comb.items():
            total = total + self.word_element(word) * c
        return total

    # -- products
    def act_generator(self, a: Element, g: str) -> Element:
        gi = self._gidx.get(g)
        if gi is None:
            raise UsageError(f"{self.name} has no generator {g!r}")
        out: dict[int, RationalFn] = {}
        for k, c in a.coeffs.items():
            for j, cj in self.right[k][gi].items():
                _acc(out, j, c * cj)
        return Element(self, out)

    def act_word(self, a: Element, word: Iterable[str]) -> Element:
        for g in word:
            a = self.act_generator(a, g)
        return a

    def word_element(self, word: Iterable[str]) -> Element:
        return self.act_word(self.unit, word)

    def multiply(self, a: Element, b: Element) -> Element:
        if a.table is not self or b.table is not self:
            raise UsageError("elements belong to different algebras")
        total: dict[int, RationalFn] = {}
        memo: dict[Word, Element] = {(): a}
        for k, c in b.coeffs.items():
            word = self.basis[k]
            prod = memo.get(word)
            if prod is None:
                # longest cached prefix
                depth = len(word)
                while word[:depth] not in memo:
                    depth -= 1
                prod = memo[word[:depth]]
                for d in range(depth, len(word)):
                    prod = self.act_generator(prod, word[d])
                    memo[word[: d + 1]] = prod
            for j, cj in prod.coeffs.items():
                _acc(total, j, cj * c)
        return Element(self, total)

    def inverse_of_generator(self, g: str) -> Element:
        if g not in self._inverse_cache:
            expr = self.presentation.inverses.get(g)
            if expr is None:
                raise DomainError(f"generator {g} of {self.name} has no declared inverse")
            inv = self.combination(expr)
            if self.multiply(self.gen(g), inv) != self.unit or self.multiply(inv, self.gen(g)) != self.unit:
                raise DomainError(f"declared inverse of {g} in {self.name} is not an inverse")
            self._inverse_cache[g] = inv
        return self._inverse_cache[g]

    def element_of_letters(self, letters: Iterable[tuple[str, int]]) -> Element:
        """Product of generators and inverses, ``(name, ±1)`` pairs, left to right."""
        acc = self.unit
        for g, p in letters:
            if p == 1:
                if g in self.presentation.aliases:
                    acc = self.multiply(acc, self.gen(g))
                else:
                    acc = self.act_generator(acc, g)
            elif p == -1:
                acc = self.multiply(acc, self.inverse_of_generator(g))
            else:
                raise UsageError(f"power {p} not supported")
        return acc

    # -- output
    def render(self, a: Element) -> str:
        if not a.coeffs:
            return "0"
        parts = []
        for k in sorted(a.coeffs):
            word = " ".join(self.basis[k]) or "1"
            parts.append(f"({a.coeffs[k]})*[{word}]")
        return " + ".join(parts)

    def dump(self) -> str:
        """Line-oriented listing of basis words and structure constants."""
        lines = [f"# {self.name} dim {self.dimension}"]
        for k, word in enumerate(self.basis):
            lines.append(f"basis {k} [{' '.join(word)}]")
        for k in range(self.dimension):
            for gi, g in enumerate(self.generators):
                row = self.right[k][gi]
                terms = " + ".join(f"({row[j]})*{j}" for j in sorted(row)) or "0"
                lines.append(f"{k} * {g} = {terms}")
        return "\n".join(lines)

    def specialize(self, bindings: Mapping) -> "BasisTable":
        """Same basis, coefficients substituted (e.g. rational parameter values)."""
        from ..ring import substitute

        pres = self.presentation
        sub = lambda c: substitute(c, bindings)  # noqa: E731
        new_pres = Presentation(
            pres.name, pres.registry, pres.generators,
            [(lhs, {w: sub(c) for w, c in rhs.items()}) for lhs, rhs in pres.rules],
            {g: {w: sub(c) for w, c in e.items()} for g, e in pres.inverses.items()},
            pres.expected_dim,
            {g: {w: sub(c) for w, c in e.items()} for g, e in pres.aliases.items()},
        )
        right = [[{j: sub(c) for j, c in row.items()} for row in rows] for rows in self.right]
        for rows in right:
            for row in rows:
                for j in [j for j, c in row.items() if c.is_zero()]:
                    del row[j]
        return BasisTable(new_pres, list(self.basis), right)


def compute_basis(p: Presentation, bound: int | None = None) -> BasisTable:
    """Close ``p`` into a basis table.

    ``bound`` caps the number of simultaneously live vectors (default four
    times ``expected_dim`` when known); exceeding it raises
    :class:`NonConfluenceError`.
    """
    if bound is None and p.expected_dim is not None:
        bound = 4 * p.expected_dim + 16
    en = _Enumerator(p, bound)
    en.run()
    live = [k for k in range(len(en.words)) if en.alive[k]]
    pos = {k: i for i, k in enumerate(live)}
    words = [en.word_names(en.words[k]) for k in live]
    right = []
    for k in live:
        rows = []
        for g in range(en.ng):
            row = en.reduce(en.rows[k][g])
            rows.append({pos[j]: c for j, c in row.items() if not c.is_zero()})
        right.append(rows)
    table = BasisTable(p, words, right)
    if p.expected_dim is not None and table.dimension != p.expected_dim:
        log.warning("%s: closure dimension %d differs from expected %d", p.name, table.dimension, p.expected_dim)
    return table


def multiply(t: BasisTable, a: Element, b: Element) -> Element:
    return t.multiply(a, b)


def generator_name(table: BasisTable, index: int) -> str:
    """Name of the braid generator X_index in ``table`` (``Y`` or ``X0`` for 0)."""
    if index == 0:
        for name in ("Y", "X0"):
            if name in table.generators:
                return name
        raise UsageError(f"{table.name} has no wall generator")
    name = f"X{index}"
    if name not in table.generators:
        raise UsageError(f"{table.name} has no generator {name}")
    return name


def element_of_word(t: BasisTable, w) -> Element:
    """Image of a braid word (``BraidWord`` or ``(index, ±1)`` letters).

    Inverse letters act through the declared inverse combination, word by
    word, so no full products are formed.
    """
    letters = w.letters if hasattr(w, "letters") else w
    acc = t.unit
    for i, p in letters:
        g = generator_name(t, i)
        if p == 1:
            acc = t.act_generator(acc, g)
        elif p == -1:
            t.inverse_of_generator(g)  # validates the declared inverse once
            out = t.zero()
            for word, c in t.presentation.inverses[g].items():
                out = out + t.act_word(acc, word) * c
            acc = out
        else:
            raise UsageError(f"power {p} not supported")
    return acc
