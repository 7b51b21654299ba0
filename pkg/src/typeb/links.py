"""The type-B link invariant of a closed ZB_n word, two ways.

``kauffman_B`` evaluates ``x^(n-1) lam^e tr(w)`` with the Markov trace
solved on the B*B tower (n <= 3).  ``jones_B`` goes through the blob
algebra: ``c^(n-1) mu^e tr(image)`` where ``tr`` is the closure trace at
``zw = c, zb = c'`` and ``mu`` makes positive and negative stabilization
cost nothing.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache

from .algebra.engine import compute_basis, element_of_word
from .algebra.presentations import bmw_parameters, present_bmwB
from .algebra.trace import MarkovTrace, solve_markov_trace
from .braid import (
    BraidWord,
    conjugate,
    destabilize,
    exponent_sum,
    random_word,
    relation_shuffle,
    stabilize,
)
from .errors import CapabilityError, UsageError
from .ring import RationalFn
from .tlb import SkeinSolution, braid_image, planar_trace, solve_skein

MAX_KAUFFMAN = 3
MAX_JONES = 6


@lru_cache(maxsize=None)
def kauffman_traces() -> tuple[MarkovTrace, ...]:
    """Markov traces on B*B_1 .. B*B_3, solved together (one parameter set)."""
    tables = [compute_basis(present_bmwB(n)) for n in range(1, MAX_KAUFFMAN + 1)]
    top = solve_markov_trace(tables[-1], tables[:-1])
    return tuple(top.lower) + (top,)


def kauffman_B(w: BraidWord) -> RationalFn:
    n = w.strands
    if n > MAX_KAUFFMAN:
        raise CapabilityError(f"kauffman_B supports at most {MAX_KAUFFMAN} strands; use jones_B")
    tr = kauffman_traces()[n - 1]
    P = bmw_parameters(tr.table.registry)
    x, lam = P["x"], P["lam"]
    return x ** (n - 1) * lam ** exponent_sum(w) * tr(element_of_word(tr.table, w))


@dataclass(frozen=True)
class JonesNormalization:
    c: RationalFn
    mu: RationalFn


@lru_cache(maxsize=None)
def default_skein() -> SkeinSolution:
    return solve_skein()


def jones_normalization(sol: SkeinSolution) -> JonesNormalization:
    """``mu`` with ``c mu (a + b/c) = 1``; checks the negative twin rule."""
    v = sol.values
    a, b, c = v["a"], v["b"], v["c"]
    kplus = a + b / c
    gamma = -b / (a * (a + b * c))
    kminus = a.inverse() + gamma / c
    mu = (c * kplus).inverse()
    if c * kminus / mu != 1:
        raise UsageError("skein branch admits no writhe normalization")
    return JonesNormalization(c, mu)


def jones_B(w: BraidWord, sol: SkeinSolution | None = None) -> RationalFn:
    n = w.strands
    if n > MAX_JONES:
        raise CapabilityError(f"jones_B supports at most {MAX_JONES} strands")
    sol = sol or default_skein()
    N = jones_normalization(sol)
    return N.c ** (n - 1) * N.mu ** exponent_sum(w) * planar_trace(braid_image(w, sol))


def bracket_state_sum(w: BraidWord, sol: SkeinSolution | None = None) -> RationalFn:
    """Independent A-type route for words without ``Y``.

    Every crossing is smoothed either vertically or into a cup-cap with the
    weights of ``X -> a + b e`` and ``X^-1 -> 1/a + (1/b) e``; the closed
    diagram's loops are counted by union-find, then normalised like
    ``jones_B``.
    """
    if any(i == 0 for i, _ in w.letters):
        raise UsageError("state sum covers words without the wall generator")
    sol = sol or default_skein()
    v = sol.values
    a, b, c = v["a"], v["b"], v["c"]
    n, L = w.strands, len(w.letters)
    total = c.registry.zero
    for mask in range(1 << L):
        # nodes: (level, strand) for level 0..L; level L is glued to level 0
        parent = list(range((L + 1) * n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(x, y):
            parent[find(x)] = find(y)

        weight = c.registry.one
        for lv, (i, p) in enumerate(w.letters):
            cup = (mask >> lv) & 1
            for s in range(n):
                if not cup or s not in (i - 1, i):
                    union(lv * n + s, (lv + 1) * n + s)
            if cup:
                union(lv * n + i - 1, lv * n + i)
                union((lv + 1) * n + i - 1, (lv + 1) * n + i)
                weight = weight * (b if p == 1 else b.inverse())
            else:
                weight = weight * (a if p == 1 else a.inverse())
        for s in range(n):
            union(L * n + s, s)
        loops = len({find(x) for x in range((L + 1) * n)})
        total = total + weight * c ** loops
    N = jones_normalization(sol)
    return N.c ** (n - 1) * N.mu ** exponent_sum(w) * total / c ** n


# ---------------------------------------------------------------------------
# Randomized invariance


@dataclass
class InvarianceReport:
    trials: int = 0
    passes: dict = field(default_factory=lambda: {"kauffman": 0, "jones": 0})
    failures: dict = field(default_factory=lambda: {"kauffman": 0, "jones": 0})
    first_counterexample: str | None = None
    lines: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not any(self.failures.values())

    def summary(self) -> str:
        out = [f"trials {self.trials}"]
        for k in ("kauffman", "jones"):
            out.append(f"{k} pass {self.passes[k]} fail {self.failures[k]}")
        if self.first_counterexample:
            out.append(f"first counterexample: {self.first_counterexample}")
        return "\n".join(out)


def random_moves(w: BraidWord, rng: random.Random, max_strands: int = MAX_KAUFFMAN) -> tuple[BraidWord, list[str]]:
    """Apply 1-3 random Markov-type moves; returns the new word and a log."""
    log = []
    for _ in range(rng.randint(1, 3)):
        kinds = ["shuffle", "conjugate"]
        if w.strands < max_strands:
            kinds += ["stabilize_pos", "stabilize_neg"]
        try:
            destabilize(w)
            kinds.append("destabilize")
        except UsageError:
            pass
        kind = rng.choice(kinds)
        if kind == "shuffle":
            steps = rng.randint(5, 20)
            w = relation_shuffle(w, steps, rng.randrange(2**31))
            log.append(f"shuffle({steps})")
        elif kind == "conjugate":
            by = random_word(w.strands, rng.randint(1, 2), rng)
            w = conjugate(w, by)
            log.append(f"conjugate({by})")
        elif kind == "stabilize_pos":
            w = stabilize(w, 1)
            log.append("stabilize_pos")
        elif kind == "stabilize_neg":
            w = stabilize(w, -1)
            log.append("stabilize_neg")
        else:
            w = destabilize(w)
            log.append("destabilize")
    return w, log


def invariance_suite(trials: int, seed: int, routes=("kauffman", "jones"), max_len: int = 4,
                     start: int = 0) -> InvarianceReport:
    """Trial ``k`` draws from its own stream seeded by ``(seed, k)``."""
    rep = InvarianceReport()
    fns = {"kauffman": kauffman_B, "jones": jones_B}
    for k in range(start, start + trials):
        rng = random.Random(f"{seed}:{k}")
        n = rng.randint(1, MAX_KAUFFMAN)
        w = random_word(n, rng.randint(0, max_len), rng)
        w2, log = random_moves(w, rng)
        rep.trials += 1
        for route in routes:
            same = fns[route](w) == fns[route](w2)
            if same:
                rep.passes[route] += 1
            else:
                rep.failures[route] += 1
                if rep.first_counterexample is None:
                    rep.first_counterexample = f"{route}: [{w}] n={w.strands} -> [{w2}] n={w2.strands} via {', '.join(log)}"
        rep.lines.append(f"{k}: n={n} [{w}] -> n={w2.strands} [{w2}] {' '.join(log)}")
    return rep
