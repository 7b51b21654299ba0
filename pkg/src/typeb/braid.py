"""Words in the type-B braid group ZB_n.

Letters are ``(index, power)`` with ``index`` 0 for the wall generator
``Y = X_0`` and ``1..n-1`` for the ordinary crossings ``X_k``.  Words are
never brought to a normal form; equality questions go through quotients
(signed permutations here, algebra images elsewhere).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import ParseError, UsageError

Letter = tuple[int, int]


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        if self.strands < 1:
            raise UsageError("a braid needs at least one strand")
        letters = tuple((int(i), int(p)) for i, p in self.letters)
        for i, p in letters:
            if not 0 <= i < self.strands or p not in (1, -1):
                raise UsageError(f"letter {(i, p)} invalid for {self.strands} strands")
        object.__setattr__(self, "letters", letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        n = max(self.strands, other.strands)
        return BraidWord(n, self.letters + other.letters)

    def inverse(self) -> "BraidWord":
        return BraidWord(self.strands, tuple((i, -p) for i, p in reversed(self.letters)))

    def with_strands(self, n: int) -> "BraidWord":
        return BraidWord(n, self.letters)

    def __str__(self) -> str:
        return format_braid(self)


def format_braid(w: BraidWord) -> str:
    toks = []
    for i, p in w.letters:
        if i == 0:
            toks.append("y" if p == 1 else "y'")
        else:
            toks.append(str(i * p))
    return " ".join(toks)


def parse_braid(text: str | Sequence[str], n: int) -> BraidWord:
    """Tokens ``y``, ``y'`` and signed integers ``±1..±(n-1)``."""
    tokens = text.split() if isinstance(text, str) else list(text)
    letters = []
    for pos, tok in enumerate(tokens):
        if tok in ("y", "Y"):
            letters.append((0, 1))
        elif tok in ("y'", "Y'"):
            letters.append((0, -1))
        else:
            try:
                k = int(tok)
            except ValueError:
                raise ParseError(f"bad braid token {tok!r}", pos) from None
            if k == 0 or abs(k) >= n:
                raise ParseError(f"generator {tok} out of range for {n} strands", pos)
            letters.append((abs(k), 1 if k > 0 else -1))
    return BraidWord(n, tuple(letters))


def free_reduce(w: BraidWord) -> BraidWord:
    stack: list[Letter] = []
    for i, p in w.letters:
        if stack and stack[-1] == (i, -p):
            stack.pop()
        else:
            stack.append((i, p))
    return BraidWord(w.strands, tuple(stack))


def exponent_sum(w: BraidWord) -> int:
    """Sum of powers of the crossings; wall letters count zero."""
    return sum(p for i, p in w.letters if i >= 1)


# ---------------------------------------------------------------------------
# The Coxeter quotient


@dataclass(frozen=True)
class SignedPermutation:
    """``images[k-1]`` is the signed image of position ``k``."""

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(abs(x) for x in self.images) != list(range(1, len(self.images) + 1)):
            raise UsageError(f"{self.images} is not a signed permutation")

    @classmethod
    def identity(cls, n: int) -> "SignedPermutation":
        return cls(tuple(range(1, n + 1)))

    def __call__(self, k: int) -> int:
        img = self.images[abs(k) - 1]
        return img if k > 0 else -img

    def __mul__(self, other: "SignedPermutation") -> "SignedPermutation":
        # (self * other)(k) = self(other(k))
        return SignedPermutation(tuple(self(other(k)) for k in range(1, len(self.images) + 1)))

    def inverse(self) -> "SignedPermutation":
        out = [0] * len(self.images)
        for k, img in enumerate(self.images, start=1):
            out[abs(img) - 1] = k if img > 0 else -k
        return SignedPermutation(tuple(out))


def generator_permutation(index: int, n: int) -> SignedPermutation:
    images = list(range(1, n + 1))
    if index == 0:
        images[0] = -1
    else:
        images[index - 1], images[index] = images[index], images[index - 1]
    return SignedPermutation(tuple(images))


def signed_permutation(w: BraidWord) -> SignedPermutation:
    perm = SignedPermutation.identity(w.strands)
    for i, _ in w.letters:
        # generators are involutions in the quotient, so the power is irrelevant
        perm = perm * generator_permutation(i, w.strands)
    return perm


def coxeter_closure(n: int) -> set[SignedPermutation]:
    """All products of the generator images, by breadth-first closure."""
    gens = [generator_permutation(i, n) for i in range(n)]
    seen = {SignedPermutation.identity(n)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                r = p * g
                if r not in seen:
                    seen.add(r)
                    nxt.append(r)
        frontier = nxt
    return seen


# ---------------------------------------------------------------------------
# Markov moves


def conjugate(w: BraidWord, by: BraidWord) -> BraidWord:
    if by.strands > w.strands:
        raise UsageError("conjugating word has more strands than the braid")
    return BraidWord(w.strands, by.letters + w.letters + by.inverse().letters)


def stabilize(w: BraidWord, power: int = 1) -> BraidWord:
    return BraidWord(w.strands + 1, w.letters + ((w.strands, power),))


def destabilize(w: BraidWord) -> BraidWord:
    n = w.strands
    if n < 2 or not w.letters or w.letters[-1][0] != n - 1:
        raise UsageError("destabilize needs a word ending in X_{n-1}^{±1}")
    if sum(1 for i, _ in w.letters if i == n - 1) != 1:
        raise UsageError("X_{n-1} must occur exactly once to destabilize")
    return BraidWord(n - 1, w.letters[:-1])


def markov_move(w: BraidWord, move: str, by: BraidWord | None = None) -> BraidWord:
    """``move`` is one of ``conjugate`` (needs ``by``), ``stabilize_pos``,
    ``stabilize_neg``, ``destabilize``."""
    if move == "conjugate":
        if by is None:
            raise UsageError("conjugate needs a conjugating word")
        return conjugate(w, by)
    if move == "stabilize_pos":
        return stabilize(w, 1)
    if move == "stabilize_neg":
        return stabilize(w, -1)
    if move == "destabilize":
        return destabilize(w)
    raise UsageError(f"unknown Markov move {move!r}")


# ---------------------------------------------------------------------------
# Random rewriting with the defining relations


def _sites(letters: tuple[Letter, ...], n: int) -> list[tuple[str, int]]:
    sites = []
    L = len(letters)
    for k in range(L - 1):
        (i, p), (j, r) = letters[k], letters[k + 1]
        if abs(i - j) > 1:
            sites.append(("commute", k))
        if i == j and p == -r:
            sites.append(("cancel", k))
    for k in range(L - 2):
        (i, p), (j, r), (m, s) = letters[k : k + 3]
        if i == m and abs(i - j) == 1 and i >= 1 and j >= 1 and p == r == s:
            sites.append(("braid", k))
    for k in range(L - 3):
        window = letters[k : k + 4]
        idx = tuple(i for i, _ in window)
        pows = {p for _, p in window}
        if len(pows) == 1 and idx in ((0, 1, 0, 1), (1, 0, 1, 0)):
            sites.append(("four", k))
    return sites


def _apply(letters: list[Letter], kind: str, k: int) -> None:
    if kind == "commute":
        letters[k], letters[k + 1] = letters[k + 1], letters[k]
    elif kind == "cancel":
        del letters[k : k + 2]
    elif kind == "braid":
        (i, p), (j, _), _ = letters[k : k + 3]
        letters[k : k + 3] = [(j, p), (i, p), (j, p)]
    elif kind == "four":
        (i, p), (j, _), _, _ = letters[k : k + 4]
        letters[k : k + 4] = [(j, p), (i, p), (j, p), (i, p)]


def relation_shuffle(w: BraidWord, steps: int, seed: int, max_growth: int = 6) -> BraidWord:
    """Apply ``steps`` random rewrites by defining relations of ZB_n.

    Rewrites are commutations, braid relations, the four-term wall relation
    and free insertion/cancellation of ``g g^-1``; the group element is
    unchanged.  Insertions are suppressed once the word has grown by
    ``max_growth`` letters so shuffles stay short.
    """
    rng = random.Random(seed)
    letters = list(w.letters)
    n = w.strands
    limit = len(letters) + max_growth
    for _ in range(steps):
        sites = _sites(tuple(letters), n)
        if len(letters) < limit:
            sites.append(("insert", rng.randrange(len(letters) + 1)))
        if not sites:
            continue
        kind, k = rng.choice(sites)
        if kind == "insert":
            i = rng.randrange(n)
            p = rng.choice((1, -1))
            letters[k:k] = [(i, p), (i, -p)]
        else:
            _apply(letters, kind, k)
    return BraidWord(n, tuple(letters))


def random_word(n: int, length: int, rng: random.Random, wall: bool = True) -> BraidWord:
    lo = 0 if wall else 1
    if n - 1 < lo:
        return BraidWord(n, ())
    return BraidWord(n, tuple((rng.randint(lo, n - 1), rng.choice((1, -1))) for _ in range(length)))


def words_equal_in_quotient(a: BraidWord, b: BraidWord) -> bool:
    return a.strands == b.strands and signed_permutation(a) == signed_permutation(b)


def concat(words: Iterable[BraidWord]) -> BraidWord:
    words = list(words)
    n = max((w.strands for w in words), default=1)
    return BraidWord(n, tuple(l for w in words for l in w.letters))
