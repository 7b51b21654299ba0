"""Presentations of the type-B Hecke, BMW and Temperley-Lieb quotients.

Generator names: ``Y`` (also the Hecke ``X0``), ``X1..X{n-1}``,
``e0..e{n-1}``.  Rule directions follow length-lex with generators in the
listed order.
"""

from __future__ import annotations

from math import factorial, prod

from ..errors import DegeneracyError, UsageError
from ..ring import DEFAULT, RationalFn, Registry
from .engine import Presentation, Word


def double_factorial_odd(n: int) -> int:
    """(2n-1)!! = 1*3*...*(2n-1); equals 1 for n = 0."""
    return prod(range(1, 2 * n, 2))


def bmw_parameters(registry: Registry = DEFAULT) -> dict[str, RationalFn]:
    q, lam, q1 = registry.vars("q", "lam", "q1")
    delta = q - q.inverse()
    x = 1 - (lam - lam.inverse()) / delta
    return {"q": q, "lam": lam, "q1": q1, "q0": q.inverse(), "delta": delta, "x": x}


def _rule(lhs: str, rhs: dict[str, RationalFn] | None = None) -> tuple[Word, dict[Word, RationalFn]]:
    def w(s: str) -> Word:
        return tuple(s.split()) if s else ()

    return w(lhs), {w(k): v for k, v in (rhs or {}).items()}


def _check_nondegenerate(values: dict[str, RationalFn], names: tuple[str, ...]) -> None:
    for name in names:
        if values[name].is_zero():
            raise DegeneracyError(f"parameter {name} vanishes; the presentation divides by it")


def present_heckeB(n: int, registry: Registry = DEFAULT) -> Presentation:
    """HB_n with parameters Q (crossings) and Q0 (wall)."""
    if n < 1:
        raise UsageError("HB_n needs n >= 1")
    Q, Q0 = registry.vars("Q", "Q0")
    gens = tuple(["X0"] + [f"X{i}" for i in range(1, n)])
    rules = [_rule("X0 X0", {"X0": Q0 - 1, "": Q0})]
    for i in range(1, n):
        rules.append(_rule(f"X{i} X{i}", {f"X{i}": Q - 1, "": Q}))
    rules += _braid_rules([f"X{i}" for i in range(1, n)], wall="X0")
    inverses = {"X0": {("X0",): 1 / Q0, (): (1 - Q0) / Q0}}
    for i in range(1, n):
        inverses[f"X{i}"] = {(f"X{i}",): 1 / Q, (): (1 - Q) / Q}
    return Presentation(f"HB{n}", registry, gens, rules, inverses, expected_dim=2**n * factorial(n))


def _braid_rules(xs: list[str], wall: str | None) -> list:
    """Commutation, braid and four-term rules for crossings ``xs`` (= X1..)."""
    rules = []
    m = len(xs)
    for a in range(m):
        for b in range(a + 1, m):
            if b - a > 1:
                rules.append(_rule(f"{xs[b]} {xs[a]}", {f"{xs[a]} {xs[b]}": 1}))
            else:
                rules.append(_rule(f"{xs[b]} {xs[a]} {xs[b]}", {f"{xs[a]} {xs[b]} {xs[a]}": 1}))
    if wall is not None and m >= 1:
        rules.append(_rule(f"{xs[0]} {wall} {xs[0]} {wall}", {f"{wall} {xs[0]} {wall} {xs[0]}": 1}))
        for a in range(1, m):
            rules.append(_rule(f"{xs[a]} {wall}", {f"{wall} {xs[a]}": 1}))
    return rules


def _bmw_rules(n: int, P: dict[str, RationalFn], symmetric: bool) -> list:
    """Type-A BMW relations on X1..X{n-1}, e1..e{n-1}.

    ``X_i^{-1} = X_i - delta + delta e_i``; with ``X_i e_i = lam e_i`` this makes
    ``X_i^2 = 1 + delta X_i - delta lam e_i``.  ``e_i X_{i-1}^{-1} e_i = lam e_i``
    is carried in the equivalent form ``e_i e_{i-1} e_i = e_i``.
    """
    lam, delta, x = P["lam"], P["delta"], P["x"]
    rules = []
    xs = [f"X{i}" for i in range(1, n)]
    es = [f"e{i}" for i in range(1, n)]
    for i in range(1, n):
        X, e = f"X{i}", f"e{i}"
        rules.append(_rule(f"{X} {X}", {"": 1, X: delta, e: -delta * lam}))
        rules.append(_rule(f"{X} {e}", {e: lam}))
        rules.append(_rule(f"{e} {X}", {e: lam}))
        rules.append(_rule(f"{e} {e}", {e: x}))
    for i in range(2, n):
        e, ep, Xp = f"e{i}", f"e{i-1}", f"X{i-1}"
        rules.append(_rule(f"{e} {Xp} {e}", {e: lam.inverse()}))
        rules.append(_rule(f"{e} {ep} {e}", {e: 1}))
        if symmetric:
            X = f"X{i}"
            rules.append(_rule(f"{ep} {X} {ep}", {ep: lam.inverse()}))
            rules.append(_rule(f"{ep} {e} {ep}", {ep: 1}))
    rules += _braid_rules(xs, wall=None)
    # e_b commutes with X_a, e_a whenever the strands are disjoint
    for a in range(1, n):
        for b in range(1, n):
            if abs(a - b) > 1:
                rules.append(_rule(f"e{b} X{a}", {f"X{a} e{b}": 1}))
                if a < b:
                    rules.append(_rule(f"e{b} e{a}", {f"e{a} e{b}": 1}))
    return rules


def present_bmwA(n: int, registry: Registry = DEFAULT, symmetric: bool = False) -> Presentation:
    """Type-A BMW algebra on X1..X{n-1} (the B*B_n relations not involving Y)."""
    if n < 2:
        raise UsageError("BMW-A needs n >= 2")
    P = bmw_parameters(registry)
    gens = tuple([f"X{i}" for i in range(1, n)] + [f"e{i}" for i in range(1, n)])
    rules = _bmw_rules(n, P, symmetric)
    inverses = {f"X{i}": {(f"X{i}",): registry.one, (): -P["delta"], (f"e{i}",): P["delta"]} for i in range(1, n)}
    return Presentation(f"BMWA{n}", registry, gens, rules, inverses, expected_dim=double_factorial_odd(n))


def present_bmwB(n: int, registry: Registry = DEFAULT, symmetric: bool = False) -> Presentation:
    """The reduced type-B BMW algebra B*B_n (q0 specialised to q^-1)."""
    if n < 1:
        raise UsageError("B*B_n needs n >= 1")
    if n > 3:
        raise UsageError("B*B_n closure is only supported for n <= 3")
    P = bmw_parameters(registry)
    q1, q0 = P["q1"], P["q0"]
    gens = tuple(["Y"] + [f"X{i}" for i in range(1, n)] + [f"e{i}" for i in range(1, n)])
    rules = [_rule("Y Y", {"Y": q1, "": q0})]
    if n >= 2:
        rules += _bmw_rules(n, P, symmetric)
        rules += [
            _rule("X1 Y X1 Y", {"Y X1 Y X1": 1}),
            _rule("Y X1 Y e1", {"e1": 1}),
        ]
        for i in range(2, n):
            rules.append(_rule(f"X{i} Y", {f"Y X{i}": 1}))
            rules.append(_rule(f"e{i} Y", {f"Y e{i}": 1}))
    inverses = {"Y": {("Y",): 1 / q0, (): -q1 / q0}}
    for i in range(1, n):
        inverses[f"X{i}"] = {(f"X{i}",): registry.one, (): -P["delta"], (f"e{i}",): P["delta"]}
    return Presentation(f"BBB{n}", registry, gens, rules, inverses, expected_dim=2**n * double_factorial_odd(n))


def present_tlb(n: int, registry: Registry = DEFAULT) -> Presentation:
    """TB_n: generators e0..e{n-1}, loop parameters c, cp (= c'), d."""
    if n < 1:
        raise UsageError("TB_n needs n >= 1")
    c, cp, d = registry.vars("c", "cp", "d")
    gens = tuple(f"e{i}" for i in range(n))
    rules = [_rule("e0 e0", {"e0": d})]
    for i in range(1, n):
        rules.append(_rule(f"e{i} e{i}", {f"e{i}": c}))
    if n >= 2:
        rules.append(_rule("e1 e0 e1", {"e1": cp}))
    for i in range(1, n):
        for j in range(1, n):
            if abs(i - j) == 1:
                rules.append(_rule(f"e{i} e{j} e{i}", {f"e{i}": 1}))
    for i in range(n):
        for j in range(i + 2, n):
            rules.append(_rule(f"e{j} e{i}", {f"e{i} e{j}": 1}))
    from math import comb

    return Presentation(f"TB{n}", registry, gens, rules, {}, expected_dim=comb(2 * n, n))


def idempotent_presentation(registry: Registry = DEFAULT) -> Presentation:
    """One generator g with g^2 = g (dimension 2)."""
    return Presentation("idem", registry, ("g",), [_rule("g g", {"g": registry.one})], expected_dim=2)
