"""Baxterized R(t), the boundary element K(t), and exact YBE / RE checks.

The identities are checked inside the finite-dimensional algebras
themselves (BMW-A_3 for Yang-Baxter, B*B_2 for the reflection equation),
through a small adapter so the same code also runs in the Temperley-Lieb
quotient TB_n.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Mapping

from .algebra.engine import BasisTable, Element
from .algebra.presentations import bmw_parameters
from .errors import DomainError, UsageError
from .ring import RationalFn, Registry, substitute
from .tlb import TLB, TlbElement


class GenAlgebra:
    """What the spectral checks need: unit, X_i, e_i, Y, products."""

    registry: Registry
    params: dict[str, RationalFn]

    def one(self): ...
    def X(self, i: int): ...
    def e(self, i: int): ...
    def Y(self): ...
    def mul(self, a, b): ...
    def coefficients(self, a) -> dict: ...
    def label(self, key) -> str: ...


class TableAlgebra(GenAlgebra):
    def __init__(self, table: BasisTable, values: Mapping | None = None):
        self.table = table
        self.registry = table.registry
        P = bmw_parameters(self.registry)
        self.params = {k: substitute(v, values) for k, v in P.items()} if values else P

    def _gen(self, name: str) -> Element:
        if name not in self.table.generators:
            raise UsageError(f"{self.table.name} has no generator {name}")
        return self.table.gen(name)

    def one(self):
        return self.table.unit

    def X(self, i):
        return self._gen(f"X{i}")

    def e(self, i):
        return self._gen(f"e{i}")

    def Y(self):
        return self._gen("Y")

    def mul(self, a, b):
        return self.table.multiply(a, b)

    def coefficients(self, a):
        return dict(a.coeffs)

    def label(self, key):
        return "[" + (" ".join(self.table.basis[key]) or "1") + "]"


class QuotientAlgebra(GenAlgebra):
    """TB_n with X_i -> a + b e_i, Y -> al + be e0 and BMW parameters."""

    def __init__(self, alg: TLB, images: Mapping[str, RationalFn], params: Mapping[str, RationalFn]):
        self.alg = alg
        self.registry = alg.registry
        self.images = dict(images)
        self.params = dict(params)

    def one(self):
        return self.alg.unit()

    def X(self, i):
        return self.alg.linear(self.images["a"], self.images["b"], i)

    def e(self, i):
        return self.alg.gen(i)

    def Y(self):
        return self.alg.linear(self.images["al"], self.images["be"], 0)

    def mul(self, a, b):
        return a * b

    def coefficients(self, a):
        return dict(a.coeffs)

    def label(self, key):
        return f"[{key}]"


def _adapt(alg) -> GenAlgebra:
    if isinstance(alg, GenAlgebra):
        return alg
    if isinstance(alg, BasisTable):
        return TableAlgebra(alg)
    raise UsageError(f"cannot use {type(alg).__name__} as a generator algebra")


def baxterized_R(t: RationalFn, i: int, alg) -> Element | TlbElement:
    """-delta t (t + q/lam) + (t-1)(t + q/lam) X_i + delta t (t-1) e_i."""
    A = _adapt(alg)
    P = A.params
    q, lam, delta = P["q"], P["lam"], P["delta"]
    s = t + q / lam
    return A.one() * (-delta * t * s) + A.X(i) * ((t - 1) * s) + A.e(i) * (delta * t * (t - 1))


def boundary_K(t: RationalFn, f1: RationalFn | None, alg) -> Element | TlbElement:
    """(t^2 q1 / (1 - t^2) + Y) f1."""
    A = _adapt(alg)
    den = 1 - t * t
    if den.is_zero():
        raise DomainError("K(t) has a pole at t = ±1")
    f1 = A.registry.one if f1 is None else f1
    q1 = A.params["q1"]
    return (A.one() * (t * t * q1 / den) + A.Y()) * f1


@dataclass
class CheckResult:
    passed: bool
    witness: str = ""

    def __bool__(self) -> bool:
        return self.passed


def _lcm(a, b):
    g = a.gcd(b)
    return (a * b) / g


def compare_cleared(A: GenAlgebra, lhs, rhs) -> CheckResult:
    """Multiply both sides by the lcm of all denominators, compare numerators."""
    cl, cr = A.coefficients(lhs), A.coefficients(rhs)
    reg = None
    den = None
    for c in list(cl.values()) + list(cr.values()):
        reg = c.registry if reg is None or len(c.registry) > len(reg) else reg
    if reg is None:
        return CheckResult(True)
    one = reg.ctx.constant(1)
    den = one
    cl = {k: v.lift(reg) for k, v in cl.items()}
    cr = {k: v.lift(reg) for k, v in cr.items()}
    for c in list(cl.values()) + list(cr.values()):
        den = _lcm(den, c.den)
    for key in sorted(set(cl) | set(cr), key=str):
        a, b = cl.get(key), cr.get(key)
        na = (a.num * den) / a.den if a is not None else reg.ctx.constant(0)
        nb = (b.num * den) / b.den if b is not None else reg.ctx.constant(0)
        if na != nb:
            diff = (a if a is not None else reg.zero) - (b if b is not None else reg.zero)
            return CheckResult(False, f"{A.label(key)}: {diff}")
    return CheckResult(True)


RBuilder = Callable[[RationalFn, int, GenAlgebra], object]
KBuilder = Callable[[RationalFn, GenAlgebra], object]


def check_ybe(alg, R: RBuilder | None = None) -> CheckResult:
    """R_1(t1) R_2(t1 t2) R_1(t2) == R_2(t2) R_1(t1 t2) R_2(t1)."""
    A = _adapt(alg)
    R = R or baxterized_R
    t1, t2 = A.registry.vars("t1", "t2")
    m = A.mul
    lhs = m(m(R(t1, 1, A), R(t1 * t2, 2, A)), R(t2, 1, A))
    rhs = m(m(R(t2, 2, A), R(t1 * t2, 1, A)), R(t1, 2, A))
    return compare_cleared(A, lhs, rhs)


def check_re(alg, K: KBuilder | None = None, R: RBuilder | None = None) -> CheckResult:
    """R(t1/t2) K(t1) R(t1 t2) K(t2) == K(t2) R(t1 t2) K(t1) R(t1/t2) on strand 1."""
    A = _adapt(alg)
    R = R or baxterized_R
    K = K or (lambda t, A: boundary_K(t, None, A))
    t1, t2 = A.registry.vars("t1", "t2")
    m = A.mul
    lhs = m(m(m(R(t1 / t2, 1, A), K(t1, A)), R(t1 * t2, 1, A)), K(t2, A))
    rhs = m(m(m(K(t2, A), R(t1 * t2, 1, A)), K(t1, A)), R(t1 / t2, 1, A))
    return compare_cleared(A, lhs, rhs)


def symbolic_f1_K(registry: Registry) -> tuple[KBuilder, Registry]:
    """K builder whose dressing f1 is a fresh variable per spectral argument."""
    reg = registry.extend("f1a", "f1b")
    fa, fb = reg.vars("f1a", "f1b")
    t1 = reg.var("t1")

    def K(t, A):
        # K(t1) gets f1a, anything else (t2) gets f1b
        f = fa if t == t1 else fb
        return boundary_K(t, f, A)

    return K, reg


def specialize_table(table: BasisTable, seed: int, names=("q", "lam", "q1")) -> tuple[TableAlgebra, dict]:
    """``table`` with q, lam, q1 replaced by random nondegenerate rationals."""
    from fractions import Fraction

    rng = random.Random(seed)
    while True:
        vals = {n: Fraction(rng.choice([-1, 1]) * rng.randint(2, 9), rng.randint(1, 5)) for n in names}
        q, lam = vals["q"], vals["lam"]
        delta = q - 1 / q
        if delta == 0 or lam in (0, 1, -1) or vals["q1"] == 0:
            continue
        x = 1 - (lam - 1 / lam) / delta
        if x != 0:
            break
    return TableAlgebra(table.specialize(vals), vals), vals


def tl_quotient(n: int, registry: Registry | None = None, al: RationalFn | None = None,
                be: RationalFn | None = None) -> QuotientAlgebra:
    """TB_n as a quotient of B*B_n.

    ``X -> q + q^-1 E`` sends the BMW ``e_i`` to the diagram ``E_i`` and
    forces ``lam = -q^-3``, ``c = -q^2 - q^-2``.  For ``Y -> al + be e0``
    the relations ``Y^2 = q1 Y + q^-1`` and ``Y X1 Y e1 = e1`` fix
    ``cp``, ``d`` and ``q1``; the four-term relation then holds.
    """
    from .ring import DEFAULT

    reg = registry or DEFAULT
    q = reg.var("q")
    al = reg.one if al is None else al
    be = reg.one if be is None else be
    qi = q.inverse()
    c = -q * q - qi * qi
    cp = (q + qi * qi * al * al) / (al * be)
    d = -(qi + al * al) / (al * be)
    lam = -qi ** 3
    params = {"q": q, "lam": lam, "delta": q - qi, "q1": al - qi / al, "q0": qi,
              "x": c}
    alg = TLB(n, {"c": c, "cp": cp, "d": d}, reg)
    return QuotientAlgebra(alg, {"a": q, "b": qi, "al": al, "be": be}, params)


def presentation_holds(pres, A: GenAlgebra) -> CheckResult:
    """Every rule of a B*B / BMW presentation holds for the images in ``A``."""
    P = pres.registry
    binding = {"lam": A.params["lam"], "q1": A.params["q1"]}

    def image(name: str):
        if name == "Y":
            return A.Y()
        if name.startswith("X"):
            return A.X(int(name[1:]))
        return A.e(int(name[1:]))

    def word(w):
        acc = A.one()
        for g in w:
            acc = A.mul(acc, image(g))
        return acc

    for lhs, rhs in pres.rules:
        total = word(lhs)
        for w, c in rhs.items():
            total = total - word(w) * substitute(c, binding)
        if not all(v.is_zero() for v in A.coefficients(total).values()):
            return CheckResult(False, " ".join(lhs))
    return CheckResult(True)
