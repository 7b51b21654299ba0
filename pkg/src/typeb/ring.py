"""Exact Laurent polynomials and rational functions over the integers.

Values live in a :class:`Registry`, an ordered tuple of variable names.
:class:`RationalFn` is the coefficient field used everywhere else; it is
stored as a coprime pair of integer polynomials (backed by FLINT's
``fmpz_mpoly``) with a positive leading denominator coefficient, so equal
values have equal representations.  :class:`LaurentPoly` is the
dictionary-of-terms form used for construction and rendering.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping, Union

from flint import fmpz_mpoly_ctx

from .errors import DomainError, ParseError, UsageError

Scalar = Union[int, Fraction]

BASE_NAMES = (
    "q", "lam", "Q", "Q0", "c", "cp", "d", "q1",
    "t", "t1", "t2", "u", "w", "f1", "zw", "zb",
)


class Registry:
    """Ordered, immutable set of variable names.

    Registries are interned by their name tuple.  A registry whose names
    extend another's is an *extension*; values coerce from a registry into
    any of its extensions, never the other way.
    """

    _cache: dict[tuple[str, ...], "Registry"] = {}

    def __new__(cls, names: Iterable[str]):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise UsageError(f"duplicate variable names in registry: {names}")
        if not names:
            raise UsageError("a registry needs at least one variable")
        reg = cls._cache.get(names)
        if reg is None:
            reg = super().__new__(cls)
            reg.names = names
            reg.ctx = fmpz_mpoly_ctx.get(names, "deglex")
            reg._index = {n: i for i, n in enumerate(names)}
            cls._cache[names] = reg
        return reg

    def __repr__(self) -> str:
        return f"Registry({self.names!r})"

    def __len__(self) -> int:
        return len(self.names)

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UsageError(f"unknown variable {name!r} in {self}") from None

    def extend(self, *names: str) -> "Registry":
        new = [n for n in names if n not in self._index]
        return Registry(self.names + tuple(new)) if new else self

    def extends(self, other: "Registry") -> bool:
        return self.names[: len(other.names)] == other.names

    def var(self, name: str) -> "RationalFn":
        return RationalFn._raw(self, self.ctx.gens()[self.index(name)], self.ctx.constant(1))

    def vars(self, *names: str) -> tuple["RationalFn", ...]:
        return tuple(self.var(n) for n in names)

    def const(self, value: Scalar) -> "RationalFn":
        return RationalFn.constant(self, value)

    @property
    def one(self) -> "RationalFn":
        return RationalFn.constant(self, 1)

    @property
    def zero(self) -> "RationalFn":
        return RationalFn.constant(self, 0)


DEFAULT = Registry(BASE_NAMES)


def fresh_names(registry: Registry, prefix: str, count: int) -> list[str]:
    """``count`` names ``prefix1, prefix2, ...`` not yet in ``registry``."""
    out, k = [], 1
    while len(out) < count:
        name = f"{prefix}{k}"
        if name not in registry:
            out.append(name)
        k += 1
    return out


def _common(a: Registry, b: Registry) -> Registry:
    if a is b:
        return a
    if a.extends(b):
        return a
    if b.extends(a):
        return b
    raise UsageError(f"registry mismatch: {a.names} vs {b.names}")


def _lift_poly(p, src: Registry, dst: Registry):
    if src is dst:
        return p
    pad = (0,) * (len(dst) - len(src))
    return dst.ctx.from_dict({tuple(e) + pad: c for e, c in p.terms()})


# ---------------------------------------------------------------------------
# Laurent polynomials


def _term_key(exps: tuple[int, ...]):
    # graded lexicographic, largest first
    return (-sum(exps), tuple(-e for e in exps))


class LaurentPoly:
    """Finite sum of monomials with integer (possibly negative) exponents."""

    __slots__ = ("registry", "terms")

    def __init__(self, registry: Registry, terms: Mapping[tuple[int, ...], Scalar] | None = None):
        self.registry = registry
        clean: dict[tuple[int, ...], Fraction] = {}
        for exps, coeff in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != len(registry):
                raise UsageError(f"exponent vector {exps} does not match {registry}")
            coeff = Fraction(coeff)
            if coeff:
                clean[exps] = clean.get(exps, Fraction(0)) + coeff
                if not clean[exps]:
                    del clean[exps]
        self.terms = clean

    @classmethod
    def monomial(cls, registry: Registry, powers: Mapping[str, int], coeff: Scalar = 1) -> "LaurentPoly":
        exps = [0] * len(registry)
        for name, e in powers.items():
            exps[registry.index(name)] += e
        return cls(registry, {tuple(exps): coeff})

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPoly(self.registry, {(0,) * len(self.registry): other})
        return NotImplemented

    def _align(self, other: "LaurentPoly") -> tuple["LaurentPoly", "LaurentPoly"]:
        reg = _common(self.registry, other.registry)
        return self.lift(reg), other.lift(reg)

    def lift(self, registry: Registry) -> "LaurentPoly":
        if registry is self.registry:
            return self
        if not registry.extends(self.registry):
            raise UsageError(f"cannot lift {self.registry.names} into {registry.names}")
        pad = (0,) * (len(registry) - len(self.registry))
        return LaurentPoly(registry, {e + pad: c for e, c in self.terms.items()})

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._align(other)
        out = dict(a.terms)
        for e, c in b.terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(a.registry, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.registry, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._align(other)
        out: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly(a.registry, out)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RationalFn":
        return self.to_rf() / other

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        try:
            a, b = self._align(other)
        except UsageError:
            return False
        return a.terms == b.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        return sorted(self.terms.items(), key=lambda kv: _term_key(kv[0]))

    def to_rf(self) -> "RationalFn":
        reg = self.registry
        if not self.terms:
            return reg.zero
        n = len(reg)
        shift = [min(0, min(e[i] for e in self.terms)) for i in range(n)]
        den_int = 1
        for c in self.terms.values():
            den_int = den_int * c.denominator // _gcd(den_int, c.denominator)
        num = reg.ctx.from_dict({
            tuple(e[i] - shift[i] for i in range(n)): int(c * den_int)
            for e, c in self.terms.items()
        })
        den = reg.ctx.from_dict({tuple(-s for s in shift): den_int})
        return RationalFn._make(reg, num, den)

    def __str__(self) -> str:
        return render_laurent(self)

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def _render_monomial(names: tuple[str, ...], exps: tuple[int, ...]) -> str:
    parts = []
    for name, e in zip(names, exps):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def render_laurent(p: LaurentPoly) -> str:
    """Canonical text: graded-lex term order, caret exponents (``q^-1``)."""
    if not p.terms:
        return "0"
    out = []
    for i, (exps, c) in enumerate(p.sorted_terms()):
        mono = _render_monomial(p.registry.names, exps)
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if mono:
            body = mono if mag == 1 else f"{mag}*{mono}"
        else:
            body = str(mag)
        if i == 0:
            out.append(("-" if sign == "-" else "") + body)
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


# ---------------------------------------------------------------------------
# Rational functions


class RationalFn:
    """Element of Q(registry variables), kept as a reduced fraction."""

    __slots__ = ("registry", "num", "den", "_hash")

    @classmethod
    def _raw(cls, registry: Registry, num, den) -> "RationalFn":
        obj = object.__new__(cls)
        obj.registry = registry
        obj.num = num
        obj.den = den
        obj._hash = None
        return obj

    @classmethod
    def _make(cls, registry: Registry, num, den) -> "RationalFn":
        if den.is_zero():
            raise DomainError("denominator vanishes identically")
        if num.is_zero():
            return cls._raw(registry, num, registry.ctx.constant(1))
        if not den.is_one():
            if den.is_constant():
                g = _gcd(int(num.content()), int(den.leading_coefficient()))
                if g != 1:
                    num = num / g
                    den = den / g
            else:
                g = num.gcd(den)
                if not g.is_one():
                    num = num / g
                    den = den / g
            if den.leading_coefficient() < 0:
                num = -num
                den = -den
        return cls._raw(registry, num, den)

    @classmethod
    def constant(cls, registry: Registry, value: Scalar) -> "RationalFn":
        value = Fraction(value)
        ctx = registry.ctx
        return cls._raw(registry, ctx.constant(value.numerator), ctx.constant(value.denominator))

    # -- coercion helpers
    def _coerce(self, other) -> "RationalFn":
        if isinstance(other, RationalFn):
            return other
        if isinstance(other, (int, Fraction)):
            return RationalFn.constant(self.registry, other)
        if isinstance(other, LaurentPoly):
            return other.to_rf()
        return NotImplemented

    def lift(self, registry: Registry) -> "RationalFn":
        if registry is self.registry:
            return self
        if not registry.extends(self.registry):
            raise UsageError(f"cannot lift {self.registry.names} into {registry.names}")
        return RationalFn._raw(
            registry,
            _lift_poly(self.num, self.registry, registry),
            _lift_poly(self.den, self.registry, registry),
        )

    def _pair(self, other: "RationalFn"):
        if other.registry is self.registry:
            return self, other
        reg = _common(self.registry, other.registry)
        return self.lift(reg), other.lift(reg)

    # -- arithmetic
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._pair(other)
        reg = a.registry
        if a.num.is_zero():
            return b
        if b.num.is_zero():
            return a
        d1, d2 = a.den, b.den
        if d1.is_one() and d2.is_one():
            return RationalFn._raw(reg, a.num + b.num, d1)
        if d1 == d2:
            return RationalFn._make(reg, a.num + b.num, d1)
        g = d1.gcd(d2)
        if g.is_one():
            num = a.num * d2 + b.num * d1
            if num.is_zero():
                return reg.zero
            return _signfix(reg, num, d1 * d2)
        d1g, d2g = d1 / g, d2 / g
        num = a.num * d2g + b.num * d1g
        if num.is_zero():
            return reg.zero
        h = num.gcd(g)
        if not h.is_one():
            num = num / h
            g = g / h
        return _signfix(reg, num, d1g * d2g * g)

    __radd__ = __add__

    def __neg__(self):
        return RationalFn._raw(self.registry, -self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._pair(other)
        reg = a.registry
        if a.num.is_zero() or b.num.is_zero():
            return reg.zero
        n1, d1, n2, d2 = a.num, a.den, b.num, b.den
        if d1.is_one() and d2.is_one():
            return RationalFn._raw(reg, n1 * n2, d1)
        if not d2.is_one():
            g = n1.gcd(d2)
            if not g.is_one():
                n1, d2 = n1 / g, d2 / g
        if not d1.is_one():
            g = n2.gcd(d1)
            if not g.is_one():
                n2, d1 = n2 / g, d1 / g
        return _signfix(reg, n1 * n2, d1 * d2)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFn":
        if self.num.is_zero():
            raise DomainError("division by zero rational function")
        return _signfix(self.registry, self.den, self.num)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        return RationalFn._raw(self.registry, self.num ** k, self.den ** k)

    # -- comparison
    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.registry is not self.registry:
            try:
                a, b = self._pair(other)
            except UsageError:
                return False
            return a.num == b.num and a.den == b.den
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        if self._hash is None:
            # hash is registry-independent so lifted values hash alike
            self._hash = hash(str(self))
        return self._hash

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def is_one(self) -> bool:
        return self.num.is_one() and self.den.is_one()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def is_laurent(self) -> bool:
        """True when the denominator is a single monomial."""
        return len(self.den) == 1

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise UsageError(f"{self} is not constant")
        return Fraction(int(self.num.leading_coefficient()) if not self.num.is_zero() else 0,
                        int(self.den.leading_coefficient()))

    def variables(self) -> set[str]:
        used = set()
        for p in (self.num, self.den):
            for exps, _ in p.terms():
                used.update(n for n, e in zip(self.registry.names, exps) if e)
        return used

    # -- Laurent views
    def _split_den(self):
        """den = monomial * rest, with rest free of monomial content."""
        content = self.den.term_content()  # integer * monomial
        return content, self.den / content

    @property
    def numerator(self) -> LaurentPoly:
        content, _ = self._split_den()
        return _as_laurent(self.registry, self.num, content)

    @property
    def denominator(self) -> LaurentPoly:
        _, rest = self._split_den()
        return _as_laurent(self.registry, rest, self.registry.ctx.constant(1))

    def to_laurent(self) -> LaurentPoly:
        if not self.is_laurent():
            raise UsageError(f"{self} is not a Laurent polynomial")
        return self.numerator

    def __str__(self) -> str:
        num = self.numerator
        if self.is_laurent():
            return render_laurent(num)
        den = self.denominator
        return f"({render_laurent(num)})/({render_laurent(den)})"

    def __repr__(self) -> str:
        return f"RationalFn({self})"

    # -- substitution / evaluation
    def substitute(self, bindings: Mapping) -> "RationalFn":
        return substitute(self, bindings)

    def evaluate(self, values: Mapping[str, Scalar]) -> Fraction:
        """Exact rational value at a rational point (convenience, not used by checks)."""
        n = _eval_fraction(self.num, self.registry, values)
        d = _eval_fraction(self.den, self.registry, values)
        if d == 0:
            raise DomainError(f"{self} has a pole at {dict(values)}")
        return n / d


def _signfix(reg: Registry, num, den) -> RationalFn:
    if den.leading_coefficient() < 0:
        num, den = -num, -den
    return RationalFn._raw(reg, num, den)


def _as_laurent(reg: Registry, poly, monomial) -> LaurentPoly:
    (mexp, mcoeff), = list(monomial.terms())
    mc = int(mcoeff)
    return LaurentPoly(reg, {
        tuple(e - m for e, m in zip(exps, mexp)): Fraction(int(c), mc)
        for exps, c in poly.terms()
    })


def _eval_fraction(poly, reg: Registry, values: Mapping[str, Scalar]) -> Fraction:
    vals = []
    for name in reg.names:
        vals.append(Fraction(values[name]) if name in values else None)
    total = Fraction(0)
    for exps, c in poly.terms():
        term = Fraction(int(c))
        for v, e in zip(vals, exps):
            if e:
                if v is None:
                    raise UsageError("evaluate needs a value for every variable present")
                term *= v ** int(e)
        total += term
    return total


def _to_rf(value, registry: Registry) -> RationalFn:
    if isinstance(value, RationalFn):
        return value
    if isinstance(value, LaurentPoly):
        return value.to_rf()
    if isinstance(value, (int, Fraction)):
        return RationalFn.constant(registry, value)
    if isinstance(value, str):
        return parse(value, registry)
    raise UsageError(f"cannot interpret {value!r} as a rational function")


def substitute(e: RationalFn, bindings: Mapping) -> RationalFn:
    """Replace variables (by name) with rational functions, exactly.

    Raises :class:`DomainError` when the substituted denominator vanishes
    identically.
    """
    if not bindings:
        return e
    src = e.registry
    values = {}
    target = src
    for name, value in bindings.items():
        name = getattr(name, "name", name)
        src.index(name)
        values[name] = _to_rf(value, src)
        target = _common(target, values[name].registry)
    ctx = target.ctx
    one = ctx.constant(1)
    nums, dens = [], []
    for name in src.names:
        if name in values:
            v = values[name].lift(target)
            nums.append(v.num)
            dens.append(v.den)
        else:
            nums.append(ctx.gens()[target.index(name)])
            dens.append(one)

    def homogenised(poly):
        degs = poly.degrees()
        pow_n: dict[tuple[int, int], object] = {}
        pow_d: dict[tuple[int, int], object] = {}

        def pw(cache, base, i, k):
            key = (i, k)
            if key not in cache:
                cache[key] = base[i] ** k
            return cache[key]

        total = ctx.constant(0)
        for exps, c in poly.terms():
            term = ctx.constant(int(c))
            for i, k in enumerate(exps):
                if degs[i] == 0:
                    continue
                if k:
                    term = term * pw(pow_n, nums, i, k)
                if degs[i] - k and not dens[i].is_one():
                    term = term * pw(pow_d, dens, i, degs[i] - k)
            total = total + term
        return total, degs

    nn, ndeg = homogenised(e.num)
    dd, ddeg = homogenised(e.den)
    if dd.is_zero():
        raise DomainError(f"substitution makes the denominator of {e} vanish identically")
    for i in range(len(src)):
        if dens[i].is_one():
            continue
        k = ddeg[i] - ndeg[i]
        if k > 0:
            nn = nn * dens[i] ** k
        elif k < 0:
            dd = dd * dens[i] ** (-k)
    return RationalFn._make(target, nn, dd)


def rf_equal(a: RationalFn, b: RationalFn) -> bool:
    """Exact equality by cross-multiplication."""
    a, b = a._pair(b)
    return a.num * b.den == b.num * a.den


def poly_arith(a, b, op: str):
    """``op`` in {'add', 'sub', 'mul'} on LaurentPoly or RationalFn operands."""
    if isinstance(a, RationalFn) or isinstance(b, RationalFn):
        reg = a.registry if isinstance(a, (RationalFn, LaurentPoly)) else b.registry
        a, b = _to_rf(a, reg), _to_rf(b, reg)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise UsageError(f"unknown operation {op!r}")


def normalize(x: RationalFn) -> RationalFn:
    return RationalFn._make(x.registry, x.num, x.den)


# ---------------------------------------------------------------------------
# A small parser for the canonical rendering (and friendlier input)

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


def parse(text: str, registry: Registry = DEFAULT) -> RationalFn:
    """Parse ``+ - * / ^`` expressions in registry variables and integers."""
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r} in {text!r}", pos)
        num, name, op = m.groups()
        tokens.append(("n", int(num)) if num else ("v", name) if name else ("o", "^" if op == "**" else op))
        pos = m.end()
    tokens.append(("end", None))
    i = 0

    def peek():
        return tokens[i]

    def take():
        nonlocal i
        tok = tokens[i]
        i += 1
        return tok

    def expr():
        val = term()
        while peek() in (("o", "+"), ("o", "-")):
            _, op = take()
            rhs = term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term():
        val = unary()
        while peek() in (("o", "*"), ("o", "/")):
            _, op = take()
            rhs = unary()
            val = val * rhs if op == "*" else val / rhs
        return val

    def unary():
        if peek() == ("o", "-"):
            take()
            return -unary()
        if peek() == ("o", "+"):
            take()
            return unary()
        return power()

    def power():
        base = atom()
        if peek() == ("o", "^"):
            take()
            sign = 1
            if peek() == ("o", "-"):
                take()
                sign = -1
            kind, val = take()
            if kind != "n":
                raise ParseError(f"integer exponent expected in {text!r}", i)
            return base ** (sign * val)
        return base

    def atom():
        kind, val = take()
        if kind == "n":
            return RationalFn.constant(registry, val)
        if kind == "v":
            if val not in registry:
                raise ParseError(f"unknown variable {val!r}", i - 1)
            return registry.var(val)
        if (kind, val) == ("o", "("):
            inner = expr()
            if take() != ("o", ")"):
                raise ParseError(f"missing ')' in {text!r}", i)
            return inner
        raise ParseError(f"unexpected token {val!r} in {text!r}", i - 1)

    result = expr()
    if peek()[0] != "end":
        raise ParseError(f"trailing input in {text!r}", i)
    return result
