"""The blob algebra TB_n as a diagram algebra.

A diagram on ``n`` strands has top points ``t1..tn`` (indices ``0..n-1``)
and bottom points ``b1..bn`` (indices ``n..2n-1``).  Reading the boundary
as ``t1..tn, bn..b1`` puts the left wall between ``b1`` and ``t1``; an arc
is wall-exposed iff no other arc encloses it in that linear order, and
only exposed arcs may carry a blob.

Products stack the first factor on top of the second.  Loops cost ``c``
(no blob) or ``c'`` (blobbed); ``k`` blobs meeting on one arc or loop cost
``d^(k-1)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Mapping

from .braid import BraidWord
from .errors import InconsistentSystemError, UsageError
from .ring import DEFAULT, RationalFn, Registry, substitute

# registry for the skein parameters of the braid-group image
SKEIN = DEFAULT.extend("a", "b", "al", "be")


# ---------------------------------------------------------------------------
# Diagrams


def _pos(p: int, n: int) -> int:
    """Position of point ``p`` in the linear order t1..tn, bn..b1."""
    return p if p < n else 3 * n - 1 - p


@dataclass(frozen=True, order=True)
class BlobDiagram:
    n: int
    partner: tuple[int, ...]
    blobs: frozenset = field(default=frozenset())  # arcs, keyed by their smaller point

    def __post_init__(self):
        n = self.n
        if len(self.partner) != 2 * n:
            raise UsageError("partner table has the wrong length")
        for p, q in enumerate(self.partner):
            if self.partner[q] != p or p == q:
                raise UsageError("partner table is not a perfect matching")
        arcs = self.arcs()
        for (x, y), (u, v) in itertools.combinations([self._span(a) for a in arcs], 2):
            if x < u < y < v or u < x < v < y:
                raise UsageError("matching is not planar")
        exposed = set(self.exposed_arcs())
        for a in self.blobs:
            if a not in exposed:
                raise UsageError(f"blob on arc {a} which is not wall-exposed")

    def arcs(self) -> list[int]:
        return [p for p, q in enumerate(self.partner) if p < q]

    def _span(self, a: int) -> tuple[int, int]:
        x, y = _pos(a, self.n), _pos(self.partner[a], self.n)
        return (x, y) if x < y else (y, x)

    def exposed_arcs(self) -> list[int]:
        spans = {a: self._span(a) for a in self.arcs()}
        return [a for a, (x, y) in spans.items()
                if not any(u < x and y < v for b, (u, v) in spans.items() if b != a)]

    def __str__(self) -> str:
        return format_diagram(self)


def _label(p: int, n: int) -> str:
    return f"t{p + 1}" if p < n else f"b{p - n + 1}"


def format_diagram(d: BlobDiagram) -> str:
    parts = []
    for a in sorted(d.arcs(), key=lambda a: _pos(a, d.n)):
        star = "*" if a in d.blobs else ""
        parts.append(f"{_label(a, d.n)}-{_label(d.partner[a], d.n)}{star}")
    return " ".join(parts) if parts else "()"


def identity_diagram(n: int) -> BlobDiagram:
    return BlobDiagram(n, tuple(list(range(n, 2 * n)) + list(range(n))))


def generator_diagram(n: int, i: int) -> BlobDiagram:
    """``e0`` (blob on strand 1) or ``e_i`` (cup-cap on strands i, i+1)."""
    if not 0 <= i < n:
        raise UsageError(f"e{i} does not exist on {n} strands")
    if i == 0:
        return BlobDiagram(n, identity_diagram(n).partner, frozenset({0}))
    p = list(identity_diagram(n).partner)
    a, b = i - 1, i
    p[a], p[b] = b, a
    p[n + a], p[n + b] = n + b, n + a
    return BlobDiagram(n, tuple(p))


def _matchings(points: list[int]):
    """Noncrossing perfect matchings of points given in linear order."""
    if not points:
        yield []
        return
    first = points[0]
    for k in range(1, len(points), 2):
        inside, outside = points[1:k], points[k + 1:]
        for m1 in _matchings(inside):
            for m2 in _matchings(outside):
                yield [(first, points[k])] + m1 + m2


def enumerate_diagrams(n: int) -> list[BlobDiagram]:
    """All blob diagrams on ``n`` strands, sorted."""
    if not 0 <= n <= 6:
        raise UsageError("enumerate_diagrams supports 0 <= n <= 6")
    order = list(range(n)) + list(range(2 * n - 1, n - 1, -1))
    out = []
    for m in _matchings(order):
        partner = [0] * (2 * n)
        for x, y in m:
            partner[x], partner[y] = y, x
        base = BlobDiagram(n, tuple(partner))
        exposed = base.exposed_arcs()
        for k in range(len(exposed) + 1):
            for sub in itertools.combinations(exposed, k):
                out.append(BlobDiagram(n, base.partner, frozenset(sub)))
    return sorted(out, key=_sort_key)


def _sort_key(d: BlobDiagram):
    return (d.partner, tuple(sorted(d.blobs)))


# ---------------------------------------------------------------------------
# Composition and closure


@lru_cache(maxsize=None)
def compose_counts(a: BlobDiagram, b: BlobDiagram) -> tuple[tuple[int, int, int], BlobDiagram]:
    """Stack ``a`` over ``b``: ((#c, #c', #d), result)."""
    if a.n != b.n:
        raise UsageError("diagrams on different strand counts")
    n = a.n
    pa, pb = a.partner, b.partner
    ba = {p for x in a.blobs for p in (x, pa[x])}
    bb = {p for x in b.blobs for p in (x, pb[x])}
    seen_mid = [False] * n
    partner = [None] * (2 * n)
    blobs = set()
    nd = 0

    def walk(side: str, p: int) -> tuple[int, int, int]:
        """Follow from an entry point; returns (blob count, exit side, exit point)."""
        k = 0
        while True:
            if side == "a":
                q = pa[p]
                k += p in ba
                if q < n:
                    return k, "top", q
                m = q - n
                seen_mid[m] = True
                side, p = "b", m
            else:
                q = pb[p]
                k += p in bb
                if q >= n:
                    return k, "bottom", q - n
                seen_mid[q] = True
                side, p = "a", n + q

    ends = [("a", t) for t in range(n)] + [("b", n + t) for t in range(n)]
    for side, p in ends:
        out_p = p if side == "a" else p
        if partner[out_p] is not None:
            continue
        k, where, q = walk(side, p)
        out_q = q if where == "top" else n + q
        partner[out_p], partner[out_q] = out_q, out_p
        if k:
            blobs.add(min(out_p, out_q))
            nd += k - 1
    nc = ncp = 0
    for m in range(n):
        if seen_mid[m]:
            continue
        # closed loop through the middle row
        k, side, p = 0, "b", m
        start = m
        while True:
            seen_mid[p if side == "b" else p - n] = True
            if side == "b":
                q = pb[p]
                k += p in bb
                # q is a top point of b, i.e. a middle point
                side, p = "a", n + q
            else:
                q = pa[p]
                k += p in ba
                side, p = "b", q - n
            if side == "b" and p == start:
                break
        if k == 0:
            nc += 1
        else:
            ncp += 1
            nd += k - 1
    return (nc, ncp, nd), BlobDiagram(n, tuple(partner), frozenset(blobs))


@lru_cache(maxsize=None)
def closure_counts(d: BlobDiagram) -> tuple[int, int, int, int, int]:
    """Annular closure (top i joined to bottom i around the axis).

    Returns (contractible plain, contractible blobbed, winding plain,
    winding blobbed, blob merges).  A loop winds iff its signed number of
    passages through the closure seam is nonzero.
    """
    n = d.n
    seen = [False] * (2 * n)
    blob_pts = {p for x in d.blobs for p in (x, d.partner[x])}
    cw = cb = ww = wb = nd = 0
    for s in range(2 * n):
        if seen[s]:
            continue
        p, k, wind = s, 0, 0
        while True:
            seen[p] = True
            q = d.partner[p]
            seen[q] = True
            k += p in blob_pts
            # cross the seam from q to its twin
            if q < n:
                wind -= 1
                p = q + n
            else:
                wind += 1
                p = q - n
            if p == s:
                break
        winding = wind != 0
        if k == 0:
            ww += winding
            cw += not winding
        else:
            wb += winding
            cb += not winding
            nd += k - 1
    return cw, cb, ww, wb, nd


def compose(a: BlobDiagram, b: BlobDiagram, params: Mapping[str, RationalFn] | None = None):
    """(scalar, diagram) for ``a`` stacked over ``b``."""
    P = _params(params)
    (nc, ncp, nd), res = compose_counts(a, b)
    return P["c"] ** nc * P["cp"] ** ncp * P["d"] ** nd, res


def _params(params: Mapping[str, RationalFn] | None, registry: Registry = DEFAULT) -> dict[str, RationalFn]:
    out = {k: registry.var(k) for k in ("c", "cp", "d")}
    for k, v in (params or {}).items():
        out[k] = v if isinstance(v, RationalFn) else registry.const(v)
    return out


# ---------------------------------------------------------------------------
# Elements


class TLB:
    """TB_n over loop parameters ``c, cp, d`` (symbols unless bound)."""

    def __init__(self, n: int, params: Mapping[str, RationalFn] | None = None, registry: Registry = DEFAULT):
        if n < 0:
            raise UsageError("TB_n needs n >= 0")
        self.n = n
        self.registry = registry
        self.params = _params(params, registry)
        self._scal: dict[tuple[int, int, int], RationalFn] = {}

    def scalar_of(self, counts: tuple[int, int, int]) -> RationalFn:
        s = self._scal.get(counts)
        if s is None:
            nc, ncp, nd = counts
            P = self.params
            s = P["c"] ** nc * P["cp"] ** ncp * P["d"] ** nd
            self._scal[counts] = s
        return s

    def element(self, coeffs: Mapping[BlobDiagram, object]) -> "TlbElement":
        out = {}
        for d, c in coeffs.items():
            if d.n != self.n:
                raise UsageError("diagram on the wrong strand count")
            c = c if isinstance(c, RationalFn) else self.registry.const(c)
            if not c.is_zero():
                out[d] = c
        return TlbElement(self, out)

    def unit(self) -> "TlbElement":
        return self.element({identity_diagram(self.n): 1})

    def zero(self) -> "TlbElement":
        return TlbElement(self, {})

    def gen(self, i: int) -> "TlbElement":
        return self.element({generator_diagram(self.n, i): 1})

    def diagram(self, d: BlobDiagram) -> "TlbElement":
        return self.element({d: 1})

    def linear(self, scalar, coef, i: int) -> "TlbElement":
        """``scalar*1 + coef*e_i``."""
        return self.unit() * scalar + self.gen(i) * coef


@dataclass(frozen=True)
class TlbElement:
    alg: TLB
    coeffs: dict

    def _check(self, other: "TlbElement"):
        if other.alg is not self.alg:
            raise UsageError("elements of different TB_n instances")

    def __add__(self, other: "TlbElement") -> "TlbElement":
        self._check(other)
        out = dict(self.coeffs)
        for d, c in other.coeffs.items():
            _acc(out, d, c)
        return TlbElement(self.alg, out)

    def __neg__(self) -> "TlbElement":
        return TlbElement(self.alg, {d: -c for d, c in self.coeffs.items()})

    def __sub__(self, other: "TlbElement") -> "TlbElement":
        return self + (-other)

    def __mul__(self, other) -> "TlbElement":
        if isinstance(other, TlbElement):
            self._check(other)
            out: dict = {}
            for da, ca in self.coeffs.items():
                for db, cb in other.coeffs.items():
                    counts, res = compose_counts(da, db)
                    _acc(out, res, ca * cb * self.alg.scalar_of(counts))
            return TlbElement(self.alg, out)
        if not isinstance(other, RationalFn):
            other = self.alg.registry.const(other)
        if other.is_zero():
            return TlbElement(self.alg, {})
        return TlbElement(self.alg, {d: c * other for d, c in self.coeffs.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, TlbElement) or other.alg.n != self.alg.n:
            return NotImplemented
        keys = set(self.coeffs) | set(other.coeffs)
        z = self.alg.registry.zero
        return all(self.coeffs.get(k, z) == other.coeffs.get(k, z) for k in keys)

    def __hash__(self):
        return hash(frozenset(self.coeffs))

    def is_zero(self) -> bool:
        return not self.coeffs

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        return " + ".join(f"({c})*[{d}]" for d, c in sorted(self.coeffs.items(), key=lambda t: _sort_key(t[0])))


def _acc(out: dict, k, c: RationalFn) -> None:
    prev = out.get(k)
    s = c if prev is None else prev + c
    if s.is_zero():
        out.pop(k, None)
    else:
        out[k] = s


def tlb_trace(x: TlbElement, zw: RationalFn | None = None, zb: RationalFn | None = None) -> RationalFn:
    """Annular closure trace, normalised so that tr(1) = 1.

    Winding loops get ``zw`` (plain) and ``zb`` (blobbed); these default to
    free symbols.  Contractible loops use the algebra's ``c`` and ``cp``.
    """
    reg = x.alg.registry
    zw = reg.var("zw") if zw is None else zw
    zb = reg.var("zb") if zb is None else zb
    P = x.alg.params
    total = reg.zero
    for d, coef in x.coeffs.items():
        cw, cb, ww, wb, nd = closure_counts(d)
        total = total + coef * P["c"] ** cw * P["cp"] ** cb * zw ** ww * zb ** wb * P["d"] ** nd
    return total / zw ** x.alg.n if x.alg.n else total


def planar_trace(x: TlbElement) -> RationalFn:
    """The Markov specialisation ``zw = c``, ``zb = c'``."""
    P = x.alg.params
    return tlb_trace(x, P["c"], P["cp"])


# ---------------------------------------------------------------------------
# Skein parameters for the image of ZB_n


@dataclass
class SkeinSolution:
    """Values for (a, b, al, be, c, cp, d, q1, q0) on one branch.

    ``X_i -> a + b e_i`` and ``Y -> al + be e0``.
    """

    branch: str
    values: dict[str, RationalFn]
    branches: list[str] = field(default_factory=list)

    def __getitem__(self, k: str) -> RationalFn:
        return self.values[k]

    @property
    def registry(self) -> Registry:
        return self.values["a"].registry


def skein_residuals(values: Mapping[str, RationalFn]) -> dict[str, list[RationalFn]]:
    """Coefficients of the braid and four-term defects of the images."""
    a, b, al, be = (values[k] for k in ("a", "b", "al", "be"))
    params = {k: values[k] for k in ("c", "cp", "d")}
    reg = a.registry
    out = {}
    T3 = TLB(3, params, reg)
    X1, X2 = T3.linear(a, b, 1), T3.linear(a, b, 2)
    out["braid"] = list((X1 * X2 * X1 - X2 * X1 * X2).coeffs.values())
    T2 = TLB(2, params, reg)
    Y, X = T2.linear(al, be, 0), T2.linear(a, b, 1)
    out["four"] = list((Y * X * Y * X - X * Y * X * Y).coeffs.values())
    return out


def _factors(polys: Iterable[RationalFn]) -> list:
    """Irreducible factors of the gcd of the numerators (via FLINT)."""
    polys = [p for p in polys if not p.is_zero()]
    if not polys:
        return []
    g = polys[0].num
    for p in polys[1:]:
        g = g.gcd(p.num)
    _, facs = g.factor()
    return [f for f, _ in facs]


def solve_skein(constraints: Iterable[str] = ("braid", "four", "quadratic"), registry: Registry = SKEIN,
                al: RationalFn | None = None) -> SkeinSolution:
    """Solve the relations of ZB_n for images ``a + b e_i``, ``al + be e0``.

    The defects are computed symbolically in TB_3 / TB_2 with all of a, b,
    al, be, c, cp, d free; their common factors are the branch conditions.
    Returns the generic branch (b, be nonzero): ``c`` and ``be`` are solved
    for, ``al`` defaults to 1, and ``q1``, ``q0`` are read off from
    ``Y^2 = q1 Y + q0``.
    """
    constraints = set(constraints)
    unknown = constraints - {"braid", "four", "quadratic"}
    if unknown:
        raise UsageError(f"unknown skein constraints {sorted(unknown)}")
    sym = {k: registry.var(k) for k in ("a", "b", "al", "be", "c", "cp", "d")}
    res = skein_residuals(sym)
    a, b, cp, d = sym["a"], sym["b"], sym["cp"], sym["d"]
    alv = registry.one if al is None else al
    values = dict(sym)
    values["al"] = alv
    branches = []
    if "braid" in constraints:
        facs = _factors(res["braid"])
        branches += [f"braid: {_poly_str(f, registry)} = 0" for f in facs]
        c = _solve_linear(facs, "c", registry)
        values["c"] = c
    else:
        c = sym["c"]
    if "four" in constraints:
        facs = _factors(res["four"])
        branches += [f"four-term: {_poly_str(f, registry)} = 0" for f in facs]
        generic = _solve_linear(facs, "be", registry, require=("al",))
        be = substitute(generic, {"c": c, "al": alv})
        values["be"] = be
    if values.get("be") is None or values["be"].is_zero():
        raise InconsistentSystemError("no generic skein branch")
    if "quadratic" in constraints:
        be = values["be"]
        values["q1"] = 2 * alv + be * d
        values["q0"] = -alv * (alv + be * d)
    sol = SkeinSolution("generic", values, branches)
    check = skein_residuals(values)
    for k in ("braid", "four"):
        if k in constraints and any(not r.is_zero() for r in check[k]):
            raise InconsistentSystemError(f"skein branch fails the {k} relation")
    return sol


def _poly_str(f, registry: Registry) -> str:
    return str(RationalFn._make(registry, f, registry.ctx.constant(1)))


def _solve_linear(facs, var: str, registry: Registry, require: tuple[str, ...] = ()) -> RationalFn:
    """Solve the unique factor that is linear in ``var`` (and contains ``require``)."""
    i = registry.index(var)
    for f in facs:
        degs = f.degrees()
        if degs[i] != 1 or any(f.degrees()[registry.index(r)] == 0 for r in require):
            continue
        # f = A*var + B
        A = registry.ctx.constant(0)
        B = registry.ctx.constant(0)
        gens = registry.ctx.gens()
        for exps, coef in zip(f.monoms(), f.coeffs()):
            mono = registry.ctx.constant(int(coef))
            for j, e in enumerate(exps):
                if j != i and e:
                    mono = mono * gens[j] ** int(e)
            if exps[i] == 1:
                A = A + mono
            else:
                B = B + mono
        one = registry.ctx.constant(1)
        return -RationalFn._make(registry, B, one) / RationalFn._make(registry, A, one)
    raise InconsistentSystemError(f"no branch linear in {var}")


def braid_image(w: BraidWord, sol: SkeinSolution) -> TlbElement:
    """Image of a ZB_n word in TB_n under the skein solution."""
    if not isinstance(sol, SkeinSolution):
        raise UsageError("braid_image needs a SkeinSolution from solve_skein")
    v = sol.values
    if any(k not in v for k in ("a", "b", "al", "be", "c", "cp", "d")):
        raise UsageError("skein parameters are not solved")
    alg = _algebra(w.strands, v)
    return word_image(alg, w, v)


_ALG_CACHE: dict = {}


def _algebra(n: int, v: Mapping[str, RationalFn]) -> TLB:
    key = (n, tuple(str(v[k]) for k in ("c", "cp", "d")), v["a"].registry)
    alg = _ALG_CACHE.get(key)
    if alg is None:
        alg = TLB(n, {k: v[k] for k in ("c", "cp", "d")}, v["a"].registry)
        _ALG_CACHE[key] = alg
    return alg


def word_image(alg: TLB, w: BraidWord, v: Mapping[str, RationalFn]) -> TlbElement:
    a, b, al, be, c, d = (v[k] for k in ("a", "b", "al", "be", "c", "d"))
    # (a + b e)^-1 = 1/a - b/(a(a + b c)) e ; same shape for Y with d
    inv_x = (a.inverse(), -b / (a * (a + b * c)))
    inv_y = (al.inverse(), -be / (al * (al + be * d)))
    acc = alg.unit()
    for i, p in w.letters:
        if i == 0:
            s, t = (al, be) if p == 1 else inv_y
        else:
            s, t = (a, b) if p == 1 else inv_x
        acc = acc * s + acc * alg.gen(i) * t
    return acc


def relations_hold(n: int, registry: Registry = DEFAULT) -> str | None:
    """None if every TB_n presentation rule is a diagram identity, else the failing lhs."""
    from .algebra.presentations import present_tlb

    pres = present_tlb(n, registry)
    alg = TLB(n, registry=registry)

    def word(w):
        acc = alg.unit()
        for g in w:
            acc = acc * alg.gen(int(g[1:]))
        return acc

    for lhs, rhs in pres.rules:
        total = word(lhs)
        for w, c in rhs.items():
            total = total - word(w) * c
        if total.coeffs:
            return " ".join(lhs)
    return None
