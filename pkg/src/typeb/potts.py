"""The wall-coupled Potts model and its blob-algebra trace expression.

Weights: ``u`` per inner bond with equal spins, ``w`` per boundary site
with nonzero spin, i.e. ``exp(-E/kT)`` for the printed Hamiltonian with
``u = exp(-1/kT)`` and ``w = exp(-kappa/kT)``.

Trace expression (grid with ``W`` columns, wall left of column 1).  The
medial picture has ``2W`` strands; site ``j`` of a row sits between
strands ``2j-1`` and ``2j``.  Expanding ``u^delta = 1 + (u-1) delta`` and
treating the wall as a ghost site of spin 0, each spin cluster costs
``f`` and each cluster touching the wall through ``m`` boundary sites
costs ``f - 1 + w^-m`` (times ``w^m``).  With loops of weight ``c =
sqrt(f)`` this is reproduced by the factors

    horizontal bond   1 + ((u-1)/c) e_{2j}
    vertical bond     ((u-1)/c) + e_{2j-1}
    wall bond         w + ((1-w)/d) e_0

under loop weights ``c' = d/c`` (``d`` arbitrary, fixed to 1), the planar
closure ``zw = c``, ``zb = c'``, top caps ``e_1 e_3 ... e_{2W-1}`` and
the prefactor ``c^(|V| + 2W)``.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .errors import CapabilityError, InconsistentSystemError, ParseError, UsageError
from .ring import DEFAULT, RationalFn
from .tlb import TLB, planar_trace

MAX_STATES = 10**7


# ---------------------------------------------------------------------------
# Lattices


@dataclass(frozen=True)
class BoundaryLattice:
    sites: tuple[str, ...]
    inner_bonds: frozenset = frozenset()   # frozensets {i, j}
    boundary_sites: frozenset = frozenset()

    def __post_init__(self):
        if len(set(self.sites)) != len(self.sites):
            raise UsageError("duplicate site ids")
        known = set(self.sites)
        bonds = frozenset(frozenset(b) for b in self.inner_bonds)
        for b in bonds:
            if len(b) != 2:
                raise UsageError("self-bond or malformed bond")
            if not b <= known:
                raise UsageError(f"bond {sorted(b)} references an unknown site")
        if not set(self.boundary_sites) <= known:
            raise UsageError("wall on an unknown site")
        object.__setattr__(self, "inner_bonds", bonds)
        object.__setattr__(self, "boundary_sites", frozenset(self.boundary_sites))

    def shape(self) -> tuple[int, int] | None:
        """(rows, cols) if this is a subgraph of a grid with ``r.c`` site ids."""
        if not self.sites:
            return (0, 0)
        coords = {}
        for s in self.sites:
            try:
                r, c = (int(x) for x in s.split("."))
            except ValueError:
                return None
            coords[s] = (r, c)
        rows = max(r for r, _ in coords.values())
        cols = max(c for _, c in coords.values())
        if set(coords.values()) != {(r, c) for r in range(1, rows + 1) for c in range(1, cols + 1)}:
            return None
        for b in self.inner_bonds:
            (r1, c1), (r2, c2) = sorted(coords[s] for s in b)
            if abs(r1 - r2) + abs(c1 - c2) != 1:
                return None
        if any(coords[s][1] != 1 for s in self.boundary_sites):
            return None
        return rows, cols


def site_id(r: int, c: int) -> str:
    return f"{r}.{c}"


def grid(rows: int, cols: int, walled: bool | Iterable[int] = True) -> BoundaryLattice:
    """Rectangular grid; ``walled`` True puts the whole first column in B0,
    or pass the walled row numbers."""
    if rows < 0 or cols < 0:
        raise UsageError("grid dimensions must be nonnegative")
    sites = tuple(site_id(r, c) for r in range(1, rows + 1) for c in range(1, cols + 1))
    bonds = set()
    for r in range(1, rows + 1):
        for c in range(1, cols + 1):
            if c < cols:
                bonds.add(frozenset({site_id(r, c), site_id(r, c + 1)}))
            if r < rows:
                bonds.add(frozenset({site_id(r, c), site_id(r + 1, c)}))
    if walled is True:
        wall_rows = range(1, rows + 1) if cols else ()
    elif walled is False:
        wall_rows = ()
    else:
        wall_rows = list(walled)
    boundary = frozenset(site_id(r, 1) for r in wall_rows)
    return BoundaryLattice(sites, frozenset(bonds), boundary)


def parse_lattice(text: str) -> BoundaryLattice:
    """``site <id>``, ``bond <id> <id>``, ``wall <id>``, ``grid <rows> <cols>``; ``#`` comments."""
    sites: list[str] = []
    bonds = set()
    walls = set()
    g = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].split()
        if not line:
            continue
        kw, args = line[0], line[1:]
        if kw == "grid" and len(args) == 2:
            try:
                g = grid(int(args[0]), int(args[1]))
            except ValueError:
                raise ParseError(f"line {lineno}: grid needs two integers", lineno) from None
        elif kw == "site" and len(args) == 1:
            sites.append(args[0])
        elif kw == "bond" and len(args) == 2:
            bonds.add(frozenset(args))
        elif kw == "wall" and len(args) == 1:
            walls.add(args[0])
        else:
            raise ParseError(f"line {lineno}: cannot parse {raw.strip()!r}", lineno)
    if g is not None:
        if sites or bonds or walls:
            raise ParseError("grid shorthand cannot be mixed with explicit sites", 0)
        return g
    return BoundaryLattice(tuple(sites), frozenset(bonds), frozenset(walls))


def format_lattice(l: BoundaryLattice) -> str:
    lines = [f"site {s}" for s in l.sites]
    lines += [f"bond {' '.join(sorted(b))}" for b in sorted(l.inner_bonds, key=sorted)]
    lines += [f"wall {s}" for s in sorted(l.boundary_sites)]
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# Partition-function polynomials


@dataclass(frozen=True)
class PottsPoly:
    """Integer polynomial in ``u, w``: terms[(deg_u, deg_w)] = coefficient."""

    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "terms", {k: int(v) for k, v in self.terms.items() if v})

    def __eq__(self, other) -> bool:
        return isinstance(other, PottsPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def to_rf(self) -> RationalFn:
        u, w = DEFAULT.vars("u", "w")
        total = DEFAULT.zero
        for (i, j), k in self.terms.items():
            total = total + u ** i * w ** j * k
        return total

    def __str__(self) -> str:
        return str(self.to_rf())

    def evaluate(self, u, w):
        return sum(k * u ** i * w ** j for (i, j), k in self.terms.items())

    def __mul__(self, other: "PottsPoly") -> "PottsPoly":
        out: Counter = Counter()
        for (a, b), x in self.terms.items():
            for (c, d), y in other.terms.items():
                out[(a + c, b + d)] += x * y
        return PottsPoly(dict(out))

    def diff(self, other: "PottsPoly") -> dict:
        keys = set(self.terms) | set(other.terms)
        return {k: self.terms.get(k, 0) - other.terms.get(k, 0)
                for k in sorted(keys) if self.terms.get(k, 0) != other.terms.get(k, 0)}


def brute_force_Z(l: BoundaryLattice, f: int) -> PottsPoly:
    """Sum over all f^|V| spin states of u^(equal bonds) w^(nonzero wall sites)."""
    if f < 1:
        raise UsageError("need at least one spin state")
    if f ** len(l.sites) > MAX_STATES:
        raise CapabilityError(f"{f}^{len(l.sites)} states exceeds the enumeration bound {MAX_STATES}")
    idx = {s: k for k, s in enumerate(l.sites)}
    bonds = [tuple(idx[s] for s in b) for b in l.inner_bonds]
    walls = [idx[s] for s in l.boundary_sites]
    counts: Counter = Counter()
    for state in itertools.product(range(f), repeat=len(l.sites)):
        eq = sum(state[i] == state[j] for i, j in bonds)
        nz = sum(state[i] != 0 for i in walls)
        counts[(eq, nz)] += 1
    return PottsPoly(dict(counts))


# ---------------------------------------------------------------------------
# Lattice -> blob-algebra word


@dataclass(frozen=True)
class Factor:
    """``scalar * 1 + coef * e_index``; ``kind`` is wall, horizontal or vertical."""

    index: int
    scalar: RationalFn
    coef: RationalFn
    kind: str
    bond: tuple = ()

    def __str__(self) -> str:
        return f"({self.scalar})*1 + ({self.coef})*e{self.index}"


@dataclass
class Correspondence:
    """Scalars binding the lattice word to the Potts weights."""

    c: RationalFn
    cp: RationalFn
    d: RationalFn
    wall: tuple[RationalFn, RationalFn]
    horizontal: tuple[RationalFn, RationalFn]
    vertical: tuple[RationalFn, RationalFn]

    def loop_params(self) -> dict:
        return {"c": self.c, "cp": self.cp, "d": self.d}


def correspondence(d: RationalFn | None = None) -> Correspondence:
    c, u, w = DEFAULT.vars("c", "u", "w")
    d = DEFAULT.one if d is None else d
    g = (u - 1) / c
    return Correspondence(
        c=c, cp=d / c, d=d,
        wall=(w, (1 - w) / d),
        horizontal=(DEFAULT.one, g),
        vertical=(g, DEFAULT.one),
    )


def fit_wall_factor(d: RationalFn | None = None) -> tuple[RationalFn, RationalFn]:
    """Solve the wall pair (x0, x1) from the one-site walled lattice.

    With ``x0, x1`` free of ``c`` and ``c' = d/c``, the trace expression is
    ``c^2 x0 + d x1`` while the oracle gives ``1 + (f-1) w`` with ``f = c^2``;
    matching the ``c^2`` and ``c^0`` parts determines both.
    """
    c = DEFAULT.var("c")
    d = DEFAULT.one if d is None else d
    bf = brute_force_poly_in_f(grid(1, 1))
    cor = correspondence(d)
    alg = TLB(2, cor.loop_params())
    top = alg.gen(1)
    t0 = planar_trace(top) * c ** 3          # coefficient of x0
    t1 = planar_trace(top * alg.gen(0)) * c ** 3  # coefficient of x1
    # split both sides into the c^2 part and the c^0 part
    A, B = _split_even(t0), _split_even(t1)
    R = _split_even(bf)
    # A[2] x0 + B[2] x1 = R[2];  A[0] x0 + B[0] x1 = R[0]
    det = A[2] * B[0] - A[0] * B[2]
    if det.is_zero():
        raise InconsistentSystemError("one-site lattice does not pin the wall factor")
    x0 = (R[2] * B[0] - R[0] * B[2]) / det
    x1 = (A[2] * R[0] - A[0] * R[2]) / det
    return x0, x1


def _split_even(e: RationalFn) -> dict[int, RationalFn]:
    """Coefficients of c^0 and c^2 of a polynomial in c (others must vanish)."""
    reg = e.registry
    if not e.is_laurent():
        raise InconsistentSystemError(f"{e} is not a Laurent polynomial in c")
    ic = reg.index("c")
    out = {0: reg.zero, 2: reg.zero}
    for exps, coef in e.numerator.sorted_terms():
        k = exps[ic]
        if k not in out:
            raise InconsistentSystemError(f"unexpected power c^{k} in {e}")
        rest = list(exps)
        rest[ic] = 0
        mono = reg.const(coef)
        for name, ex in zip(reg.names, rest):
            if ex:
                mono = mono * reg.var(name) ** ex
        out[k] = out[k] + mono
    return out


def brute_force_poly_in_f(l: BoundaryLattice) -> RationalFn:
    """brute_force_Z with f symbolic, as a polynomial in c (f = c^2), u, w.

    Z is a polynomial of degree |V| in f; it is interpolated from the
    integer values f = 1 .. |V|+1.
    """
    c = DEFAULT.var("c")
    n = len(l.sites)
    pts = list(range(1, n + 2))
    vals = [brute_force_Z(l, f).to_rf() for f in pts]
    f = c * c
    total = DEFAULT.zero
    for i, fi in enumerate(pts):
        basis = DEFAULT.one
        for j, fj in enumerate(pts):
            if j != i:
                basis = basis * (f - fj) / (fi - fj)
        total = total + vals[i] * basis
    return total


def lattice_to_tangle(l: BoundaryLattice, cor: Correspondence | None = None) -> tuple[int, list[Factor]]:
    """Strand count and the row-by-row factor sequence of a grid lattice."""
    shape = l.shape()
    if shape is None:
        raise CapabilityError("lattice_to_tangle needs a rectangular grid (sites 'r.c', wall on column 1)")
    cor = cor or correspondence()
    rows, cols = shape
    out: list[Factor] = []
    bonds = l.inner_bonds
    for r in range(1, rows + 1):
        if site_id(r, 1) in l.boundary_sites:
            out.append(Factor(0, *cor.wall, "wall", (site_id(r, 1),)))
        for j in range(1, cols):
            a, b = site_id(r, j), site_id(r, j + 1)
            if frozenset({a, b}) in bonds:
                out.append(Factor(2 * j, *cor.horizontal, "horizontal", (a, b)))
        if r < rows:
            for j in range(1, cols + 1):
                a, b = site_id(r, j), site_id(r + 1, j)
                if frozenset({a, b}) in bonds:
                    out.append(Factor(2 * j - 1, *cor.vertical, "vertical", (a, b)))
                else:
                    out.append(Factor(2 * j - 1, DEFAULT.zero, DEFAULT.one, "vertical-absent", (a, b)))
    return 2 * cols, out


def trace_Z(l: BoundaryLattice, f: int, cor: Correspondence | None = None) -> PottsPoly:
    """Partition function from the closure trace of the lattice word."""
    shape = l.shape()
    if shape is None:
        raise CapabilityError("trace_Z needs a grid lattice")
    rows, cols = shape
    if rows == 0 or cols == 0:
        return PottsPoly({(0, 0): 1})
    cor = cor or correspondence()
    n, factors = lattice_to_tangle(l, cor)
    alg = TLB(n, cor.loop_params())
    acc = alg.unit()
    for j in range(1, cols + 1):
        acc = acc * alg.gen(2 * j - 1)
    for fac in factors:
        moved = acc * alg.gen(fac.index)
        acc = acc * fac.scalar + moved * fac.coef if not fac.scalar.is_zero() else moved * fac.coef
    z = planar_trace(acc) * cor.c ** (len(l.sites) + n)
    return _reduce_sqrt(z, f)


def _reduce_sqrt(z: RationalFn, f: int) -> PottsPoly:
    """Replace c^2 by f in a Laurent polynomial; odd powers of c are an error."""
    reg = z.registry
    if not z.is_laurent():
        raise InconsistentSystemError(f"trace expression is not a Laurent polynomial: {z}")
    ic, iu, iw = reg.index("c"), reg.index("u"), reg.index("w")
    out: Counter = Counter()
    residual = []
    for exps, coef in z.numerator.sorted_terms():
        k = exps[ic]
        others = [e for i, e in enumerate(exps) if i not in (ic, iu, iw) and e]
        if k % 2 or others or exps[iu] < 0 or exps[iw] < 0:
            residual.append((exps, coef))
            continue
        out[(exps[iu], exps[iw])] += coef * Fraction(f) ** (k // 2)
    if residual:
        raise InconsistentSystemError(f"correspondence unsolved for f={f}: residual terms {residual}")
    if any(v.denominator != 1 for v in out.values()):
        raise InconsistentSystemError("non-integral coefficients after c^2 = f")
    return PottsPoly({k: int(v) for k, v in out.items()})


@dataclass
class CrossCheck:
    passed: bool
    brute: PottsPoly
    trace: PottsPoly | None
    diff: dict
    note: str = ""

    def __str__(self) -> str:
        if self.passed:
            return f"PASS {self.brute}"
        lines = ["FAIL"]
        if self.note:
            lines.append(self.note)
        for (i, j), k in self.diff.items():
            lines.append(f"  u^{i} w^{j}: brute - trace = {k}")
        return "\n".join(lines)


def crosscheck(l: BoundaryLattice, f: int, cor: Correspondence | None = None) -> CrossCheck:
    bf = brute_force_Z(l, f)
    try:
        tz = trace_Z(l, f, cor)
    except InconsistentSystemError as exc:
        return CrossCheck(False, bf, None, {}, str(exc))
    return CrossCheck(bf == tz, bf, tz, bf.diff(tz))


def perturbed(cor: Correspondence) -> Correspondence:
    """Negative control: horizontal bond weight off by a factor of 2."""
    h0, h1 = cor.horizontal
    return Correspondence(cor.c, cor.cp, cor.d, cor.wall, (h0, h1 * 2), cor.vertical)
