"""Command-line entry point: ``typeb <subcommand> ...``.

Exit codes: 0 success / PASS, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from .errors import TypeBError, UsageError


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def parse_braid_file(text: str, strands: int | None = None):
    """Tokens as in ``parse_braid``; an optional ``strands N`` line fixes n."""
    from .braid import parse_braid

    tokens = []
    for line in text.splitlines():
        line = line.split("#", 1)[0]
        parts = line.split()
        if parts[:1] == ["strands"]:
            if len(parts) != 2:
                raise UsageError("strands line needs one integer")
            strands = int(parts[1])
            continue
        tokens += parts
    if strands is None:
        top = 0
        for tok in tokens:
            if tok.lstrip("-").isdigit():
                top = max(top, abs(int(tok)))
        strands = top + 1
    return parse_braid(tokens, strands)


def _bindings(items: list[str]) -> dict:
    out = {}
    for item in items or []:
        name, _, value = item.partition("=")
        if not value:
            raise UsageError(f"--set expects name=value, got {item!r}")
        out[name.strip()] = Fraction(value.strip())
    return out


# ---------------------------------------------------------------------------


def cmd_dims(args) -> int:
    from .algebra import compute_basis, present_bmwA, present_bmwB, present_heckeB, present_tlb
    from .tlb import enumerate_diagrams

    builders = {"bmwB": present_bmwB, "bmwA": present_bmwA, "heckeB": present_heckeB, "tlb": present_tlb}
    if args.algebra == "tlb-diagrams":
        print(len(enumerate_diagrams(args.n)))
        return 0
    pres = builders[args.algebra](args.n)
    table = compute_basis(pres)
    if args.dump:
        print(table.dump())
    else:
        print(table.dimension)
    if pres.expected_dim is not None and table.dimension != pres.expected_dim:
        print(f"expected {pres.expected_dim}", file=sys.stderr)
        return 1
    return 0


def cmd_bratteli(args) -> int:
    from .bratteli import dimension_check, format_counts, path_counts

    print(format_counts(path_counts(args.n)))
    if args.check:
        ok = dimension_check(args.n)
        print("PASS" if ok else "FAIL")
        return 0 if ok else 1
    return 0


def cmd_verify(args) -> int:
    from .algebra import compute_basis, present_bmwA, present_bmwB
    from . import baxter

    if args.specialize and args.seed is None:
        raise UsageError("--specialize needs --seed")
    if args.what == "relations":
        from .algebra.presentations import present_heckeB

        ok = True
        for pres in [present_heckeB(2), present_heckeB(3), present_bmwA(3), present_bmwB(2)]:
            table = compute_basis(pres)
            res = relations_hold(table)
            print(f"{pres.name}: {'PASS' if res is None else 'FAIL ' + res}")
            ok &= res is None
        return 0 if ok else 1
    if args.what == "ybe":
        table = compute_basis(present_bmwA(3))
        alg = baxter.specialize_table(table, args.seed)[0] if args.specialize else table
        res = baxter.check_ybe(alg)
    else:
        table = compute_basis(present_bmwB(2))
        alg = baxter.specialize_table(table, args.seed)[0] if args.specialize else table
        K = None
        if args.f1 == "symbolic":
            K, _ = baxter.symbolic_f1_K(table.registry)
        res = baxter.check_re(alg, K)
    if res:
        print("PASS")
        return 0
    print("FAIL")
    print(res.witness)
    return 1


def relations_hold(table) -> str | None:
    """None if every rule lhs -> rhs holds in ``table``, else the failing lhs."""
    for lhs, rhs in table.presentation.rules:
        total = table.word_element(lhs)
        for w, c in rhs.items():
            total = total - table.word_element(w) * c
        if total.coeffs:
            return " ".join(lhs)
    return None


def cmd_invariant(args) -> int:
    from .links import jones_B, kauffman_B
    from .ring import substitute

    w = parse_braid_file(_read(args.braid), args.strands)
    value = kauffman_B(w) if args.route == "kauffman" else jones_B(w)
    b = _bindings(args.set)
    if b:
        value = substitute(value, {k: v for k, v in b.items() if k in value.registry})
    print(value)
    return 0


def cmd_potts(args) -> int:
    from .potts import brute_force_Z, crosscheck, parse_lattice

    lat = parse_lattice(_read(args.lattice))
    if args.crosscheck:
        res = crosscheck(lat, args.states)
        print(res)
        return 0 if res.passed else 1
    print(brute_force_Z(lat, args.states))
    return 0


def cmd_trace_solve(args) -> int:
    from .algebra import compute_basis, present_bmwB
    from .algebra.trace import is_nondegenerate, solve_markov_trace

    if not 1 <= args.n <= 3:
        raise UsageError("trace-solve supports 1 <= n <= 3")
    tables = [compute_basis(present_bmwB(k)) for k in range(1, args.n + 1)]
    tr = solve_markov_trace(tables[-1], tables[:-1])
    print(f"parameters: {' '.join(tr.parameters) or '-'}")
    for name, word in tr.moments.items():
        print(f"{name} = tr[{' '.join(word)}]")
    for word, v in zip(tr.table.basis, tr.values):
        print(f"tr[{' '.join(word)}] = {v}")
    if args.seed is not None:
        ok = is_nondegenerate(tr, args.seed)
        print(f"nondegenerate: {'PASS' if ok else 'FAIL'}")
        return 0 if ok else 1
    return 0


def _suite_chunk(payload):
    from .links import invariance_suite

    seed, start, count = payload
    return invariance_suite(count, seed, start=start)


def cmd_invariance_suite(args) -> int:
    from .links import InvarianceReport, invariance_suite

    if args.jobs <= 1:
        rep = invariance_suite(args.trials, args.seed)
    else:
        chunk = max(1, -(-args.trials // args.jobs))
        payloads = [(args.seed, s, min(chunk, args.trials - s)) for s in range(0, args.trials, chunk)]
        rep = InvarianceReport()
        with ProcessPoolExecutor(args.jobs) as ex:
            for part in ex.map(_suite_chunk, payloads):  # map keeps trial order
                rep.trials += part.trials
                for key in ("kauffman", "jones"):
                    rep.passes[key] += part.passes[key]
                    rep.failures[key] += part.failures[key]
                rep.lines += part.lines
                if rep.first_counterexample is None:
                    rep.first_counterexample = part.first_counterexample
    if args.verbose:
        print("\n".join(rep.lines))
    print(rep.summary())
    print("PASS" if rep.ok else "FAIL")
    return 0 if rep.ok else 1


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="typeb", description="Type-B braid quotients: dimensions, traces, invariants, Potts.")
    sub = p.add_subparsers(dest="cmd", required=True)

    s = sub.add_parser("dims", help="dimension of a closed presentation")
    s.add_argument("--algebra", required=True, choices=["bmwB", "bmwA", "heckeB", "tlb", "tlb-diagrams"])
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--dump", action="store_true", help="print basis and structure constants")
    s.set_defaults(fn=cmd_dims)

    s = sub.add_parser("bratteli", help="path counts of the pair-of-partitions Bratteli diagram")
    s.add_argument("n", type=int)
    s.add_argument("--check", action="store_true")
    s.set_defaults(fn=cmd_bratteli)

    s = sub.add_parser("verify", help="exact Yang-Baxter / reflection / relation checks")
    s.add_argument("what", choices=["ybe", "re", "relations"])
    s.add_argument("--f1", choices=["one", "symbolic"], default="one")
    s.add_argument("--specialize", action="store_true", help="random rational q, lam, q1 (needs --seed)")
    s.add_argument("--seed", type=int)
    s.set_defaults(fn=cmd_verify)

    s = sub.add_parser("invariant", help="type-B link invariant of a braid file")
    s.add_argument("--braid", required=True, help="file with braid tokens, '-' for stdin")
    s.add_argument("--route", choices=["kauffman", "jones"], default="jones")
    s.add_argument("--strands", type=int)
    s.add_argument("--set", action="append", metavar="NAME=VALUE", help="specialize a parameter")
    s.set_defaults(fn=cmd_invariant)

    s = sub.add_parser("potts", help="boundary Potts partition function")
    s.add_argument("--lattice", required=True)
    s.add_argument("--states", type=int, required=True)
    s.add_argument("--crosscheck", action="store_true")
    s.set_defaults(fn=cmd_potts)

    s = sub.add_parser("trace-solve", help="Markov trace family on the B*B tower")
    s.add_argument("n", type=int)
    s.add_argument("--seed", type=int, help="also test nondegeneracy at a random point")
    s.set_defaults(fn=cmd_trace_solve)

    s = sub.add_parser("invariance-suite", help="randomized Markov-move invariance")
    s.add_argument("--trials", type=int, default=200)
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--verbose", action="store_true")
    s.set_defaults(fn=cmd_invariance_suite)
    return p


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.fn(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except TypeBError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
