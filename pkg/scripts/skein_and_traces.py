"""Skein branches of the blob-algebra image and the Markov trace family on the B*B tower."""

import argparse

from typeb.algebra import compute_basis, present_bmwB, solve_markov_trace
from typeb.algebra.trace import check_e_rule, is_nondegenerate
from typeb.braid import parse_braid
from typeb.links import jones_B, kauffman_B
from typeb.tlb import solve_skein


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--levels", type=int, default=2, choices=[1, 2, 3])
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    sol = solve_skein()
    print("skein branch:", sol.branch)
    for b in sol.branches:
        print("  condition:", b)
    for k, v in sol.values.items():
        print(f"  {k} = {v}")

    tables = [compute_basis(present_bmwB(n)) for n in range(1, args.levels + 1)]
    tr = solve_markov_trace(tables[-1], tables[:-1])
    print(f"\ntrace on {tr.table.name}: free parameters {list(tr.parameters)}")
    for name, word in tr.moments.items():
        print(f"  {name} = tr[{' '.join(word)}]")
    if len(tables) > 1:
        print("  e-rule:", check_e_rule(tr, tables[-2]))
    print("  nondegenerate:", is_nondegenerate(tr, args.seed))

    print("\nsample invariants")
    for text, n in [("y", 1), ("y 1 y 1", 2), ("1 1 1", 2), ("y 1 -2 1 y'", 3)]:
        w = parse_braid(text, n)
        print(f"  [{text}] n={n}")
        print(f"    kauffman: {kauffman_B(w)}")
        print(f"    jones:    {jones_B(w)}")


if __name__ == "__main__":
    main()
