"""Closure dimensions of every presentation against the expected counts, with timings."""

import argparse
import time

from typeb.algebra import compute_basis, present_bmwA, present_bmwB, present_heckeB, present_tlb
from typeb.bratteli import path_counts
from typeb.braid import coxeter_closure
from typeb.tlb import enumerate_diagrams


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-bbb", type=int, default=3)
    args = ap.parse_args()

    rows = []
    for n in range(1, args.max_bbb + 1):
        rows.append(("B*B", n, present_bmwB(n), sum(k * k for k in path_counts(n).values())))
    for n in (2, 3, 4):
        rows.append(("BMW-A", n, present_bmwA(n), None))
    for n in (1, 2, 3, 4):
        rows.append(("HB", n, present_heckeB(n), len(coxeter_closure(n))))
    for n in (1, 2, 3):
        rows.append(("TB", n, present_tlb(n), len(enumerate_diagrams(n))))

    print(f"{'algebra':8} {'n':>2} {'dim':>5} {'expected':>8} {'oracle':>6} {'sec':>6}")
    for name, n, pres, oracle in rows:
        t0 = time.perf_counter()
        dim = compute_basis(pres).dimension
        dt = time.perf_counter() - t0
        print(f"{name:8} {n:2d} {dim:5d} {pres.expected_dim:8d} {oracle if oracle is not None else '-':>6} {dt:6.2f}")


if __name__ == "__main__":
    main()
