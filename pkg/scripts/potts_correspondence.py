"""Show the fitted wall factor and the trace/brute-force agreement on small grids."""

import argparse

from typeb.potts import brute_force_Z, correspondence, crosscheck, fit_wall_factor, grid, lattice_to_tangle


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--rows", type=int, default=2)
    ap.add_argument("--cols", type=int, default=3)
    args = ap.parse_args()

    w, e0 = fit_wall_factor()
    print(f"wall factor: ({w}) + ({e0}) e0")
    cor = correspondence()
    for kind in ("horizontal", "vertical"):
        s, c = getattr(cor, kind)
        print(f"{kind} factor: ({s}) + ({c}) e")
    print()
    for r in range(1, args.rows + 1):
        for c in range(1, args.cols + 1):
            for walled in (True, False):
                for f in (2, 3):
                    l = grid(r, c, walled)
                    strands, factors = lattice_to_tangle(l, cor)
                    res = crosscheck(l, f, cor)
                    tag = "walled" if walled else "free"
                    print(f"{r}x{c} {tag:6} f={f} strands={strands} factors={len(factors):2d} "
                          f"{'PASS' if res.passed else 'FAIL'}  Z = {brute_force_Z(l, f)}")


if __name__ == "__main__":
    main()
