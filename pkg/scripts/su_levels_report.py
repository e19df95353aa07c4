#!/usr/bin/env python3
"""Where does each twist level's order parameter reach 1?

One row per level: the orders for n = 2..8, the first rank certifying
triviality, and the infinite-union verdict at the chosen bound.  Levels
whose parameter never reaches 1 within the bound stay unproven; bump
--bound to push the search further.
"""

import argparse

from ktower.ktwist import SUInfinite, cyclic_order, first_trivial_rank, twisted_k
from ktower.towers import TrivialLimit


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--levels", type=int, default=24, help="report levels 1..LEVELS")
    ap.add_argument("--bound", type=int, default=64, help="search bound for the trivial rank")
    args = ap.parse_args()

    header = f"{'level':>5}  {'orders at n=2..8':<30}  {'first-1':>7}  verdict"
    print(header)
    print("-" * len(header))
    for level in range(1, args.levels + 1):
        orders = ", ".join(str(cyclic_order(n, level)) for n in range(2, 9))
        n0 = first_trivial_rank(level, args.bound)
        verdict = twisted_k(SUInfinite(level), bound=args.bound).total
        tag = "trivial" if isinstance(verdict, TrivialLimit) else f"unproven@{args.bound}"
        print(f"{level:>5}  {orders:<30}  {str(n0):>7}  {tag}")


if __name__ == "__main__":
    main()
