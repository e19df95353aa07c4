#!/usr/bin/env python3
"""Torsion growth in the countable product of Z/n.

Walks the truncations of the twisted K-group of a countable union of
3-spheres (component k twisted by k), printing the canonical form and
the order of the all-ones element at each stage.  The strictly
increasing record orders are the evidence that the full product has
unbounded torsion.
"""

import argparse

from ktower.cli import group_text
from ktower.ktwist import SphereDisjointUnion, twisted_k
from ktower.towers import CyclicFamily, all_ones_order, unbounded_torsion_witness


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--upto", type=int, default=12, help="largest truncation to print")
    ap.add_argument("--witness-bound", type=int, default=30, dest="witness_bound")
    args = ap.parse_args()

    union = SphereDisjointUnion()
    product = twisted_k(union).total
    family = CyclicFamily(1, lambda n: n)

    print(f"{'N':>3}  {'all-ones order':>15}  truncated product")
    for upto in range(1, args.upto + 1):
        g = product.truncate(upto)
        print(f"{upto:>3}  {all_ones_order(family, upto):>15}  {group_text(g)}")

    witness = unbounded_torsion_witness(family, args.witness_bound)
    if witness is None:
        print(f"\nno growth observed up to {args.witness_bound}")
    else:
        records = ", ".join(str(o) for o in witness.orders)
        print(f"\nrecord orders up to {args.witness_bound}: {records}")


if __name__ == "__main__":
    main()
