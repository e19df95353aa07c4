"""Shared brute-force oracles for the test suite.

Everything here recomputes group-theoretic facts by element enumeration,
deliberately avoiding the package's lattice machinery so the two routes
stay independent.
"""

import math
from itertools import product
from typing import Iterator

from ktower.fgab import FgAbGroup, GroupElement, Homomorphism
from ktower.intlin import IntMatrix


def finite_group_catalog(max_order: int) -> list[FgAbGroup]:
    """All finite canonical forms with order <= max_order."""
    out = [FgAbGroup.trivial()]

    def extend(chain: tuple[int, ...], prod_so_far: int) -> None:
        # each successive factor is a multiple of the previous one
        last = chain[-1] if chain else 1
        mult = 1
        while True:
            d = last * mult if chain else mult
            mult += 1
            if d < 2:
                continue
            if prod_so_far * d > max_order:
                break
            new = chain + (d,)
            out.append(FgAbGroup(0, new))
            extend(new, prod_so_far * d)

    extend((), 1)
    return out


def elements_of(g: FgAbGroup) -> Iterator[GroupElement]:
    if g.free_rank:
        raise ValueError("can only enumerate finite groups")
    for coords in product(*(range(d) for d in g.torsion)):
        yield GroupElement(g, coords)


def random_valid_hom(rng, source: FgAbGroup, target: FgAbGroup) -> Homomorphism:
    """Random homomorphism built column by column from the order constraints.

    For a source generator of order d and a target generator of order m,
    the entry must be a multiple of m / gcd(d, m); free target entries
    must vanish unless d = 0.
    """
    cols = []
    for d in source.generator_orders():
        col = []
        for m in target.generator_orders():
            if d == 0:
                col.append(rng.randint(-6, 6) if m == 0 else rng.randrange(m))
            elif m == 0:
                col.append(0)
            else:
                step = m // math.gcd(d, m)
                col.append(step * rng.randrange(m // step))
        cols.append(col)
    entries = tuple(tuple(col[i] for col in cols) for i in range(target.generator_count))
    return Homomorphism(
        source, target, IntMatrix(target.generator_count, source.generator_count, entries)
    )


def torsion_count(g: FgAbGroup, m: int) -> int:
    """#{x in G : m*x = 0} computed from the canonical form."""
    n = 1
    for d in g.torsion:
        n *= math.gcd(m, d)
    return n


def brute_force_hom_data(f: Homomorphism):
    """Kernel set, image set, and cokernel m-torsion counts by enumeration."""
    ker = set()
    img = set()
    for x in elements_of(f.source):
        y = f.apply(x)
        img.add(y.coords)
        if y.is_zero():
            ker.add(x.coords)
    coker_counts = {}
    for m in range(1, f.target.order() + 1):
        hits = sum(1 for y in elements_of(f.target) if y.scale(m).coords in img)
        coker_counts[m] = hits // len(img)
    return ker, img, coker_counts
