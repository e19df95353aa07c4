"""Twisted K-theory and K-homology for the supported space families:
special unitary groups at a fixed twist level, their countable union,
the 3-sphere, and countable disjoint unions of 3-spheres.

Only formulas with a structural justification are applied; anything that
would require connecting maps we do not possess is decided by
map-independent rules (cofinal triviality) or reported Unproven.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, gcd
from typing import Callable, Optional, Union

from .fgab import FgAbGroup, power
from .towers import (
    DEFAULT_BOUND,
    CountableProductDescriptor,
    CountableSumDescriptor,
    CyclicFamily,
    KGradedGroup,
    LimitDescriptor,
    TrivialLimit,
    UnprovenLimit,
    constant_tower,
    direct_limit,
    milnor_assemble,
)


# --- spaces -------------------------------------------------------------------


@dataclass(frozen=True)
class SUFinite:
    """SU(n) with a fixed nonzero twist level."""

    n: int
    level: int

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("n must be at least 2")
        if self.level < 1:
            raise ValueError("level must be at least 1 (untwisted is out of scope)")


@dataclass(frozen=True)
class SUInfinite:
    """The union of all SU(n) at a fixed nonzero twist level."""

    level: int

    def __post_init__(self):
        if self.level < 1:
            raise ValueError("level must be at least 1 (untwisted is out of scope)")


@dataclass(frozen=True)
class Sphere3:
    """The 3-sphere with a nonzero integer twist."""

    twist: int

    def __post_init__(self):
        if self.twist < 1:
            raise ValueError("twist must be at least 1 (untwisted is out of scope)")


@dataclass(frozen=True, eq=False)
class SphereDisjointUnion:
    """Countably many 3-spheres, component k twisted by twist_of(k)."""

    twist_of: Callable[[int], int] = lambda k: k
    first: int = 1

    def __post_init__(self):
        if self.first < 1:
            raise ValueError("component indices must start at 1 or later")

    def family(self) -> CyclicFamily:
        return CyclicFamily(self.first, self.twist_of)


TwistedSpace = Union[SUFinite, SUInfinite, Sphere3, SphereDisjointUnion]


# --- the order parameter ------------------------------------------------------


def cyclic_order(n: int, level: int) -> int:
    """Common order of the cyclic factors in the twisted K-theory of
    SU(n) at the given level: gcd of C(level+i, i) - 1 over i = 1..n-1.

    >>> cyclic_order(2, 7)
    7
    >>> cyclic_order(3, 3)
    3
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    if level < 1:
        raise ValueError("level must be at least 1")
    g = 0
    for i in range(1, n):
        g = gcd(g, comb(level + i, i) - 1)
    return g


def first_trivial_rank(level: int, bound: int) -> Optional[int]:
    """Least n in [2, bound] with cyclic_order(n, level) == 1, or None.

    The orders divide backwards (larger n divides smaller n), so once 1
    is reached every later level is 1 as well; a hit certifies cofinal
    triviality outright, not merely within the window.
    """
    for n in range(2, bound + 1):
        if cyclic_order(n, level) == 1:
            return n
    return None


@dataclass(frozen=True)
class DivisibilityTable:
    """Orders for n = 2..n_max at one level, with the divisibility
    verdict and the least n whose order is 1 (None if none in range)."""

    level: int
    n_max: int
    orders: tuple[int, ...]
    chain_ok: bool
    first_one: Optional[int]


def divisibility_table(level: int, n_max: int) -> DivisibilityTable:
    if n_max < 2:
        raise ValueError("n_max must be at least 2")
    orders = tuple(cyclic_order(n, level) for n in range(2, n_max + 1))
    # the order at any larger n must divide the order at any smaller n
    chain_ok = all(
        orders[earlier] % orders[later] == 0
        for later in range(len(orders))
        for earlier in range(later)
    )
    first_one = None
    for n_i, o in enumerate(orders):
        if o == 1:
            first_one = n_i + 2
            break
    return DivisibilityTable(
        level=level, n_max=n_max, orders=orders, chain_ok=chain_ok, first_one=first_one
    )


# --- results ------------------------------------------------------------------


KTotal = Union[
    FgAbGroup, LimitDescriptor, CountableProductDescriptor, CountableSumDescriptor
]


@dataclass(frozen=True)
class KResult:
    """A twisted K-group: the total, an optional graded split, and the
    chain of rules that produced it."""

    space: TwistedSpace
    total: KTotal
    graded: Optional[KGradedGroup]
    provenance: tuple[str, ...]

    def __post_init__(self):
        if not self.provenance:
            raise ValueError("every result must name the rules it applied")


def _su_finite_total(space: SUFinite) -> tuple[FgAbGroup, tuple[str, ...]]:
    order = cyclic_order(space.n, space.level)
    count = 2 ** (space.n - 1)
    total = power(FgAbGroup.cyclic(order), count)
    notes = (
        f"each factor is cyclic of order gcd(C(level+i,i)-1, i=1..n-1) = {order}",
        f"2^(n-1) = {count} factors; the parity split is not asserted",
    )
    return total, notes


def _su_infinite_graded(
    level: int, bound: int, direct: bool
) -> tuple[KTotal, KGradedGroup, tuple[str, ...]]:
    n0 = first_trivial_rank(level, bound)
    if n0 is None:
        verdict = UnprovenLimit(
            bound, note=f"order parameter never reached 1 for n <= {bound}"
        )
        return (
            verdict,
            KGradedGroup(verdict, verdict),
            (
                "connecting maps are not pinned down; only map-independent rules apply",
                f"no n <= {bound} has trivial order parameter: verdict stays open",
            ),
        )
    notes = (
        f"order parameter is 1 from n = {n0} on (it divides backwards), so every "
        "cofinal level group is trivial",
        "verdict is map-independent: towers of trivial groups have trivial (co)limits",
    )
    trivial_tower = constant_tower(
        FgAbGroup.trivial(), base=n0, bound=max(bound, n0), direct=direct
    )
    if direct:
        deg = direct_limit(trivial_tower)
        graded = KGradedGroup(deg, deg)
        notes = notes + ("colimit taken degreewise over the level tower",)
    else:
        graded = milnor_assemble(trivial_tower, trivial_tower)
        notes = notes + (
            "Milnor assembly applied degreewise; lim^1 vanishes by the "
            "eventually-constant rule",
        )
    assert isinstance(graded.k0, TrivialLimit) and isinstance(graded.k1, TrivialLimit)
    total = TrivialLimit(note=f"all level groups trivial from n = {n0} on")
    return total, graded, notes


def twisted_k(space: TwistedSpace, bound: int = DEFAULT_BOUND) -> KResult:
    """Twisted K-theory of a supported space.

    Bound exhaustion (only possible for the infinite union) surfaces as
    an Unproven total, never as an error or a guess.
    """
    if isinstance(space, SUFinite):
        total, notes = _su_finite_total(space)
        return KResult(space=space, total=total, graded=None, provenance=notes)
    if isinstance(space, Sphere3):
        g = FgAbGroup.cyclic(space.twist)
        return KResult(
            space=space,
            total=g,
            graded=KGradedGroup(FgAbGroup.trivial(), g),
            provenance=(
                "one cyclic factor of order equal to the twist, in odd degree only",
            ),
        )
    if isinstance(space, SphereDisjointUnion):
        product = CountableProductDescriptor(space.family())
        return KResult(
            space=space,
            total=product,
            graded=KGradedGroup(FgAbGroup.trivial(), product),
            provenance=(
                "componentwise odd-degree cyclic groups; K-theory of a countable "
                "union is the countable product (kept symbolic, truncate to inspect)",
            ),
        )
    if isinstance(space, SUInfinite):
        total, graded, notes = _su_infinite_graded(space.level, bound, direct=False)
        return KResult(space=space, total=total, graded=graded, provenance=notes)
    raise ValueError(f"unsupported space {space!r}")


def twisted_khomology(space: TwistedSpace, bound: int = DEFAULT_BOUND) -> KResult:
    """Twisted K-homology: totals agree with twisted_k on the compact
    families, the countable union dualizes product to sum, and the
    infinite union is a direct limit instead of an inverse one."""
    if isinstance(space, SUFinite):
        total, notes = _su_finite_total(space)
        return KResult(
            space=space,
            total=total,
            graded=None,
            provenance=notes + ("K-homology total agrees with the K-theory total",),
        )
    if isinstance(space, Sphere3):
        g = FgAbGroup.cyclic(space.twist)
        return KResult(
            space=space,
            total=g,
            graded=KGradedGroup(FgAbGroup.trivial(), g),
            provenance=(
                "one cyclic factor of order equal to the twist, in odd degree only",
                "K-homology total agrees with the K-theory total",
            ),
        )
    if isinstance(space, SphereDisjointUnion):
        parts = CountableSumDescriptor(space.family())
        return KResult(
            space=space,
            total=parts,
            graded=KGradedGroup(FgAbGroup.trivial(), parts),
            provenance=(
                "K-homology of a countable union is the countable direct sum "
                "(dual to the K-theory product; finite truncations coincide)",
            ),
        )
    if isinstance(space, SUInfinite):
        total, graded, notes = _su_infinite_graded(space.level, bound, direct=True)
        return KResult(space=space, total=total, graded=graded, provenance=notes)
    raise ValueError(f"unsupported space {space!r}")


def stabilize(k: KResult) -> KResult:
    """Tensoring with the compacts leaves K-groups unchanged; only the
    provenance grows."""
    return KResult(
        space=k.space,
        total=k.total,
        graded=k.graded,
        provenance=k.provenance + ("stabilization applied: K-groups unchanged",),
    )
