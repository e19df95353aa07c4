"""Finitely generated abelian groups in canonical form, homomorphisms
between them, and exact-sequence checking.

A group is Z^free_rank + Z/d_1 + ... + Z/d_t with each d_i >= 2 and
d_i | d_{i+1}, which makes equality of canonical forms the same thing as
isomorphism.  Elements and homomorphisms are written against the
canonical generators, free generators first, then torsion generators in
chain order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .intlin import (
    IntMatrix,
    integer_kernel,
    lattice_basis,
    lattice_contains,
    lattice_equal,
    matrix_from_json,
    matrix_to_json,
    snf_with_inverses,
    solve_integral,
)


@dataclass(frozen=True)
class FgAbGroup:
    """Canonical form of a finitely generated abelian group.

    >>> FgAbGroup(1, (2, 4))
    FgAbGroup(free_rank=1, torsion=(2, 4))
    """

    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.free_rank < 0:
            raise ValueError("free rank must be nonnegative")
        object.__setattr__(self, "torsion", tuple(int(d) for d in self.torsion))
        for d in self.torsion:
            if d < 2:
                raise ValueError("torsion orders must be at least 2 in canonical form")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError("torsion orders must form a divisibility chain")

    @staticmethod
    def trivial() -> "FgAbGroup":
        return FgAbGroup(0, ())

    @staticmethod
    def free(rank: int) -> "FgAbGroup":
        return FgAbGroup(rank, ())

    @staticmethod
    def cyclic(order: int) -> "FgAbGroup":
        """Z/order; order 0 means Z and order 1 the trivial group."""
        if order < 0:
            raise ValueError("cyclic order must be nonnegative")
        if order == 0:
            return FgAbGroup(1, ())
        if order == 1:
            return FgAbGroup(0, ())
        return FgAbGroup(0, (order,))

    @staticmethod
    def from_orders(orders: Sequence[int]) -> "FgAbGroup":
        """Canonical form of a direct sum of cyclic groups of given orders."""
        acc = [int(x) for x in orders]
        if any(x < 0 for x in acc):
            raise ValueError("cyclic orders must be nonnegative")
        free = sum(1 for x in acc if x == 0)
        tors = [x for x in acc if x >= 2]
        pres = present(IntMatrix.diagonal(tors))
        return FgAbGroup(free, pres.group.torsion)

    @property
    def generator_count(self) -> int:
        return self.free_rank + len(self.torsion)

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def order(self) -> int:
        """Number of elements; 0 means infinite."""
        if self.free_rank:
            return 0
        return math.prod(self.torsion)

    def generator_orders(self) -> tuple[int, ...]:
        """Order of each canonical generator, 0 for the free ones."""
        return (0,) * self.free_rank + self.torsion

    def relation_matrix(self) -> IntMatrix:
        """Columns are the defining relations d_i * e_{free_rank + i}."""
        p = self.generator_count
        t = len(self.torsion)
        rows = []
        for i in range(p):
            rows.append(
                tuple(
                    self.torsion[j] if i == self.free_rank + j else 0 for j in range(t)
                )
            )
        return IntMatrix(p, t, tuple(rows))


def rationalized_rank(g: FgAbGroup) -> int:
    """dim_Q (G tensor Q); torsion dies under rationalization."""
    return g.free_rank


def direct_sum(g: FgAbGroup, h: FgAbGroup) -> FgAbGroup:
    """Canonical form of G + H.

    >>> direct_sum(FgAbGroup.cyclic(2), FgAbGroup.cyclic(3))
    FgAbGroup(free_rank=0, torsion=(6,))
    """
    pres = present(IntMatrix.diagonal(g.torsion + h.torsion))
    return FgAbGroup(g.free_rank + h.free_rank, pres.group.torsion)


def power(g: FgAbGroup, k: int) -> FgAbGroup:
    """k-fold direct sum of G with itself.

    Repeating each invariant factor k times keeps the divisibility chain,
    so the result is already canonical.
    """
    if k < 0:
        raise ValueError("power requires k >= 0")
    torsion = tuple(d for d in g.torsion for _ in range(k))
    return FgAbGroup(g.free_rank * k, torsion)


@dataclass(frozen=True)
class GroupElement:
    """Element written against the canonical generators of its group.

    Torsion coordinates are reduced into [0, d_i) on construction.
    """

    group: FgAbGroup
    coords: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.coords) != self.group.generator_count:
            raise ValueError("coordinate length must match generator count")
        f = self.group.free_rank
        fixed = tuple(
            int(c) % d if i >= f else int(c)
            for i, (c, d) in enumerate(
                zip(self.coords, (0,) * f + self.group.torsion)
            )
        )
        object.__setattr__(self, "coords", fixed)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def __add__(self, other: "GroupElement") -> "GroupElement":
        if self.group != other.group:
            raise ValueError("elements of different groups")
        return GroupElement(self.group, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "GroupElement":
        return GroupElement(self.group, tuple(-c for c in self.coords))

    def scale(self, k: int) -> "GroupElement":
        return GroupElement(self.group, tuple(k * c for c in self.coords))


def element_order(x: GroupElement) -> int:
    """Least k >= 1 with k*x = 0; 0 means infinite order.

    >>> element_order(GroupElement(FgAbGroup.cyclic(12), (8,)))
    3
    """
    f = x.group.free_rank
    if any(c for c in x.coords[:f]):
        return 0
    return math.lcm(*(d // math.gcd(d, c) for c, d in zip(x.coords[f:], x.group.torsion)))


@dataclass(frozen=True)
class QuotientPresentation:
    """Z^p / (column lattice of relations) with transport both ways.

    to_canonical maps old coordinates to canonical ones; generator_reps
    gives a representative in Z^p for each canonical generator.
    """

    group: FgAbGroup
    relations: IntMatrix
    to_canonical: IntMatrix
    generator_reps: IntMatrix


def present(relations: IntMatrix) -> QuotientPresentation:
    """Present Z^rows / im(relations) in canonical form with transport."""
    p = relations.rows
    dec = snf_with_inverses(relations)
    rank = sum(1 for d in dec.factors if d)
    torsion_idx = [i for i in range(rank) if dec.factors[i] >= 2]
    free_idx = list(range(rank, p))
    group = FgAbGroup(len(free_idx), tuple(dec.factors[i] for i in torsion_idx))
    selected = free_idx + torsion_idx
    to_canonical = dec.u.submatrix(selected, list(range(p)))
    generator_reps = dec.u_inv.submatrix(list(range(p)), selected)
    return QuotientPresentation(
        group=group,
        relations=relations,
        to_canonical=to_canonical,
        generator_reps=generator_reps,
    )


def from_presentation(relations: IntMatrix) -> FgAbGroup:
    """Canonical form of Z^rows modulo the column lattice of ``relations``.

    Use present() when the change of basis is needed to transport
    elements between the presentation and the canonical form.

    >>> from_presentation(IntMatrix.diagonal([2, 1, 0]))
    FgAbGroup(free_rank=1, torsion=(2,))
    """
    return present(relations).group


@dataclass(frozen=True)
class Homomorphism:
    """Map between canonical groups, as a target x source generator matrix.

    Validity is checked eagerly: for a source generator of order d, d
    times its image column must fall in the target's relation lattice,
    otherwise the matrix does not define a homomorphism and construction
    raises.  Torsion rows are reduced modulo their generator order, so
    equal maps have equal matrices.
    """

    source: FgAbGroup
    target: FgAbGroup
    matrix: IntMatrix

    def __post_init__(self) -> None:
        if self.matrix.rows != self.target.generator_count:
            raise ValueError("matrix row count must match target generator count")
        if self.matrix.cols != self.source.generator_count:
            raise ValueError("matrix column count must match source generator count")
        ft = self.target.free_rank
        reduced = tuple(
            tuple(
                x % self.target.torsion[i - ft] if i >= ft else x
                for x in row
            )
            for i, row in enumerate(self.matrix.entries)
        )
        object.__setattr__(self, "matrix", IntMatrix(self.matrix.rows, self.matrix.cols, reduced))
        self._check_valid()

    def _check_valid(self) -> None:
        orders = self.source.generator_orders()
        torsion_cols = [j for j, d in enumerate(orders) if d]
        if not torsion_cols:
            return
        stacked = IntMatrix(
            self.matrix.rows,
            len(torsion_cols),
            tuple(
                tuple(orders[j] * row[j] for j in torsion_cols)
                for row in self.matrix.entries
            ),
        )
        if not lattice_contains(self.target.relation_matrix(), stacked):
            raise ValueError(
                "matrix does not define a homomorphism: some torsion generator's "
                "image violates its order"
            )

    @staticmethod
    def identity(g: FgAbGroup) -> "Homomorphism":
        return Homomorphism(g, g, IntMatrix.identity(g.generator_count))

    @staticmethod
    def zero(source: FgAbGroup, target: FgAbGroup) -> "Homomorphism":
        return Homomorphism(source, target, IntMatrix.zero(target.generator_count, source.generator_count))

    def apply(self, x: GroupElement) -> GroupElement:
        if x.group != self.source:
            raise ValueError("element is not in the source group")
        col = self.matrix @ IntMatrix.column(x.coords)
        return GroupElement(self.target, col.col(0))

    def compose(self, other: "Homomorphism") -> "Homomorphism":
        """self after other (self.compose(g) is x -> self(g(x)))."""
        if other.target != self.source:
            raise ValueError("composition shape mismatch")
        return Homomorphism(other.source, self.target, self.matrix @ other.matrix)

    def is_zero_map(self) -> bool:
        return self.matrix.is_zero()


def image_lattice(f: Homomorphism) -> IntMatrix:
    """Generators (columns) of the sublattice of Z^target_gens realizing im f.

    Contains the target relation lattice, so two image lattices agree
    exactly when the image subgroups agree.
    """
    return f.matrix.hstack(f.target.relation_matrix())


def kernel_lattice(f: Homomorphism) -> IntMatrix:
    """Generators of the sublattice of Z^source_gens realizing ker f."""
    r_t = f.target.relation_matrix()
    stacked = f.matrix.hstack(r_t)
    ker = integer_kernel(stacked)
    p = f.source.generator_count
    proj = ker.submatrix(list(range(p)), list(range(ker.cols)))
    return proj.hstack(f.source.relation_matrix())


def _quotient_as_subgroup(
    ambient: FgAbGroup, gens: IntMatrix
) -> tuple[FgAbGroup, Homomorphism]:
    """Canonical form of (lattice of gens)/(ambient relations), plus the
    inclusion of that subquotient into the ambient group.

    gens must contain the ambient relation lattice.
    """
    basis = lattice_basis(gens)
    rel = ambient.relation_matrix()
    w = solve_integral(basis, rel)
    if w is None:
        raise ValueError("generators do not contain the ambient relation lattice")
    pres = present(w)
    incl_matrix = basis @ pres.generator_reps
    incl = Homomorphism(pres.group, ambient, incl_matrix)
    return pres.group, incl


def kernel(f: Homomorphism) -> tuple[FgAbGroup, Homomorphism]:
    """Kernel subgroup with its inclusion into the source.

    >>> two = Homomorphism(FgAbGroup.cyclic(4), FgAbGroup.cyclic(4), IntMatrix.from_rows([[2]]))
    >>> kernel(two)[0]
    FgAbGroup(free_rank=0, torsion=(2,))
    """
    return _quotient_as_subgroup(f.source, kernel_lattice(f))


def image(f: Homomorphism) -> tuple[FgAbGroup, Homomorphism]:
    """Image subgroup with its inclusion into the target."""
    return _quotient_as_subgroup(f.target, image_lattice(f))


def cokernel_data(f: Homomorphism) -> tuple[FgAbGroup, Homomorphism]:
    """Cokernel together with the canonical projection from the target."""
    pres = present(image_lattice(f))
    proj = Homomorphism(f.target, pres.group, pres.to_canonical)
    return pres.group, proj


def cokernel(f: Homomorphism) -> FgAbGroup:
    """target / im(f) in canonical form."""
    return cokernel_data(f)[0]


def same_subgroup(a: Homomorphism, b: Homomorphism) -> bool:
    """Whether two inclusions carve out the same subgroup of one ambient
    group, decided by mutual lattice containment, not isomorphism type."""
    if a.target != b.target:
        raise ValueError("subgroups of different ambient groups")
    amb = a.target.relation_matrix()
    la = a.matrix.hstack(amb)
    lb = b.matrix.hstack(amb)
    return lattice_equal(la, lb)


@dataclass(frozen=True)
class NodeReport:
    """Exactness verdict at one interior node of a sequence."""

    node: int
    group: FgAbGroup
    exact: bool


@dataclass(frozen=True)
class ExactnessReport:
    nodes: tuple[FgAbGroup, ...]
    reports: tuple[NodeReport, ...]
    exact: bool
    first_failure: Optional[int]


def check_exact(maps: Sequence[Homomorphism]) -> ExactnessReport:
    """Check im(f_i) = ker(f_{i+1}) at every interior node.

    Node k sits between maps[k-1] and maps[k]; the endpoints are not
    checked (nothing constrains them).  Image and kernel are compared as
    subgroups through their lattices, so an image that is abstractly
    isomorphic to the kernel but sits differently still fails.
    """
    if not maps:
        raise ValueError("check_exact needs at least one map")
    for f, g in zip(maps, maps[1:]):
        if f.target != g.source:
            raise ValueError("consecutive maps do not compose")
    nodes = (maps[0].source,) + tuple(f.target for f in maps)
    reports = []
    first_failure = None
    for k in range(1, len(maps)):
        f, g = maps[k - 1], maps[k]
        ok = lattice_equal(image_lattice(f), kernel_lattice(g))
        reports.append(NodeReport(node=k, group=nodes[k], exact=ok))
        if not ok and first_failure is None:
            first_failure = k
    return ExactnessReport(
        nodes=nodes,
        reports=tuple(reports),
        exact=first_failure is None,
        first_failure=first_failure,
    )


# --- JSON transport -------------------------------------------------------
#
# Torsion orders are decimal strings for the same reason matrix entries
# are; free_rank is a structural count and stays a plain number.


def group_to_json(g: FgAbGroup) -> dict:
    return {"free_rank": g.free_rank, "torsion": [str(d) for d in g.torsion]}


def group_from_json(obj) -> FgAbGroup:
    if not isinstance(obj, dict) or "free_rank" not in obj or "torsion" not in obj:
        raise ValueError("group JSON must carry free_rank and torsion")
    torsion = obj["torsion"]
    if not isinstance(torsion, list):
        raise ValueError("group torsion must be a list")
    return FgAbGroup(int(obj["free_rank"]), tuple(int(str(d), 10) for d in torsion))


def hom_to_json(f: Homomorphism) -> dict:
    return {
        "source": group_to_json(f.source),
        "target": group_to_json(f.target),
        "matrix": matrix_to_json(f.matrix),
    }


def hom_from_json(obj) -> Homomorphism:
    if not isinstance(obj, dict):
        raise ValueError("homomorphism JSON must be an object")
    try:
        source = group_from_json(obj["source"])
        target = group_from_json(obj["target"])
        matrix = matrix_from_json(obj["matrix"])
    except KeyError as exc:
        raise ValueError(f"homomorphism JSON missing field: {exc}") from exc
    return Homomorphism(source, target, matrix)


def sequence_from_json(obj) -> list[Homomorphism]:
    if not isinstance(obj, dict) or not isinstance(obj.get("maps"), list):
        raise ValueError('sequence JSON must be {"maps": [...]}')
    return [hom_from_json(h) for h in obj["maps"]]


def sequence_to_json(maps: Sequence[Homomorphism]) -> dict:
    return {"maps": [hom_to_json(f) for f in maps]}
