"""Exact computations with finitely generated abelian groups and countable
towers, driving twisted K-theory and periodic cyclic homology examples for
SU(n), SU(infinity), the 3-sphere, and countable disjoint unions.

The layers build on each other:

- `intlin`: integer matrices, Smith normal form, lattice membership.
- `fgab`: finitely generated abelian groups, homomorphisms, exactness.
- `towers`: inverse and direct towers, limit descriptors, Mittag-Leffler
  checks, countable product and sum bookkeeping.
- `ktwist`: the twisted K-theory and K-homology computations for the
  supported spaces.
- `cyclic`: exterior-algebra dimension counts and the periodic cyclic
  homology side, including the rank comparison against K-theory.
- `cli`: the `ktower` command line front end.
"""

from .intlin import (
    IntMatrix,
    SmithDecomposition,
    integer_kernel,
    lattice_basis,
    lattice_contains,
    lattice_equal,
    matrix_from_json,
    matrix_to_json,
    minor_gcd_factors,
    snf,
    snf_with_inverses,
    solve_integral,
)
from .fgab import (
    ExactnessReport,
    FgAbGroup,
    GroupElement,
    Homomorphism,
    check_exact,
    cokernel,
    direct_sum,
    element_order,
    from_presentation,
    group_from_json,
    group_to_json,
    hom_from_json,
    hom_to_json,
    image,
    kernel,
    power,
    present,
    rationalized_rank,
    same_subgroup,
)
from .towers import (
    CountableProductDescriptor,
    CountableSumDescriptor,
    CyclicFamily,
    DirectTower,
    EventuallyConstant,
    ExactLimit,
    General,
    InverseTower,
    KGradedGroup,
    LevelwiseFinite,
    Lim1NonzeroUncomputed,
    Lim1Unproven,
    Lim1Zero,
    MLFailedAt,
    MLForced,
    MLVerifiedUpTo,
    ProfiniteNontrivial,
    TrivialLimit,
    UnprovenLimit,
    Unrepresentable,
    all_ones_order,
    builtin_graded_pair,
    builtin_tower,
    constant_tower,
    direct_limit,
    image_chain,
    inverse_limit,
    is_mittag_leffler,
    lim1,
    milnor_assemble,
    tower_from_json,
    truncated_product,
    truncated_sum,
    unbounded_torsion_witness,
)
from .ktwist import (
    DivisibilityTable,
    KResult,
    Sphere3,
    SphereDisjointUnion,
    SUFinite,
    SUInfinite,
    cyclic_order,
    divisibility_table,
    first_trivial_rank,
    stabilize,
    twisted_k,
    twisted_khomology,
)
from .cyclic import (
    ChernCheck,
    ExteriorAlgebra,
    GradedDims,
    HpTowerReport,
    RestrictionMap,
    TwistedHpResult,
    chern_rank_check,
    graded_dims,
    hp_su_infinity,
    restriction,
    su_de_rham,
    twisted_hp,
)

__version__ = "0.1.0"

__all__ = [
    "IntMatrix",
    "SmithDecomposition",
    "integer_kernel",
    "lattice_basis",
    "lattice_contains",
    "lattice_equal",
    "matrix_from_json",
    "matrix_to_json",
    "minor_gcd_factors",
    "snf",
    "snf_with_inverses",
    "solve_integral",
    "ExactnessReport",
    "FgAbGroup",
    "GroupElement",
    "Homomorphism",
    "check_exact",
    "cokernel",
    "direct_sum",
    "element_order",
    "from_presentation",
    "group_from_json",
    "group_to_json",
    "hom_from_json",
    "hom_to_json",
    "image",
    "kernel",
    "power",
    "present",
    "rationalized_rank",
    "same_subgroup",
    "CountableProductDescriptor",
    "CountableSumDescriptor",
    "CyclicFamily",
    "DirectTower",
    "EventuallyConstant",
    "ExactLimit",
    "General",
    "InverseTower",
    "KGradedGroup",
    "LevelwiseFinite",
    "Lim1NonzeroUncomputed",
    "Lim1Unproven",
    "Lim1Zero",
    "MLFailedAt",
    "MLForced",
    "MLVerifiedUpTo",
    "ProfiniteNontrivial",
    "TrivialLimit",
    "UnprovenLimit",
    "Unrepresentable",
    "all_ones_order",
    "builtin_graded_pair",
    "builtin_tower",
    "constant_tower",
    "direct_limit",
    "image_chain",
    "inverse_limit",
    "is_mittag_leffler",
    "lim1",
    "milnor_assemble",
    "tower_from_json",
    "truncated_product",
    "truncated_sum",
    "unbounded_torsion_witness",
    "DivisibilityTable",
    "KResult",
    "Sphere3",
    "SphereDisjointUnion",
    "SUFinite",
    "SUInfinite",
    "cyclic_order",
    "divisibility_table",
    "first_trivial_rank",
    "stabilize",
    "twisted_k",
    "twisted_khomology",
    "ChernCheck",
    "ExteriorAlgebra",
    "GradedDims",
    "HpTowerReport",
    "RestrictionMap",
    "TwistedHpResult",
    "chern_rank_check",
    "graded_dims",
    "hp_su_infinity",
    "restriction",
    "su_de_rham",
    "twisted_hp",
]
