"""Exact tools for union-closed families, their matrices and lattices."""

from .family import (
    ElementStats,
    FamilyError,
    ReducedDiagnostic,
    SetFamily,
    complement_family,
    element_stats,
    is_intersection_closed,
    is_reduced,
    is_union_closed,
    read_fam,
    reduce,
    write_fam,
)
from .matrix import (
    BitMatrix,
    characteristic_matrix,
    column_sums,
    complement,
    is_intersection_closed_matrix,
    is_reduced_matrix,
    is_union_closed_matrix,
    product_matrix,
    product_sum,
)
from .conjectures import (
    ConjectureReport,
    Verdict,
    check_conjecture_10,
    check_frankl,
    check_prop14,
    check_simplex,
    check_strong,
    minimal_r,
    r_tuple_intersection_average,
    symdiff_identity,
    weight_wr,
)
from .lattice import (
    FiniteLattice,
    LatticeError,
    check_conjecture_1,
    check_conjecture_2,
    family_to_lattice,
    join_irreducibles,
    meet_irreducibles,
    to_intersection_family,
    to_union_family,
    validate_lattice,
)

__version__ = "0.1.0"

__all__ = [
    "ElementStats",
    "FamilyError",
    "ReducedDiagnostic",
    "SetFamily",
    "complement_family",
    "element_stats",
    "is_intersection_closed",
    "is_reduced",
    "is_union_closed",
    "read_fam",
    "reduce",
    "write_fam",
    "BitMatrix",
    "characteristic_matrix",
    "column_sums",
    "complement",
    "is_intersection_closed_matrix",
    "is_reduced_matrix",
    "is_union_closed_matrix",
    "product_matrix",
    "product_sum",
    "ConjectureReport",
    "Verdict",
    "check_conjecture_10",
    "check_frankl",
    "check_prop14",
    "check_simplex",
    "check_strong",
    "minimal_r",
    "r_tuple_intersection_average",
    "symdiff_identity",
    "weight_wr",
    "FiniteLattice",
    "LatticeError",
    "check_conjecture_1",
    "check_conjecture_2",
    "family_to_lattice",
    "join_irreducibles",
    "meet_irreducibles",
    "to_intersection_family",
    "to_union_family",
    "validate_lattice",
]
