"""MDS entanglement-assisted quantum codes from Fourier and Vandermonde matrices."""

from .classical_codes import (
    LinearCode,
    check_matrix,
    code_from_arithmetic_rows,
    code_from_consecutive_rows,
    encode,
    erasure_decode,
    mds_check_minors,
    min_distance_exhaustive,
    nearest_codeword_bruteforce,
)
from .eaqecc import (
    CodePair,
    EaqeccParams,
    classify,
    construction1,
    entanglement_c_pair,
    is_mds_eaqecc,
    max_entanglement_pair,
)
from .finite_field import (
    FieldElement,
    FieldSpec,
    element_order,
    find_extension_field,
    find_irreducible,
    find_prime_field,
    find_smallest_field,
    primitive_element,
    primitive_nth_root,
)
from .matrix import FourierPair, MatrixGF, fourier, mat_mul, rank, vandermonde
from .planner import ConstructionPlan, Requirement, plan, solve_length

__all__ = [
    "CodePair",
    "ConstructionPlan",
    "EaqeccParams",
    "FieldElement",
    "FieldSpec",
    "FourierPair",
    "LinearCode",
    "MatrixGF",
    "Requirement",
    "check_matrix",
    "classify",
    "code_from_arithmetic_rows",
    "code_from_consecutive_rows",
    "construction1",
    "element_order",
    "encode",
    "entanglement_c_pair",
    "erasure_decode",
    "find_extension_field",
    "find_irreducible",
    "find_prime_field",
    "find_smallest_field",
    "fourier",
    "is_mds_eaqecc",
    "mat_mul",
    "max_entanglement_pair",
    "mds_check_minors",
    "min_distance_exhaustive",
    "nearest_codeword_bruteforce",
    "plan",
    "primitive_element",
    "primitive_nth_root",
    "rank",
    "solve_length",
    "vandermonde",
]

__version__ = "0.1.0"
