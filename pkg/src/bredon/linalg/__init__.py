"""Exact integer linear algebra."""

from .abelian import AbHom, FGAbGroup, NotAHomomorphism, Subquotient, direct_sum, kernel, subquotient
from .cochain import (
    CochainComplex,
    CochainMap,
    CohomologyGroup,
    LongExactSequence,
    NotAComplex,
    check_exactness,
    cohomology,
    cohomology_group,
    long_exact_sequence,
    mapping_cone,
    same_cohomology,
)
from .matrix import IntMatrix, assemble, block_diag, hstack, vstack
from .smith import (
    SmithDecomposition,
    cokernel_invariants,
    determinant,
    image_basis,
    invariant_factors,
    kernel_basis,
    rank,
    smith,
    solve,
)
