"""Exact chromatic numbers of abelian Cayley graphs.

An ``m x r`` integer matrix presents the Cayley graph of ``Z^m / H``
(``H`` the column lattice) with the images of ``+-e_1, ..., +-e_m`` as
connection set.  This package decides the chromatic number exactly for
every presentation with ``r <= 1``, ``r = m``, and the 3x2 and 4x2
shapes, cross-validated by a brute-force finite-graph coloring oracle,
and answers the same question for Cayley graphs generated by up to four
exact plane unit vectors.
"""

from .cayley import (
    Certificate,
    ChromaticResult,
    EvenColumnSums,
    ExceptionalForm,
    FiniteColoring,
    LoopWitness,
    NonexceptionalThree,
    ParityCertificate,
    ReductionStep,
    RelationMatrix,
    TriangleForm,
    apply_transform,
    as_relation_matrix,
    collapse_rows,
    column_lattice,
    drop_zero_columns,
    drop_zero_rows,
    is_bipartite,
    loop_witness,
)
from .classify import (
    MHNF,
    canonicalize_3x2,
    chromatic_number,
    classify_4x2,
    classify_canonical_3x2,
    classify_single_column,
    classify_triangle_form,
    is_mhnf_matrix,
    normalize,
    reduce_single_row,
    three_divisible_row_bound,
    triangle_certificates,
)
from .errors import (
    CayleyChiError,
    InternalViolationError,
    MatrixParseError,
    NoProperColoringError,
    NotCanonicalizableError,
    PreconditionError,
    SearchBudgetError,
    ShapeError,
    SizeCapError,
    UnsupportedShapeError,
    VectorError,
)
from .intlat import (
    ColumnHNF,
    IntMatrix,
    LatticeBasis,
    TransformRecord,
    column_hnf,
    kernel_lattice,
    lattice_contains,
    mat_vec,
    signed_permutations,
    solve_in_hnf,
    unit_vector,
    xgcd,
)
from .oracle import (
    BoundWitness,
    ChiBounds,
    CrossCheck,
    FiniteGraph,
    OracleConfig,
    ball_subgraph,
    chi_bounds,
    cross_check,
    exact_chromatic,
    finite_cayley_graph,
    proper_coloring,
    quotient_graph,
)
from .planar import (
    QuadraticNumber,
    UnitVector,
    chi_of_unit_vectors,
    dedup_collinear,
    parse_vectors,
    pythagorean_unit,
    relation_lattice,
    rotate,
    triangular_lattice_triple,
)

__version__ = "0.1.0"
