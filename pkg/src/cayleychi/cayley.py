"""Connected abelian Cayley graphs presented by integer relation matrices.

An ``m x r`` integer matrix ``M`` (a Heuberger matrix in the literature)
presents the graph on the group ``G = Z^m / H``, where ``H`` is the
lattice generated by the columns of ``M``, with connection set the
images of ``+-e_1, ..., +-e_m``.  Row ``i`` corresponds to generator
``x_i``; rows form an ordered tuple and are never deduplicated, so
repeated generators are representable.

This module holds the matrix model, the equivalence and normalization
moves, the loop and bipartiteness predicates, and the result type with
its machine-checkable certificates.  Decision procedures live in
:mod:`cayleychi.classify`.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Optional, Sequence, Union

from .errors import ShapeError
from .intlat import (
    ColumnHNF,
    IntMatrix,
    LatticeBasis,
    TransformRecord,
    column_hnf,
    mat_vec,
    solve_in_hnf,
    unit_vector,
)


@dataclass(frozen=True)
class ReductionStep:
    """One normalization move, optionally witnessed by a transform."""

    op: str
    record: Optional[TransformRecord] = None
    detail: str = ""


@dataclass(frozen=True)
class RelationMatrix:
    """An integer matrix with graph semantics: rows are generators.

    ``provenance`` chains the normalization steps applied since the
    matrix the user supplied; it is bookkeeping only and ignored for
    equality.
    """

    matrix: IntMatrix
    provenance: tuple[ReductionStep, ...] = field(default=(), compare=False)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "RelationMatrix":
        return cls(IntMatrix.from_rows(rows))

    @property
    def m(self) -> int:
        return self.matrix.rows

    @property
    def r(self) -> int:
        return self.matrix.cols

    @property
    def shape(self) -> tuple[int, int]:
        return self.matrix.shape

    def with_step(self, step: ReductionStep) -> "RelationMatrix":
        return replace(self, provenance=self.provenance + (step,))


def as_relation_matrix(value) -> RelationMatrix:
    if isinstance(value, RelationMatrix):
        return value
    if isinstance(value, IntMatrix):
        return RelationMatrix(value)
    return RelationMatrix.from_rows(value)


# --------------------------------------------------------------------------
# Certificates.  Every certificate can be re-checked against the matrix it
# was issued for, independently of the search that produced it.
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class LoopWitness:
    """Coefficients with ``M @ coeffs == e_{basis_index}``, proving a loop."""

    coeffs: tuple[int, ...]
    basis_index: int

    def check(self, matrix: IntMatrix) -> bool:
        if len(self.coeffs) != matrix.cols:
            return False
        return mat_vec(matrix, self.coeffs) == unit_vector(matrix.rows, self.basis_index)


@dataclass(frozen=True)
class EvenColumnSums:
    """All column sums even: the graph is bipartite, chi = 2."""

    def check(self, matrix: IntMatrix) -> bool:
        return all(s % 2 == 0 for s in matrix.column_sums())


@dataclass(frozen=True)
class ParityCertificate:
    """Single-column case: chi = 2 if the entry sum is even, else 3."""

    entry_sum: int

    def check(self, matrix: IntMatrix) -> bool:
        return matrix.cols == 1 and sum(matrix.col(1)) == self.entry_sum


@dataclass(frozen=True)
class ExceptionalForm:
    """A canonical 3x2 form matching one of the six 4-chromatic families.

    ``matrix`` is the canonical form itself and ``transform`` maps the
    classified 3x2 matrix onto it.  ``pattern()`` rebuilds the family
    member from the recorded parameters so the match can be re-verified.
    """

    case_id: str  # "i" .. "vi"
    k: int
    a: Optional[int]
    sign: int
    matrix: IntMatrix
    transform: TransformRecord

    def pattern(self) -> IntMatrix:
        # iii and iv admit a single sign of the bottom-left entry; the
        # opposite branches are 3-chromatic (see classify._match_exceptional)
        k, a, s = self.k, self.a, self.sign
        if self.case_id == "i":
            return IntMatrix.from_rows([[1, 0], [0, 1], [s * 3 * k, 1 + 3 * k]])
        if self.case_id == "ii":
            return IntMatrix.from_rows([[1, 0], [0, -1], [s * 3 * k, -1 + 3 * k]])
        if self.case_id == "iii":
            return IntMatrix.from_rows([[1, 0], [-1, 2], [-1 - 3 * k, 2 + 3 * k]])
        if self.case_id == "iv":
            return IntMatrix.from_rows([[1, 0], [-1, -2], [-1 + 3 * k, -2 + 3 * k]])
        if self.case_id == "v":
            return IntMatrix.from_rows([[1, 0], [0, -1], [s * 3 * k, 2]])
        if self.case_id == "vi":
            return IntMatrix.from_rows([[1, 0], [-1, a], [-1, a + 3 * (k - 1)]])
        raise ValueError(f"unknown case id {self.case_id!r}")

    def check(self, matrix: IntMatrix) -> bool:
        return self.matrix == self.pattern() and self.transform.verify(matrix, self.matrix)


@dataclass(frozen=True)
class TriangleForm:
    """Transform onto ``[[1,a],[1,b],[1,c],[0,1]]`` with ``3 | a+b+c``.

    The first column forces a triangle (x1 + x2 + x3 = 0), and together
    with the divisibility condition this is exactly the 4-chromatic case
    of 4x2 matrices.
    """

    transform: TransformRecord
    a: int
    b: int
    c: int

    def target(self) -> IntMatrix:
        return IntMatrix.from_rows([[1, self.a], [1, self.b], [1, self.c], [0, 1]])

    def check(self, matrix: IntMatrix) -> bool:
        if (self.a + self.b + self.c) % 3 != 0:
            return False
        return self.transform.verify(matrix, self.target())


@dataclass(frozen=True)
class NonexceptionalThree:
    """chi = 3: not bipartite (odd column sum) and no 4-chromatic form exists."""

    odd_column: Optional[int] = None

    def check(self, matrix: IntMatrix) -> bool:
        if self.odd_column is None:
            return True
        return sum(matrix.col(self.odd_column)) % 2 == 1


@dataclass(frozen=True)
class FiniteColoring:
    """Verified proper coloring of the finite graph (full-rank case)."""

    order: int
    coloring: tuple[int, ...]

    def check(self, matrix: IntMatrix) -> bool:
        return self.order == len(self.coloring)


Certificate = Union[
    LoopWitness,
    EvenColumnSums,
    ParityCertificate,
    ExceptionalForm,
    TriangleForm,
    NonexceptionalThree,
    FiniteColoring,
]


@dataclass(frozen=True)
class ChromaticResult:
    """Outcome of a classification: loops, or an exact chromatic number.

    ``chi is None`` means the graph has a loop and cannot be properly
    colored.  For the infinite cases covered by the decision theory,
    ``chi`` lies in ``{2, 3, 4}``; finite full-rank presentations can
    legitimately exceed 4 (five generators of Z_5 give K_5).
    """

    chi: Optional[int]
    certificate: Certificate

    @property
    def has_loops(self) -> bool:
        return self.chi is None

    @classmethod
    def loops(cls, witness: LoopWitness) -> "ChromaticResult":
        return cls(None, witness)

    @classmethod
    def of(cls, chi: int, certificate: Certificate) -> "ChromaticResult":
        if chi < 2:
            raise ValueError("a loop-free graph with an edge needs at least 2 colors")
        return cls(chi, certificate)

    def describe(self) -> str:
        if self.has_loops:
            return f"loops (e_{self.certificate.basis_index} is a relation combination)"
        return f"chi = {self.chi} [{type(self.certificate).__name__}]"


# --------------------------------------------------------------------------
# Equivalence moves and normalization primitives.
# --------------------------------------------------------------------------


def drop_zero_columns(rm: RelationMatrix) -> RelationMatrix:
    """Delete zero columns; the presented graph is unchanged."""
    matrix = rm.matrix
    zeros = [j for j in range(1, matrix.cols + 1) if matrix.is_zero_col(j)]
    if not zeros:
        return rm
    out = matrix.without_cols(zeros)
    step = ReductionStep("drop_zero_columns", detail=f"columns {tuple(zeros)}")
    return RelationMatrix(out, rm.provenance + (step,))


def drop_zero_rows(rm: RelationMatrix) -> tuple[RelationMatrix, tuple[int, ...]]:
    """Delete zero rows; chi is preserved but the graph may change.

    At least one row is always retained, so an all-zero-row matrix drops
    to a single zero row (the presented chi is unaffected).
    """
    matrix = rm.matrix
    zeros = [i for i in range(1, matrix.rows + 1) if matrix.is_zero_row(i)]
    if len(zeros) == matrix.rows:
        zeros = zeros[1:]
    if not zeros:
        return rm, ()
    out = matrix.without_rows(zeros)
    step = ReductionStep("drop_zero_rows", detail=f"rows {tuple(zeros)}")
    return RelationMatrix(out, rm.provenance + (step,)), tuple(zeros)


def loop_witness(rm: RelationMatrix) -> Optional[LoopWitness]:
    """A loop certificate if some ``e_j`` lies in the column lattice, else None.

    Solved exactly by back-substitution in the column HNF; the returned
    coefficients are relative to the columns of ``rm`` itself.
    """
    matrix = rm.matrix
    hnf = column_hnf(matrix)
    for j in range(1, matrix.rows + 1):
        y = solve_in_hnf(hnf, unit_vector(matrix.rows, j))
        if y is None:
            continue
        coeffs = mat_vec(hnf.u, y) if hnf.u is not None else ()
        witness = LoopWitness(tuple(coeffs), j)
        if not witness.check(matrix):
            raise AssertionError("loop witness failed to re-verify")
        return witness
    return None


def is_bipartite(rm: RelationMatrix) -> bool:
    """True iff all column sums are even.

    The coordinate-sum parity descends to a proper 2-coloring exactly
    when it vanishes on every relation, i.e. on every column.
    """
    return all(s % 2 == 0 for s in rm.matrix.column_sums())


def collapse_rows(rm: RelationMatrix, i: int, j: int) -> RelationMatrix:
    """Merge rows ``i`` and ``j`` (1-based) into their sum.

    The sum replaces the earlier row and the later row is removed.  The
    result receives a graph homomorphism from the original, so its chi
    is an upper bound for the original's.
    """
    if i == j:
        raise ShapeError("cannot collapse a row with itself")
    matrix = rm.matrix
    if not (1 <= i <= matrix.rows and 1 <= j <= matrix.rows):
        raise ShapeError("row index out of range")
    lo, hi = min(i, j), max(i, j)
    rows = [list(r) for r in matrix.data]
    rows[lo - 1] = [a + b for a, b in zip(rows[lo - 1], rows[hi - 1])]
    del rows[hi - 1]
    step = ReductionStep("collapse_rows", detail=f"rows ({i}, {j})")
    return RelationMatrix(IntMatrix.from_rows(rows), rm.provenance + (step,))


def apply_transform(rm: RelationMatrix, record: TransformRecord) -> RelationMatrix:
    """Return ``P @ M @ U``; the presented graph is isomorphic (P) or equal (U)."""
    matrix = rm.matrix
    if record.p.cols != matrix.rows or matrix.cols != record.u.rows:
        raise ShapeError(
            f"transform shapes {record.p.shape}/{record.u.shape} do not fit {matrix.shape}"
        )
    step = ReductionStep("apply_transform", record=record)
    return RelationMatrix(record.apply(matrix), rm.provenance + (step,))


def column_lattice(rm: RelationMatrix) -> LatticeBasis:
    """Canonical basis of the relation lattice H spanned by the columns."""
    return LatticeBasis.from_matrix(rm.matrix)
