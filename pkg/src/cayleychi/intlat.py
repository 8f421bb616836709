"""Exact integer linear algebra on small dense matrices.

Everything runs on plain Python integers, so arithmetic is exact at any
size.  Matrices are immutable tuples-of-tuples; the public accessors
``entry``, ``row`` and ``col`` index from 1 to match the usual
mathematical convention for matrix entries.

The central routine is :func:`column_hnf`, a column-style Hermite normal
form with a fully tracked unimodular transform.  The convention used
throughout the package:

* the pivot of a nonzero column is its first nonzero entry,
* pivot rows strictly increase from left to right (lower staircase),
* pivots are positive,
* in a pivot's row, entries right of the pivot are zero and entries
  left of it are reduced into ``[0, pivot)``,
* zero columns, if any, sit rightmost.

Under this convention two generating sets of the same sublattice of
``Z^m`` reduce to the identical matrix, so lattice equality is a tuple
comparison.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence

from .errors import ShapeError


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``g = gcd(a, b) >= 0`` and ``x*a + y*b = g``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q = a // b
        a, b = b, a - q * b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix with at least one row; zero columns are legal."""

    data: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if not self.data:
            raise ShapeError("a matrix needs at least one row")
        width = len(self.data[0])
        for r in self.data:
            if len(r) != width:
                raise ShapeError("ragged rows")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "IntMatrix":
        return cls(tuple(tuple(int(v) for v in r) for r in rows))

    @classmethod
    def from_columns(cls, m: int, columns: Sequence[Sequence[int]]) -> "IntMatrix":
        cols = [tuple(int(v) for v in c) for c in columns]
        for c in cols:
            if len(c) != m:
                raise ShapeError("column length does not match row count")
        return cls(tuple(tuple(c[i] for c in cols) for i in range(m)))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, m: int, r: int) -> "IntMatrix":
        return cls(tuple((0,) * r for _ in range(m)))

    @property
    def rows(self) -> int:
        return len(self.data)

    @property
    def cols(self) -> int:
        return len(self.data[0])

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def entry(self, i: int, j: int) -> int:
        """Entry in row ``i``, column ``j`` (1-based)."""
        return self.data[i - 1][j - 1]

    def row(self, i: int) -> tuple[int, ...]:
        return self.data[i - 1]

    def col(self, j: int) -> tuple[int, ...]:
        return tuple(r[j - 1] for r in self.data)

    def columns(self) -> tuple[tuple[int, ...], ...]:
        return tuple(self.col(j) for j in range(1, self.cols + 1))

    def column_sums(self) -> tuple[int, ...]:
        return tuple(sum(c) for c in self.columns())

    def is_zero_row(self, i: int) -> bool:
        return not any(self.data[i - 1])

    def is_zero_col(self, j: int) -> bool:
        return not any(r[j - 1] for r in self.data)

    def without_rows(self, drop: Sequence[int]) -> "IntMatrix":
        keep = [r for idx, r in enumerate(self.data, start=1) if idx not in set(drop)]
        return IntMatrix(tuple(keep))

    def without_cols(self, drop: Sequence[int]) -> "IntMatrix":
        ds = set(drop)
        keep = [j for j in range(1, self.cols + 1) if j not in ds]
        return IntMatrix(tuple(tuple(r[j - 1] for j in keep) for r in self.data))

    def transpose(self) -> "IntMatrix":
        if self.cols == 0:
            raise ShapeError("cannot transpose a 0-column matrix")
        return IntMatrix(tuple(zip(*self.data)))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        ot = list(zip(*other.data)) if other.cols else []
        return IntMatrix(
            tuple(
                tuple(sum(a * b for a, b in zip(r, c)) for c in ot)
                for r in self.data
            )
        )

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(tuple(tuple(-v for v in r) for r in self.data))

    def det(self) -> int:
        """Exact determinant by fraction-free (Bareiss) elimination."""
        if self.rows != self.cols:
            raise ShapeError("determinant of a non-square matrix")
        n = self.rows
        if n == 1:
            return self.data[0][0]
        a = [list(r) for r in self.data]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k]:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
                a[i][k] = 0
            prev = a[k][k]
        return sign * a[n - 1][n - 1]

    def is_unimodular(self) -> bool:
        return self.rows == self.cols and abs(self.det()) == 1

    def is_signed_permutation(self) -> bool:
        if self.rows != self.cols:
            return False
        seen_cols = set()
        for r in self.data:
            nz = [(j, v) for j, v in enumerate(r) if v]
            if len(nz) != 1 or abs(nz[0][1]) != 1:
                return False
            seen_cols.add(nz[0][0])
        return len(seen_cols) == self.rows

    def hstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.rows != other.rows:
            raise ShapeError("row counts differ")
        return IntMatrix(tuple(a + b for a, b in zip(self.data, other.data)))

    def to_list(self) -> list[list[int]]:
        return [list(r) for r in self.data]

    def __str__(self) -> str:
        return "[" + "; ".join(" ".join(str(v) for v in r) for r in self.data) + "]"


def mat_vec(m: IntMatrix, v: Sequence[int]) -> tuple[int, ...]:
    if len(v) != m.cols:
        raise ShapeError("vector length does not match column count")
    return tuple(sum(a * b for a, b in zip(r, v)) for r in m.data)


def unit_vector(m: int, j: int) -> tuple[int, ...]:
    """Standard basis vector e_j of Z^m (1-based j)."""
    return tuple(1 if i == j else 0 for i in range(1, m + 1))


@dataclass(frozen=True)
class ColumnHNF:
    """Result of :func:`column_hnf`: ``matrix @ u == h`` with ``u`` unimodular.

    For a 0-column input there is no transform to track and ``u`` is None.
    """

    h: IntMatrix
    u: Optional[IntMatrix]
    pivots: tuple[tuple[int, int], ...]  # (row, col), 1-based, rows strictly increasing

    @property
    def rank(self) -> int:
        return len(self.pivots)


def column_hnf(m: IntMatrix) -> ColumnHNF:
    """Canonical column Hermite normal form with tracked transform.

    Sweeps rows top to bottom.  At each row the active columns are
    combined by extended-gcd column operations so that exactly one of
    them keeps a (positive) entry in that row; entries left of the new
    pivot in its row are then reduced into ``[0, pivot)``.  All
    operations are mirrored on an identity matrix, which accumulates the
    unimodular ``u``.
    """
    nrows, ncols = m.rows, m.cols
    if ncols == 0:
        return ColumnHNF(m, None, ())
    h = [[m.data[i][j] for i in range(nrows)] for j in range(ncols)]  # column-major
    u = [[1 if i == j else 0 for i in range(ncols)] for j in range(ncols)]
    pivots = []
    pc = 0
    for row in range(nrows):
        if pc == ncols:
            break
        sel = next((c for c in range(pc, ncols) if h[c][row]), None)
        if sel is None:
            continue
        if sel != pc:
            h[pc], h[sel] = h[sel], h[pc]
            u[pc], u[sel] = u[sel], u[pc]
        for c in range(pc + 1, ncols):
            if not h[c][row]:
                continue
            a, b = h[pc][row], h[c][row]
            g, x, y = xgcd(a, b)
            aa, bb = a // g, b // g
            hp, hc = h[pc], h[c]
            h[pc] = [x * p + y * q for p, q in zip(hp, hc)]
            h[c] = [aa * q - bb * p for p, q in zip(hp, hc)]
            up, uc = u[pc], u[c]
            u[pc] = [x * p + y * q for p, q in zip(up, uc)]
            u[c] = [aa * q - bb * p for p, q in zip(up, uc)]
        if h[pc][row] < 0:
            h[pc] = [-v for v in h[pc]]
            u[pc] = [-v for v in u[pc]]
        piv = h[pc][row]
        for c in range(pc):
            q = h[c][row] // piv
            if q:
                h[c] = [p - q * t for p, t in zip(h[c], h[pc])]
                u[c] = [p - q * t for p, t in zip(u[c], u[pc])]
        pivots.append((row + 1, pc + 1))
        pc += 1
    hm = IntMatrix.from_columns(nrows, h)
    um = IntMatrix.from_columns(ncols, u)
    return ColumnHNF(hm, um, tuple(pivots))


def solve_in_hnf(hnf: ColumnHNF, target: Sequence[int]) -> Optional[tuple[int, ...]]:
    """Coefficients ``y`` with ``hnf.h @ y == target``, or None.

    Back-substitution down the pivot rows; coefficients of zero columns
    are zero.  Works because entries above each pivot vanish and pivot
    rows strictly increase.
    """
    h = hnf.h
    if len(target) != h.rows:
        raise ShapeError("target length does not match row count")
    w = list(target)
    coeffs = [0] * h.cols
    for prow, pcol in hnf.pivots:
        piv = h.data[prow - 1][pcol - 1]
        q, rem = divmod(w[prow - 1], piv)
        if rem:
            return None
        if q:
            for i in range(h.rows):
                w[i] -= q * h.data[i][pcol - 1]
            coeffs[pcol - 1] = q
    if any(w):
        return None
    return tuple(coeffs)


@dataclass(frozen=True)
class LatticeBasis:
    """Canonical basis of a sublattice of Z^m (column HNF, no zero columns)."""

    ambient_dim: int
    vectors: tuple[tuple[int, ...], ...]
    pivots: tuple[int, ...] = field(default=())  # pivot row (1-based) per vector

    @property
    def rank(self) -> int:
        return len(self.vectors)

    @classmethod
    def from_columns(cls, ambient_dim: int, columns: Sequence[Sequence[int]]) -> "LatticeBasis":
        if ambient_dim < 1:
            raise ShapeError("ambient dimension must be at least 1")
        cols = [tuple(int(v) for v in c) for c in columns]
        if not cols:
            return cls(ambient_dim, (), ())
        m = IntMatrix.from_columns(ambient_dim, cols)
        hnf = column_hnf(m)
        vecs = tuple(hnf.h.col(c) for _, c in hnf.pivots)
        prow = tuple(r for r, _ in hnf.pivots)
        return cls(ambient_dim, vecs, prow)

    @classmethod
    def from_matrix(cls, m: IntMatrix) -> "LatticeBasis":
        return cls.from_columns(m.rows, m.columns())

    def solve(self, v: Sequence[int]) -> Optional[tuple[int, ...]]:
        """Integer coefficients expressing ``v`` over the basis, or None."""
        if len(v) != self.ambient_dim:
            raise ShapeError("vector length does not match ambient dimension")
        w = list(v)
        coeffs = []
        for vec, p in zip(self.vectors, self.pivots):
            piv = vec[p - 1]
            q, rem = divmod(w[p - 1], piv)
            if rem:
                return None
            if q:
                for i in range(self.ambient_dim):
                    w[i] -= q * vec[i]
            coeffs.append(q)
        if any(w):
            return None
        return tuple(coeffs)

    def contains(self, v: Sequence[int]) -> bool:
        return self.solve(v) is not None


def kernel_lattice(a: IntMatrix) -> LatticeBasis:
    """Canonical basis of the integer kernel ``{x in Z^cols : a @ x = 0}``.

    The columns of the HNF transform that map onto zero columns of the
    HNF generate the kernel saturated, i.e. they are a genuine lattice
    basis, not just a finite-index sublattice.
    """
    if a.cols == 0:
        raise ShapeError("kernel of a 0-column matrix is not defined here")
    hnf = column_hnf(a)
    free = [c for c in range(1, a.cols + 1) if c not in {col for _, col in hnf.pivots}]
    gens = [hnf.u.col(c) for c in free]
    return LatticeBasis.from_columns(a.cols, gens)


def lattice_contains(basis: LatticeBasis, v: Sequence[int]) -> bool:
    """Membership of ``v`` in the lattice spanned by ``basis``."""
    return basis.contains(v)


def signed_permutations(n: int) -> Iterator[IntMatrix]:
    """All ``2^n * n!`` signed permutation matrices, identity first.

    Enumeration order is fixed: permutations in lexicographic order, and
    for each permutation all sign patterns with ``+1`` varied last.
    """
    if not 1 <= n <= 4:
        raise ValueError("signed_permutations supports 1 <= n <= 4")
    for perm in itertools.permutations(range(n)):
        for signs in itertools.product((1, -1), repeat=n):
            yield IntMatrix(
                tuple(
                    tuple(signs[i] if j == perm[i] else 0 for j in range(n))
                    for i in range(n)
                )
            )


@dataclass(frozen=True)
class TransformRecord:
    """A pair (P, U) acting as ``M -> P @ M @ U``.

    ``p`` must be a signed permutation matrix (row moves: permutations
    and sign flips of generators) and ``u`` unimodular (column moves:
    basis changes of the relation lattice).
    """

    p: IntMatrix
    u: IntMatrix

    def __post_init__(self):
        if not self.p.is_signed_permutation():
            raise ShapeError("P is not a signed permutation matrix")
        if not self.u.is_unimodular():
            raise ShapeError("U is not unimodular")

    @classmethod
    def identity(cls, m: int, r: int) -> "TransformRecord":
        return cls(IntMatrix.identity(m), IntMatrix.identity(r))

    def apply(self, m: IntMatrix) -> IntMatrix:
        return self.p @ m @ self.u

    def verify(self, m_in: IntMatrix, m_out: IntMatrix) -> bool:
        return self.apply(m_in) == m_out

    def compose(self, then: "TransformRecord") -> "TransformRecord":
        """Record equivalent to applying ``self`` first, ``then`` second."""
        return TransformRecord(then.p @ self.p, self.u @ then.u)
