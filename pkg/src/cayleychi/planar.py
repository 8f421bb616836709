"""Plane unit vectors with coordinates in Q(sqrt(d)), exactly.

A set of 1 to 4 unit vectors and their negatives generates a subgroup of
the plane; the Cayley graph on that subgroup has a relation matrix whose
columns are the integer relations ``a_1 v_1 + ... + a_n v_n = 0``.  This
module extracts that matrix exactly and feeds it to the classifier.

Coordinates live in a single real quadratic field Q(sqrt(d)) per input
set (d squarefree; d = 0 or 1 degenerate to the rationals).  That covers
rational unit vectors (Pythagorean triples) and the standard triangular
lattice constructions; transcendental coordinates are out of scope
because exact relation extraction is impossible for them.
"""

from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .cayley import RelationMatrix
from .errors import UnsupportedShapeError, VectorError
from .intlat import IntMatrix, kernel_lattice


def _is_squarefree(d: int) -> bool:
    if d < 0:
        return False
    f = 2
    while f * f <= d:
        if d % (f * f) == 0:
            return False
        f += 1
    return True


@dataclass(frozen=True)
class QuadraticNumber:
    """Exact ``rat + rad * sqrt(d)`` with rational components.

    ``d`` is normalized: if the radical part is zero, or d is 0 or 1,
    the number collapses to a plain rational with ``d = 0``.
    """

    d: int
    rat: Fraction
    rad: Fraction

    def __init__(self, d: int, rat, rad=0):
        rat = Fraction(rat)
        rad = Fraction(rad)
        if d == 1:
            rat, rad, d = rat + rad, Fraction(0), 0
        if d == 0:
            rad = Fraction(0)  # sqrt(0) contributes nothing
        if rad == 0:
            d = 0
        if not _is_squarefree(d):
            raise VectorError(f"d = {d} is not squarefree")
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "rat", rat)
        object.__setattr__(self, "rad", rad)

    @classmethod
    def rational(cls, value) -> "QuadraticNumber":
        return cls(0, Fraction(value))

    def is_zero(self) -> bool:
        return self.rat == 0 and self.rad == 0

    def _join(self, other: "QuadraticNumber") -> int:
        if self.d and other.d and self.d != other.d:
            raise VectorError(f"mixed quadratic fields: sqrt({self.d}) vs sqrt({other.d})")
        return self.d or other.d

    def __add__(self, other: "QuadraticNumber") -> "QuadraticNumber":
        d = self._join(other)
        return QuadraticNumber(d, self.rat + other.rat, self.rad + other.rad)

    def __sub__(self, other: "QuadraticNumber") -> "QuadraticNumber":
        d = self._join(other)
        return QuadraticNumber(d, self.rat - other.rat, self.rad - other.rad)

    def __mul__(self, other: "QuadraticNumber") -> "QuadraticNumber":
        d = self._join(other)
        rat = self.rat * other.rat + d * self.rad * other.rad
        rad = self.rat * other.rad + self.rad * other.rat
        return QuadraticNumber(d, rat, rad)

    def scale(self, c: int) -> "QuadraticNumber":
        return QuadraticNumber(self.d, self.rat * c, self.rad * c)

    def __neg__(self) -> "QuadraticNumber":
        return QuadraticNumber(self.d, -self.rat, -self.rad)

    def __str__(self) -> str:
        if self.rad == 0:
            return str(self.rat)
        radical = f"{self.rad}*sqrt({self.d})"
        if self.rat == 0:
            return radical
        sign = "+" if self.rad > 0 else "-"
        return f"{self.rat} {sign} {abs(self.rad)}*sqrt({self.d})"


ZERO = QuadraticNumber(0, 0)
ONE = QuadraticNumber(0, 1)


@dataclass(frozen=True)
class UnitVector:
    """A plane vector of exact unit norm; the norm is validated on creation."""

    x: QuadraticNumber
    y: QuadraticNumber

    def __post_init__(self):
        self.x._join(self.y)
        norm = self.x * self.x + self.y * self.y
        if norm != ONE:
            raise VectorError(f"({self.x}, {self.y}) does not have unit norm (x^2+y^2 = {norm})")

    @property
    def d(self) -> int:
        return self.x.d or self.y.d

    def __neg__(self) -> "UnitVector":
        return UnitVector(-self.x, -self.y)

    def collinear(self, other: "UnitVector") -> bool:
        """Unit vectors are linearly dependent iff equal up to sign."""
        return (self.x == other.x and self.y == other.y) or (
            self.x == -other.x and self.y == -other.y
        )

    def __str__(self) -> str:
        return f"({self.x}, {self.y})"


def pythagorean_unit(p: int, q: int) -> UnitVector:
    """The rational unit vector ``((p^2-q^2)/(p^2+q^2), 2pq/(p^2+q^2))``."""
    if p == 0 and q == 0:
        raise VectorError("p and q cannot both be zero")
    n = p * p + q * q
    return UnitVector(
        QuadraticNumber.rational(Fraction(p * p - q * q, n)),
        QuadraticNumber.rational(Fraction(2 * p * q, n)),
    )


def rotate(u: UnitVector, v: UnitVector) -> UnitVector:
    """Rotate ``u`` by the angle of ``v`` (complex multiplication); stays unit."""
    return UnitVector(u.x * v.x - u.y * v.y, u.x * v.y + u.y * v.x)


def _common_field(vectors: Sequence[UnitVector]) -> int:
    d = 0
    for v in vectors:
        dv = v.d
        if dv:
            if d and dv != d:
                raise VectorError(f"mixed quadratic fields: sqrt({d}) vs sqrt({dv})")
            d = dv
    return d


def relation_lattice(vectors: Sequence[UnitVector]) -> RelationMatrix:
    """Relation matrix of 1 to 4 unit vectors.

    Splits each of the two coordinate equations into its rational and
    sqrt(d) parts, clears denominators row by row, and takes the integer
    kernel.  The columns of the result generate exactly
    ``{a in Z^n : sum a_i v_i = 0}``.
    """
    n = len(vectors)
    if not 1 <= n <= 4:
        raise VectorError(f"need between 1 and 4 vectors, got {n}")
    _common_field(vectors)

    rows: list[list[Fraction]] = [
        [v.x.rat for v in vectors],
        [v.x.rad for v in vectors],
        [v.y.rat for v in vectors],
        [v.y.rad for v in vectors],
    ]
    int_rows = []
    for row in rows:
        denom = 1
        for f in row:
            denom = denom * f.denominator // _gcd(denom, f.denominator)
        int_rows.append([int(f * denom) for f in row])
    kernel = kernel_lattice(IntMatrix.from_rows(int_rows))
    rm = RelationMatrix(IntMatrix.from_columns(n, kernel.vectors))
    for col in rm.matrix.columns():
        sx = sum((v.x.scale(c) for v, c in zip(vectors, col)), ZERO)
        sy = sum((v.y.scale(c) for v, c in zip(vectors, col)), ZERO)
        if not (sx.is_zero() and sy.is_zero()):
            raise AssertionError("relation column does not annihilate the vectors")
    return rm


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def dedup_collinear(vectors: Sequence[UnitVector]) -> list[UnitVector]:
    """Keep the first of each collinear pair (v_j = +-v_i).

    The connection set ``{+-v_i}`` is a set of group elements, so
    removing duplicates leaves the graph untouched.
    """
    kept: list[UnitVector] = []
    for v in vectors:
        if not any(v.collinear(u) for u in kept):
            kept.append(v)
    return kept


def validate_vector_count(vectors: Sequence[UnitVector]) -> None:
    n = len(vectors)
    if n == 0:
        raise VectorError("need at least one vector")
    if n > 4:
        raise UnsupportedShapeError(
            "only 1 to 4 unit vectors are supported; the maximum chromatic"
            " number over 5 or more plane unit vectors is an open problem"
        )


def chi_of_unit_vectors(vectors: Sequence[UnitVector], *, config=None):
    """Exact chi of the Cayley graph generated by ``+-v_1, ..., +-v_n``.

    Collinear duplicates are removed first: that never changes the
    graph, and it keeps the relation matrix inside the classifier's
    shape scope (four copies of one vector would otherwise present a
    4x3 matrix).  For n <= 4 the result is always 2 or 3, never loops.
    """
    from .classify import chromatic_number

    validate_vector_count(vectors)
    return chromatic_number(relation_lattice(dedup_collinear(vectors)), config=config)


# --------------------------------------------------------------------------
# Input parsing: a small text format and a JSON alternative.
# --------------------------------------------------------------------------

_TERM = re.compile(
    r"""
    (?P<sign>[+-])?\s*
    (?:
        (?P<coef>\d+(?:/\d+)?)\s*\*\s*sqrt\(\s*(?P<d1>\d+)\s*\)
      | sqrt\(\s*(?P<d2>\d+)\s*\)
      | (?P<rat>\d+(?:/\d+)?)
    )
    \s*
    """,
    re.VERBOSE,
)


def _parse_component(text: str) -> QuadraticNumber:
    """Parse ``p/q``, ``r/s*sqrt(d)`` or ``p/q +- r/s*sqrt(d)``."""
    pos = 0
    total = ZERO
    text = text.strip()
    if not text:
        raise VectorError("empty vector component")
    while pos < len(text):
        match = _TERM.match(text, pos)
        if match is None:
            raise VectorError(f"cannot parse vector component {text!r} at offset {pos}")
        sign = -1 if match.group("sign") == "-" else 1
        if match.group("rat") is not None:
            term = QuadraticNumber(0, sign * Fraction(match.group("rat")))
        else:
            d = int(match.group("d1") or match.group("d2"))
            coef = Fraction(match.group("coef")) if match.group("coef") else Fraction(1)
            term = QuadraticNumber(d, 0, sign * coef)
        total = total + term
        pos = match.end()
    return total


def parse_vectors_text(text: str) -> list[UnitVector]:
    """Line format: optional ``d = <int>`` header, then one ``x, y`` per line.

    Components follow ``p/q + r/s*sqrt(d)``; blank lines and ``#``
    comments are skipped.  A declared d must agree with every sqrt() in
    the body.
    """
    declared: Optional[int] = None
    vectors = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        header = re.fullmatch(r"d\s*=\s*(\d+)", line)
        if header:
            if vectors:
                raise VectorError(f"line {lineno}: d must be declared before any vector")
            declared = int(header.group(1))
            continue
        parts = line.split(",")
        if len(parts) != 2:
            raise VectorError(f"line {lineno}: expected 'x, y', got {line!r}")
        x = _parse_component(parts[0])
        y = _parse_component(parts[1])
        vectors.append(UnitVector(x, y))
    if not vectors:
        raise VectorError("no vectors in input")
    if declared is not None:
        for v in vectors:
            if v.d and v.d != declared:
                raise VectorError(f"vector {v} does not live in Q(sqrt({declared}))")
    _common_field(vectors)
    return vectors


def parse_vectors_json(obj) -> list[UnitVector]:
    """JSON form: ``{"d": d, "vectors": [{"x": [p,q,r,s], "y": [p,q,r,s]}, ...]}``.

    A component ``[p, q, r, s]`` means ``p/q + (r/s) * sqrt(d)``.
    """
    try:
        d = int(obj["d"])
        entries = obj["vectors"]
    except (KeyError, TypeError) as exc:
        raise VectorError(f"JSON vector input needs 'd' and 'vectors': {exc}")

    def component(quad) -> QuadraticNumber:
        p, q, r, s = (int(v) for v in quad)
        return QuadraticNumber(d if Fraction(r, s) != 0 else 0, Fraction(p, q), Fraction(r, s))

    vectors = []
    for entry in entries:
        vectors.append(UnitVector(component(entry["x"]), component(entry["y"])))
    if not vectors:
        raise VectorError("no vectors in input")
    return vectors


def parse_vectors(text: str) -> list[UnitVector]:
    """Sniff JSON versus the line format and parse accordingly."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise VectorError(f"invalid JSON: {exc}")
        return parse_vectors_json(obj)
    return parse_vectors_text(text)


def triangular_lattice_triple() -> list[UnitVector]:
    """(1,0), (-1/2, sqrt(3)/2), (-1/2, -sqrt(3)/2): three sides of a unit triangle."""
    half = Fraction(1, 2)
    return [
        UnitVector(ONE, ZERO),
        UnitVector(QuadraticNumber(0, -half), QuadraticNumber(3, 0, half)),
        UnitVector(QuadraticNumber(0, -half), QuadraticNumber(3, 0, -half)),
    ]
