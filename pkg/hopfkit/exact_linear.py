"""Exact scalars and canonical subspace linear algebra.

Scalars over Q are plain ``int`` values that turn into ``fractions.Fraction``
only when a division happens; scalars over GF(p) are elements of sympy's
``GF(p)`` domain. Vectors used by the engine are sparse ``dict[int, scalar]``
with no stored zeros. Subspace bases are dense RREF rows so that equality of
subspaces is equality of tuples.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cache, cached_property

from sympy import isprime
from sympy.polys.domains import GF
from sympy.polys.domains.domainelement import DomainElement
from sympy.polys.domains.finitefield import FiniteField

from hopfkit.errors import InputError

logger = logging.getLogger(__name__)

type Scalar = int | Fraction | DomainElement
type SparseVector = dict[int, Scalar]


# =============================================================================
# Scalars
# =============================================================================


@cache
def residue_domain(p: int) -> FiniteField:
    """sympy's GF(p) with residues represented as 0..p-1."""
    return GF(p, symmetric=False)


@dataclass(frozen=True)
class Field:
    """Field descriptor: ``Field("Q")`` or ``Field("GF", p)``."""

    kind: str = "Q"
    p: int | None = None

    def __post_init__(self):
        if self.kind == "Q":
            if self.p is not None:
                msg = "field Q takes no modulus"
                raise InputError(msg)
        elif self.kind == "GF":
            if self.p is None or not isprime(self.p):
                msg = f"GF(p) needs a prime p, got {self.p!r}"
                raise InputError(msg)
        else:
            msg = f"unknown field kind {self.kind!r}"
            raise InputError(msg)

    @classmethod
    def gf(cls, p: int) -> Field:
        return cls("GF", p)

    @property
    def characteristic(self) -> int:
        return 0 if self.kind == "Q" else self.p

    @property
    def domain(self) -> FiniteField | None:
        """The sympy residue domain, None over Q."""
        return None if self.kind == "Q" else residue_domain(self.p)

    @property
    def zero(self) -> Scalar:
        return 0 if self.kind == "Q" else self.domain.zero

    @property
    def one(self) -> Scalar:
        return 1 if self.kind == "Q" else self.domain.one

    def coerce(self, value) -> Scalar:
        """Bring an int, Fraction, string or residue into this field."""
        if isinstance(value, str):
            return self.parse(value)
        if self.kind == "Q":
            if isinstance(value, bool) or not isinstance(value, int | Fraction):
                msg = f"not a rational scalar: {value!r}"
                raise InputError(msg)
            if isinstance(value, Fraction) and value.denominator == 1:
                return value.numerator
            return value
        if self.domain.of_type(value):
            return value
        if isinstance(value, DomainElement):
            msg = f"scalar {value!r} does not belong to GF({self.p})"
            raise InputError(msg)
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                msg = f"{value} has no image in GF({self.p})"
                raise InputError(msg)
            return self.domain(value.numerator) * self.inv(self.domain(value.denominator))
        if isinstance(value, int) and not isinstance(value, bool):
            return self.domain(value)
        msg = f"not a GF({self.p}) scalar: {value!r}"
        raise InputError(msg)

    def parse(self, text: str) -> Scalar:
        if "." in text:
            msg = f"decimal scalars are not exact: {text!r}"
            raise InputError(msg)
        try:
            q = Fraction(text.strip())
        except (ValueError, ZeroDivisionError) as e:
            msg = f"bad scalar {text!r}"
            raise InputError(msg) from e
        return self.coerce(q)

    def to_int(self, value: Scalar) -> int:
        """Residue of a GF(p) scalar in 0..p-1."""
        return int(self.coerce(value)) % self.p

    def format(self, value: Scalar) -> str:
        """Canonical text: "n" or "a/b" over Q, the residue over GF(p)."""
        if self.kind == "Q":
            return str(Fraction(value))
        return str(self.to_int(value))

    def inv(self, value: Scalar) -> Scalar:
        if not value:
            raise ZeroDivisionError("inverse of zero")
        if self.kind == "Q":
            q = Fraction(1) / value
            return q.numerator if q.denominator == 1 else q
        return self.domain.revert(self.coerce(value))

    def div(self, a: Scalar, b: Scalar) -> Scalar:
        return a * self.inv(b)

    def to_json(self) -> dict:
        if self.kind == "Q":
            return {"kind": "Q"}
        return {"kind": "GF", "p": self.p}

    @classmethod
    def from_json(cls, data: dict) -> Field:
        if not isinstance(data, dict) or "kind" not in data:
            msg = "field descriptor must be an object with a 'kind'"
            raise InputError(msg)
        kind = data["kind"]
        if kind == "Q":
            return cls("Q")
        if kind == "GF":
            return cls("GF", data.get("p"))
        msg = f"unknown field kind {kind!r}"
        raise InputError(msg)


QQ = Field("Q")


# =============================================================================
# Sparse vector helpers
# =============================================================================


def add_scaled(target: SparseVector, vec: SparseVector, coeff: Scalar) -> None:
    """target += coeff * vec, in place, dropping zeros."""
    if not coeff:
        return
    for k, v in vec.items():
        s = target.get(k, 0) + coeff * v
        if s:
            target[k] = s
        else:
            target.pop(k, None)


def scale(vec: SparseVector, coeff: Scalar) -> SparseVector:
    if not coeff:
        return {}
    return {k: coeff * v for k, v in vec.items()}


def vec_sub(a: SparseVector, b: SparseVector) -> SparseVector:
    out = dict(a)
    add_scaled(out, b, -1)
    return out


def unit_vector(i: int, one: Scalar = 1) -> SparseVector:
    return {i: one}


def dense(vec: SparseVector, dim: int, zero: Scalar = 0) -> tuple:
    row = [zero] * dim
    for k, v in vec.items():
        row[k] = v
    return tuple(row)


def sparse(row: Sequence[Scalar]) -> SparseVector:
    return {i: v for i, v in enumerate(row) if v}


# =============================================================================
# Incremental echelon form
# =============================================================================


class EchelonBasis:
    """Incrementally maintained, fully reduced sparse row echelon form.

    Every stored row has coefficient 1 at its pivot and 0 at every other
    pivot, so reducing a vector needs a single pass over its support.
    """

    def __init__(self, dim: int, field: Field = QQ):
        self.dim = dim
        self.field = field
        self.rows: dict[int, SparseVector] = {}

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, vec: SparseVector) -> SparseVector:
        out = dict(vec)
        for p in [p for p in vec if p in self.rows]:
            c = out.get(p)
            if c:
                add_scaled(out, self.rows[p], -c)
        return out

    def contains(self, vec: SparseVector) -> bool:
        return not self.reduce(vec)

    def add(self, vec: SparseVector) -> bool:
        """Insert vec; return False when it was already in the span."""
        r = self.reduce(vec)
        if not r:
            return False
        pivot = min(r)
        inv = self.field.inv(r[pivot])
        r = {k: v * inv for k, v in r.items()}
        r[pivot] = self.field.one
        for row in self.rows.values():
            c = row.get(pivot)
            if c:
                add_scaled(row, r, -c)
        self.rows[pivot] = r
        return True

    def extend(self, vectors: Iterable[SparseVector]) -> int:
        return sum(1 for v in vectors if self.add(v))

    def to_subspace(self) -> Subspace:
        zero = self.field.zero
        basis = tuple(dense(self.rows[p], self.dim, zero) for p in sorted(self.rows))
        return Subspace(self.dim, basis, self.field)


# =============================================================================
# Subspaces
# =============================================================================


@dataclass(frozen=True)
class Subspace:
    """Subspace of k^parent_dim held by its RREF basis.

    Two subspaces are equal exactly when their bases are identical.
    """

    parent_dim: int
    basis: tuple[tuple[Scalar, ...], ...]
    field: Field = field(default=QQ, compare=False)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @cached_property
    def rows(self) -> tuple[SparseVector, ...]:
        return tuple(sparse(row) for row in self.basis)

    @cached_property
    def pivots(self) -> tuple[int, ...]:
        return tuple(min(r) for r in self.rows)

    def echelon(self) -> EchelonBasis:
        ech = EchelonBasis(self.parent_dim, self.field)
        for p, r in zip(self.pivots, self.rows, strict=True):
            ech.rows[p] = dict(r)
        return ech

    def reduce(self, vec: SparseVector) -> SparseVector:
        out = dict(vec)
        for i, p in enumerate(self.pivots):
            c = out.get(p)
            if c:
                add_scaled(out, self.rows[i], -c)
        return out

    def contains(self, vec: SparseVector) -> bool:
        return not self.reduce(vec)

    def coordinates(self, vec: SparseVector) -> list[Scalar]:
        """Coefficients of vec in the RREF basis (its values at the pivots)."""
        if not self.contains(vec):
            msg = "vector does not lie in the subspace"
            raise ValueError(msg)
        return [vec.get(p, 0) for p in self.pivots]

    def combine(self, coords: Sequence[Scalar]) -> SparseVector:
        out: SparseVector = {}
        for c, row in zip(coords, self.rows, strict=True):
            add_scaled(out, row, c)
        return out

    def is_subspace_of(self, other: Subspace) -> bool:
        _check_same_parent(self, other)
        return all(other.contains(r) for r in self.rows)


def _check_same_parent(u: Subspace, w: Subspace) -> None:
    if u.parent_dim != w.parent_dim:
        msg = f"parent dimension mismatch: {u.parent_dim} vs {w.parent_dim}"
        raise InputError(msg)


def sparse_in(field: Field, items: Iterable[tuple[int, object]]) -> SparseVector:
    """Coerce (index, value) pairs into the field, dropping values that vanish there."""
    out = {}
    for k, c in items:
        s = field.coerce(c)
        if s:
            out[k] = s
    return out


def canonicalize(vectors: Iterable, parent_dim: int, field: Field = QQ) -> Subspace:
    """RREF basis of the span of dense rows or sparse vectors."""
    ech = EchelonBasis(parent_dim, field)
    for n, v in enumerate(vectors):
        if isinstance(v, dict):
            if any(not 0 <= k < parent_dim for k in v):
                msg = f"vector {n} has an index outside 0..{parent_dim - 1}"
                raise InputError(msg)
            ech.add(sparse_in(field, v.items()))
        else:
            if len(v) != parent_dim:
                msg = f"row {n} has length {len(v)}, expected {parent_dim}"
                raise InputError(msg)
            ech.add(sparse_in(field, enumerate(v)))
    return ech.to_subspace()


def zero_subspace(parent_dim: int, field: Field = QQ) -> Subspace:
    return Subspace(parent_dim, (), field)


def full_space(parent_dim: int, field: Field = QQ) -> Subspace:
    return canonicalize(({i: 1} for i in range(parent_dim)), parent_dim, field)


def subspace_sum(u: Subspace, w: Subspace) -> Subspace:
    _check_same_parent(u, w)
    ech = u.echelon()
    ech.extend(w.rows)
    return ech.to_subspace()


def intersect(u: Subspace, w: Subspace) -> Subspace:
    """Zassenhaus: reduce [u | u] and [w | 0]; rows with empty left half span U ∩ W."""
    _check_same_parent(u, w)
    n = u.parent_dim
    ech = EchelonBasis(2 * n, u.field)
    for r in u.rows:
        doubled = dict(r)
        doubled.update({n + k: v for k, v in r.items()})
        ech.add(doubled)
    for r in w.rows:
        ech.add(r)
    meet = [
        {k - n: v for k, v in row.items()} for p, row in ech.rows.items() if p >= n
    ]
    return canonicalize(meet, n, u.field)


def complement_indices(u: Subspace) -> tuple[int, ...]:
    """Coordinates that are not pivots of the RREF basis, in increasing order."""
    piv = set(u.pivots)
    return tuple(i for i in range(u.parent_dim) if i not in piv)


def rank(vectors: Iterable[SparseVector], dim: int, field: Field = QQ) -> int:
    ech = EchelonBasis(dim, field)
    return ech.extend(vectors)


# =============================================================================
# Linear maps given by images of basis vectors
# =============================================================================


class _TrackedEchelon:
    """Echelon form that remembers each row as a combination of the inputs."""

    def __init__(self, field: Field):
        self.field = field
        self.rows: dict[int, tuple[SparseVector, SparseVector]] = {}

    def add(self, vec: SparseVector, combo: SparseVector) -> SparseVector | None:
        v, c = dict(vec), dict(combo)
        for p in [p for p in vec if p in self.rows]:
            coeff = v.get(p)
            if coeff:
                rv, rc = self.rows[p]
                add_scaled(v, rv, -coeff)
                add_scaled(c, rc, -coeff)
        if not v:
            return c
        pivot = min(v)
        inv = self.field.inv(v[pivot])
        v = scale(v, inv)
        c = scale(c, inv)
        for rv, rc in self.rows.values():
            coeff = rv.get(pivot)
            if coeff:
                add_scaled(rv, v, -coeff)
                add_scaled(rc, c, -coeff)
        self.rows[pivot] = (v, c)
        return None


def kernel(images: Sequence[SparseVector], field: Field = QQ) -> Subspace:
    """Null space of the map sending basis vector j to images[j]."""
    tracked = _TrackedEchelon(field)
    relations = []
    for j, img in enumerate(images):
        rel = tracked.add(img, {j: field.one})
        if rel is not None:
            relations.append(rel)
    return canonicalize(relations, len(images), field)


def image(images: Sequence[SparseVector], target_dim: int, field: Field = QQ) -> Subspace:
    return canonicalize(images, target_dim, field)


def invert(images: Sequence[SparseVector], field: Field = QQ) -> list[SparseVector]:
    """Images of the inverse map of a bijective square map."""
    n = len(images)
    tracked = _TrackedEchelon(field)
    for j, img in enumerate(images):
        if tracked.add(img, {j: field.one}) is not None:
            msg = "map is not invertible"
            raise ValueError(msg)
    if sorted(tracked.rows) != list(range(n)):
        msg = "map is not square"
        raise ValueError(msg)
    return [tracked.rows[i][1] for i in range(n)]


def apply(images: Sequence[SparseVector], vec: SparseVector) -> SparseVector:
    out: SparseVector = {}
    for j, c in vec.items():
        add_scaled(out, images[j], c)
    return out


def annihilator(u: Subspace) -> Subspace:
    """U^⊥ = {f : f(u) = 0 for u in U}, in dual-basis coordinates."""
    n = u.parent_dim
    images = [{a: row[j] for a, row in enumerate(u.rows) if j in row} for j in range(n)]
    return kernel(images, u.field)


def determinant(matrix: Sequence[Sequence[Scalar]], field: Field = QQ) -> Scalar:
    """Determinant by exact Gaussian elimination."""
    n = len(matrix)
    rows = [[field.coerce(x) for x in row] for row in matrix]
    if any(len(r) != n for r in rows):
        msg = "determinant needs a square matrix"
        raise InputError(msg)
    det = field.one
    for col in range(n):
        piv = next((r for r in range(col, n) if rows[r][col]), None)
        if piv is None:
            return field.zero
        if piv != col:
            rows[col], rows[piv] = rows[piv], rows[col]
            det = -det
        det = det * rows[col][col]
        inv = field.inv(rows[col][col])
        for r in range(col + 1, n):
            f = rows[r][col] * inv
            if f:
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[col], strict=True)]
    return det
