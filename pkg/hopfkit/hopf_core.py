"""Hopf algebras given by structure constants.

Tensors are stored sparsely:

    mult[(i, j)]  -> ((k, c), ...)      e_i · e_j = Σ c e_k
    comult[i]     -> ((j, k, c), ...)   Δ(e_i) = Σ c e_j ⊗ e_k
    antipode[i]   -> ((j, c), ...)      S(e_i) = Σ c e_j
    unit          -> ((k, c), ...)      1 = Σ c e_k
    counit[i]     -> ε(e_i)

Elements are sparse vectors (``dict[int, scalar]``).
"""

from __future__ import annotations

import logging
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from functools import cached_property
from types import MappingProxyType
from typing import TYPE_CHECKING, Any

from hopfkit.errors import InputError, UnsupportedOperationError
from hopfkit.exact_linear import (
    QQ,
    Field,
    Scalar,
    SparseVector,
    Subspace,
    add_scaled,
    apply,
    invert,
    kernel,
    rank,
)

if TYPE_CHECKING:
    from hopfkit.groups import FiniteGroup

logger = logging.getLogger(__name__)

type Tensor2 = dict[tuple[int, int], Scalar]


# =============================================================================
# Provenance tags
# =============================================================================

GROUP_ALGEBRA = "group_algebra"
DUAL_GROUP_ALGEBRA = "dual_group_algebra"
ABELIAN_EXTENSION = "abelian_extension"
DUAL_ABELIAN_EXTENSION = "dual_abelian_extension"
GENERIC = "generic"

_DUAL_KIND = {
    GROUP_ALGEBRA: DUAL_GROUP_ALGEBRA,
    DUAL_GROUP_ALGEBRA: GROUP_ALGEBRA,
    ABELIAN_EXTENSION: DUAL_ABELIAN_EXTENSION,
    DUAL_ABELIAN_EXTENSION: ABELIAN_EXTENSION,
    GENERIC: GENERIC,
}


@dataclass(frozen=True, eq=False)
class FactorTag:
    """Where a Hopf algebra came from.

    Group kinds carry the group; extension kinds carry the matched pair and
    only steer provider selection, behaving as ``generic`` for factor
    equivalence.
    """

    kind: str = GENERIC
    group: FiniteGroup | None = None
    matched_pair: Any = None

    @classmethod
    def group_algebra(cls, group: FiniteGroup) -> FactorTag:
        return cls(GROUP_ALGEBRA, group)

    @classmethod
    def dual_group_algebra(cls, group: FiniteGroup) -> FactorTag:
        return cls(DUAL_GROUP_ALGEBRA, group)

    @property
    def is_group_kind(self) -> bool:
        return self.kind in (GROUP_ALGEBRA, DUAL_GROUP_ALGEBRA)

    def dual(self) -> FactorTag:
        return FactorTag(_DUAL_KIND[self.kind], self.group, self.matched_pair)

    def describe(self) -> str:
        if self.is_group_kind:
            prefix = "k" if self.kind == GROUP_ALGEBRA else "k^"
            name = self.group.display_name
            return f"{prefix}{name}"
        return self.kind

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind}
        if self.group is not None:
            out["group_id"] = self.group.canonical_id
        return out


# =============================================================================
# HopfAlgebra
# =============================================================================


def _freeze_vec(vec: Mapping[int, Scalar]) -> tuple[tuple[int, Scalar], ...]:
    return tuple((k, vec[k]) for k in sorted(vec) if vec[k])


@dataclass(frozen=True, eq=False)
class HopfAlgebra:
    """A finite-dimensional Hopf algebra over Q or GF(p).

    Use ``HopfAlgebra.build`` to construct one from coefficient entries.
    """

    field: Field
    basis: tuple[str, ...]
    mult: Mapping[tuple[int, int], tuple[tuple[int, Scalar], ...]]
    unit: tuple[tuple[int, Scalar], ...]
    comult: tuple[tuple[tuple[int, int, Scalar], ...], ...]
    counit: tuple[Scalar, ...]
    antipode: tuple[tuple[tuple[int, Scalar], ...], ...]
    provenance: FactorTag | None = field(default=None, compare=False)

    @classmethod
    def build(
        cls,
        field: Field,
        basis: Sequence[str],
        mult: Iterable[tuple[int, int, int, Any]],
        unit: Iterable[tuple[int, Any]],
        comult: Iterable[tuple[int, int, int, Any]],
        counit: Iterable[tuple[int, Any]],
        antipode: Iterable[tuple[int, int, Any]],
        provenance: FactorTag | None = None,
    ) -> HopfAlgebra:
        """Validate indices, coerce scalars and sum repeated entries."""
        n = len(basis)
        if n == 0:
            msg = "a Hopf algebra needs dimension >= 1"
            raise InputError(msg)

        def idx(i: int, what: str) -> int:
            if isinstance(i, bool) or not isinstance(i, int) or not 0 <= i < n:
                msg = f"{what} index {i!r} outside 0..{n - 1}"
                raise InputError(msg)
            return i

        m: dict[tuple[int, int], dict[int, Scalar]] = {}
        for i, j, k, c in mult:
            add_scaled(m.setdefault((idx(i, "mult"), idx(j, "mult")), {}),
                       {idx(k, "mult"): field.coerce(c)}, 1)
        d: list[dict[tuple[int, int], Scalar]] = [{} for _ in range(n)]
        for i, j, k, c in comult:
            key = (idx(j, "comult"), idx(k, "comult"))
            s = d[idx(i, "comult")].get(key, 0) + field.coerce(c)
            d[i][key] = s
        u: dict[int, Scalar] = {}
        for k, c in unit:
            add_scaled(u, {idx(k, "unit"): field.coerce(c)}, 1)
        eps = [field.zero] * n
        for i, c in counit:
            eps[idx(i, "counit")] = eps[i] + field.coerce(c)
        s_rows: list[dict[int, Scalar]] = [{} for _ in range(n)]
        for i, j, c in antipode:
            add_scaled(s_rows[idx(i, "antipode")], {idx(j, "antipode"): field.coerce(c)}, 1)
        missing = [i for i in range(n) if not s_rows[i]]
        if missing:
            msg = f"antipode row {missing[0]} is missing (S must be bijective)"
            raise InputError(msg)
        if not u:
            msg = "unit vector is zero"
            raise InputError(msg)
        return cls(
            field=field,
            basis=tuple(basis),
            mult=MappingProxyType(
                {key: _freeze_vec(v) for key, v in sorted(m.items()) if _freeze_vec(v)}
            ),
            unit=_freeze_vec(u),
            comult=tuple(
                tuple((j, k, c) for (j, k), c in sorted(row.items()) if c) for row in d
            ),
            counit=tuple(eps),
            antipode=tuple(_freeze_vec(r) for r in s_rows),
            provenance=provenance,
        )

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def tag(self) -> FactorTag:
        return self.provenance or FactorTag()

    @property
    def one(self) -> SparseVector:
        return dict(self.unit)

    def e(self, i: int) -> SparseVector:
        return {i: self.field.one}

    def describe(self) -> str:
        return f"{self.tag.describe()} (dim {self.dim})"


# =============================================================================
# Element arithmetic
# =============================================================================


def multiply(h: HopfAlgebra, a: SparseVector, b: SparseVector) -> SparseVector:
    out: SparseVector = {}
    mult = h.mult
    for i, ai in a.items():
        for j, bj in b.items():
            terms = mult.get((i, j))
            if terms:
                c = ai * bj
                for k, v in terms:
                    s = out.get(k, 0) + c * v
                    if s:
                        out[k] = s
                    else:
                        del out[k]
    return out


def comultiply(h: HopfAlgebra, a: SparseVector) -> Tensor2:
    out: Tensor2 = {}
    for i, ai in a.items():
        for j, k, c in h.comult[i]:
            s = out.get((j, k), 0) + ai * c
            if s:
                out[(j, k)] = s
            else:
                del out[(j, k)]
    return out


def antipode_of(h: HopfAlgebra, a: SparseVector) -> SparseVector:
    out: SparseVector = {}
    for i, ai in a.items():
        add_scaled(out, dict(h.antipode[i]), ai)
    return out


def counit_of(h: HopfAlgebra, a: SparseVector) -> Scalar:
    return sum((ai * h.counit[i] for i, ai in a.items()), h.field.zero)


def tensor_multiply(h: HopfAlgebra, x: Tensor2, y: Tensor2) -> Tensor2:
    """Product in H ⊗ H."""
    out: Tensor2 = {}
    mult = h.mult
    for (a, b), cx in x.items():
        for (c, d), cy in y.items():
            left = mult.get((a, c))
            if not left:
                continue
            right = mult.get((b, d))
            if not right:
                continue
            coeff = cx * cy
            for k1, v1 in left:
                for k2, v2 in right:
                    s = out.get((k1, k2), 0) + coeff * v1 * v2
                    if s:
                        out[(k1, k2)] = s
                    else:
                        del out[(k1, k2)]
    return out


def _split(x: Tensor2, left: Mapping[int, SparseVector] | None,
           right: Mapping[int, SparseVector] | None) -> Tensor2:
    """Apply linear maps (given on basis vectors) to each tensor factor."""
    out: Tensor2 = {}
    for (a, b), c in x.items():
        la = left[a] if left is not None else {a: 1}
        rb = right[b] if right is not None else {b: 1}
        for k1, v1 in la.items():
            for k2, v2 in rb.items():
                s = out.get((k1, k2), 0) + c * v1 * v2
                if s:
                    out[(k1, k2)] = s
                else:
                    del out[(k1, k2)]
    return out


# =============================================================================
# Axiom verification
# =============================================================================


@dataclass
class AxiomCheck:
    """Outcome of one axiom with the first offending basis tuple."""

    name: str
    passed: bool
    witness: tuple[int, ...] | None = None
    detail: str = ""

    def to_json(self) -> dict:
        out: dict = {"passed": self.passed}
        if self.witness is not None:
            out["witness"] = list(self.witness)
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass
class AxiomReport:
    checks: list[AxiomCheck]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def first_failure(self) -> AxiomCheck | None:
        return next((c for c in self.checks if not c.passed), None)

    def __getitem__(self, name: str) -> AxiomCheck:
        return next(c for c in self.checks if c.name == name)

    def to_json(self) -> dict:
        return {"passed": self.passed, "axioms": {c.name: c.to_json() for c in self.checks}}


def _check(name: str, failures: Iterable[tuple[int, ...]], detail: str) -> AxiomCheck:
    first = min(failures, default=None)
    if first is None:
        return AxiomCheck(name, True)
    return AxiomCheck(name, False, first, detail)


def _associativity_failures(h: HopfAlgebra) -> list[tuple[int, int, int]]:
    n = h.dim
    prods = {key: dict(terms) for key, terms in h.mult.items()}

    def times_basis(vec: SparseVector, k: int) -> SparseVector:
        out: SparseVector = {}
        for m, c in vec.items():
            t = prods.get((m, k))
            if t:
                add_scaled(out, t, c)
        return out

    def basis_times(i: int, vec: SparseVector) -> SparseVector:
        out: SparseVector = {}
        for m, c in vec.items():
            t = prods.get((i, m))
            if t:
                add_scaled(out, t, c)
        return out

    triples: set[tuple[int, int, int]] = set()
    for i, j in prods:
        triples.update((i, j, k) for k in range(n))
        triples.update((k, i, j) for k in range(n))
    for i, j, k in sorted(triples):
        lhs = times_basis(prods.get((i, j), {}), k)
        rhs = basis_times(i, prods.get((j, k), {}))
        if lhs != rhs:
            return [(i, j, k)]
    return []


def verify_axioms(h: HopfAlgebra) -> AxiomReport:
    """Check every Hopf algebra axiom exactly, reporting the first failure per axiom."""
    n = h.dim
    one = h.one
    f = h.field
    checks = [
        _check("associativity", _associativity_failures(h), "(e_i e_j) e_k != e_i (e_j e_k)")
    ]

    unit_bad = [
        (i,) for i in range(n)
        if multiply(h, one, h.e(i)) != h.e(i) or multiply(h, h.e(i), one) != h.e(i)
    ]
    checks.append(_check("unit", unit_bad, "1 e_i != e_i or e_i 1 != e_i"))

    delta = {i: comultiply(h, h.e(i)) for i in range(n)}
    coassoc_bad = []
    for i in range(n):
        left: dict[tuple[int, int, int], Scalar] = {}
        right: dict[tuple[int, int, int], Scalar] = {}
        for (a, b), c in delta[i].items():
            for (x, y), d in delta[a].items():
                key = (x, y, b)
                left[key] = left.get(key, 0) + c * d
            for (x, y), d in delta[b].items():
                key = (a, x, y)
                right[key] = right.get(key, 0) + c * d
        if {k: v for k, v in left.items() if v} != {k: v for k, v in right.items() if v}:
            coassoc_bad.append((i,))
    checks.append(_check("coassociativity", coassoc_bad, "(Δ⊗id)Δ != (id⊗Δ)Δ"))

    counit_bad = []
    for i in range(n):
        lhs: SparseVector = {}
        rhs: SparseVector = {}
        for (a, b), c in delta[i].items():
            add_scaled(lhs, {b: c * h.counit[a]}, 1)
            add_scaled(rhs, {a: c * h.counit[b]}, 1)
        if lhs != h.e(i) or rhs != h.e(i):
            counit_bad.append((i,))
    checks.append(_check("counit", counit_bad, "(ε⊗id)Δ(e_i) != e_i"))

    delta_mult_bad: list[tuple[int, ...]] = []
    one_one = {(a, b): ca * cb for a, ca in one.items() for b, cb in one.items()}
    if comultiply(h, one) != {k: v for k, v in one_one.items() if v}:
        delta_mult_bad.append(())
    for i in range(n):
        for j in range(n):
            prod = multiply(h, h.e(i), h.e(j))
            if comultiply(h, prod) != tensor_multiply(h, delta[i], delta[j]):
                delta_mult_bad.append((i, j))
                break
        if delta_mult_bad:
            break
    checks.append(_check("comult_multiplicative", delta_mult_bad, "Δ(e_i e_j) != Δ(e_i)Δ(e_j)"))

    eps_bad: list[tuple[int, ...]] = []
    if counit_of(h, one) != f.one:
        eps_bad.append(())
    for (i, j), terms in h.mult.items():
        if counit_of(h, dict(terms)) != h.counit[i] * h.counit[j]:
            eps_bad.append((i, j))
    for i in range(n):
        for j in range(n):
            if (i, j) not in h.mult and h.counit[i] * h.counit[j]:
                eps_bad.append((i, j))
    checks.append(_check("counit_multiplicative", eps_bad, "ε(e_i e_j) != ε(e_i)ε(e_j)"))

    s_images = {i: dict(h.antipode[i]) for i in range(n)}
    antipode_bad = []
    for i in range(n):
        target = {k: v * h.counit[i] for k, v in one.items() if v * h.counit[i]}
        left_sum: SparseVector = {}
        right_sum: SparseVector = {}
        for (a, b), c in delta[i].items():
            add_scaled(left_sum, multiply(h, s_images[a], h.e(b)), c)
            add_scaled(right_sum, multiply(h, h.e(a), s_images[b]), c)
        if left_sum != target or right_sum != target:
            antipode_bad.append((i,))
    checks.append(_check("antipode", antipode_bad, "m(S⊗id)Δ(e_i) != ε(e_i)1"))

    invertible = rank(s_images.values(), n, f) == n
    checks.append(AxiomCheck("antipode_invertible", invertible,
                             None if invertible else (), "" if invertible else "S is singular"))
    report = AxiomReport(checks)
    logger.debug("axiom check on %s: %s", h.describe(), "pass" if report.passed else "fail")
    return report


# =============================================================================
# Duality and comparison
# =============================================================================


def _dual_label(label: str) -> str:
    return label[:-1] if label.endswith("*") else f"{label}*"


def dual(h: HopfAlgebra) -> HopfAlgebra:
    """H* on the dual basis: every structure map is a transpose."""
    mult = [(j, k, i, c) for i in range(h.dim) for j, k, c in h.comult[i]]
    comult = [(k, i, j, c) for (i, j), terms in h.mult.items() for k, c in terms]
    unit = [(i, c) for i, c in enumerate(h.counit) if c]
    counit = list(h.unit)
    antipode = [(j, i, c) for i in range(h.dim) for j, c in h.antipode[i]]
    return HopfAlgebra.build(
        h.field,
        [_dual_label(b) for b in h.basis],
        mult,
        unit,
        comult,
        counit,
        antipode,
        h.tag.dual() if h.provenance is not None else None,
    )


def same_structure(h1: HopfAlgebra, h2: HopfAlgebra) -> bool:
    """Tensor identity, ignoring labels and provenance."""
    return (
        h1.field == h2.field
        and h1.dim == h2.dim
        and dict(h1.mult) == dict(h2.mult)
        and h1.unit == h2.unit
        and h1.comult == h2.comult
        and h1.counit == h2.counit
        and h1.antipode == h2.antipode
    )


def with_provenance(h: HopfAlgebra, tag: FactorTag | None) -> HopfAlgebra:
    return HopfAlgebra(h.field, h.basis, h.mult, h.unit, h.comult, h.counit, h.antipode, tag)


def grouplikes(h: HopfAlgebra) -> list[int]:
    """Basis indices i with Δ(e_i) = e_i ⊗ e_i and ε(e_i) = 1."""
    one = h.field.one
    return [
        i for i in range(h.dim)
        if h.comult[i] == ((i, i, one),) and h.counit[i] == one
    ]


# =============================================================================
# Morphisms
# =============================================================================


@dataclass(frozen=True, eq=False)
class HopfMorphism:
    """Linear map given by the images of the source basis (its matrix columns)."""

    source: HopfAlgebra
    target: HopfAlgebra
    columns: tuple[SparseVector, ...]

    def __post_init__(self):
        if len(self.columns) != self.source.dim:
            msg = f"morphism has {len(self.columns)} columns, source dim is {self.source.dim}"
            raise InputError(msg)
        for j, col in enumerate(self.columns):
            if any(not 0 <= k < self.target.dim for k in col):
                msg = f"column {j} has an entry outside the target (dim {self.target.dim})"
                raise InputError(msg)

    @classmethod
    def from_matrix(cls, source: HopfAlgebra, target: HopfAlgebra,
                    matrix: Sequence[Sequence[Any]]) -> HopfMorphism:
        """Matrix of shape target_dim × source_dim."""
        if len(matrix) != target.dim or any(len(r) != source.dim for r in matrix):
            msg = f"matrix shape must be {target.dim}x{source.dim}"
            raise InputError(msg)
        f = target.field
        cols = tuple(
            {k: f.coerce(matrix[k][j]) for k in range(target.dim) if matrix[k][j]}
            for j in range(source.dim)
        )
        return cls(source, target, cols)

    @property
    def matrix(self) -> list[list[Scalar]]:
        zero = self.target.field.zero
        rows = [[zero] * self.source.dim for _ in range(self.target.dim)]
        for j, col in enumerate(self.columns):
            for k, c in col.items():
                rows[k][j] = c
        return rows

    def __call__(self, vec: SparseVector) -> SparseVector:
        return apply(self.columns, vec)

    @cached_property
    def rank(self) -> int:
        return rank(self.columns, self.target.dim, self.target.field)

    @property
    def injective(self) -> bool:
        return self.rank == self.source.dim

    @property
    def surjective(self) -> bool:
        return self.rank == self.target.dim

    @property
    def bijective(self) -> bool:
        return self.injective and self.surjective

    def kernel(self) -> Subspace:
        return kernel(self.columns, self.source.field)


def identity_morphism(h: HopfAlgebra) -> HopfMorphism:
    return HopfMorphism(h, h, tuple(h.e(i) for i in range(h.dim)))


def compose(g: HopfMorphism, f: HopfMorphism) -> HopfMorphism:
    """g ∘ f."""
    if f.target.dim != g.source.dim:
        msg = "morphisms are not composable"
        raise InputError(msg)
    return HopfMorphism(f.source, g.target, tuple(g(col) for col in f.columns))


def inverse_morphism(f: HopfMorphism) -> HopfMorphism:
    cols = invert(f.columns, f.source.field)
    return HopfMorphism(f.target, f.source, tuple(cols))


def dual_morphism(f: HopfMorphism, source_dual: HopfAlgebra | None = None,
                  target_dual: HopfAlgebra | None = None) -> HopfMorphism:
    """f*: target* → source*, the transpose."""
    src = source_dual or dual(f.target)
    tgt = target_dual or dual(f.source)
    cols: list[SparseVector] = [{} for _ in range(f.target.dim)]
    for j, col in enumerate(f.columns):
        for k, c in col.items():
            cols[k][j] = c
    return HopfMorphism(src, tgt, tuple(cols))


@dataclass
class MorphismReport:
    checks: list[AxiomCheck]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> dict:
        return {"passed": self.passed, "checks": {c.name: c.to_json() for c in self.checks}}


def verify_morphism(f: HopfMorphism) -> MorphismReport:
    """Algebra map, unital, coalgebra map and counital, all exactly."""
    src, tgt = f.source, f.target
    n = src.dim
    images = f.columns
    alg_bad = []
    for i in range(n):
        for j in range(n):
            lhs = f(multiply(src, src.e(i), src.e(j)))
            if lhs != multiply(tgt, images[i], images[j]):
                alg_bad.append((i, j))
                break
        if alg_bad:
            break
    unit_ok = f(src.one) == tgt.one
    coalg_bad = []
    counit_bad = []
    for i in range(n):
        lhs = _split(comultiply(src, src.e(i)), images, images)
        if lhs != comultiply(tgt, images[i]):
            coalg_bad.append((i,))
        if counit_of(tgt, images[i]) != src.counit[i]:
            counit_bad.append((i,))
    checks = [
        _check("multiplicative", alg_bad, "f(e_i e_j) != f(e_i) f(e_j)"),
        AxiomCheck("unital", unit_ok, None if unit_ok else (), "" if unit_ok else "f(1) != 1"),
        _check("comultiplicative", coalg_bad, "(f⊗f)Δ(e_i) != Δ(f(e_i))"),
        _check("counital", counit_bad, "ε(f(e_i)) != ε(e_i)"),
    ]
    return MorphismReport(checks)


# =============================================================================
# (Co)semisimplicity
# =============================================================================


def trace_form(h: HopfAlgebra) -> list[SparseVector]:
    """Rows of the Gram matrix T(e_i, e_j) = tr(L_{e_i e_j})."""
    traces = [h.field.zero] * h.dim
    for (k, l), terms in h.mult.items():
        for out, c in terms:
            if out == l:
                traces[k] = traces[k] + c
    rows: list[SparseVector] = [{} for _ in range(h.dim)]
    for (i, j), terms in h.mult.items():
        t = sum((c * traces[k] for k, c in terms), h.field.zero)
        if t:
            rows[i][j] = t
    return rows


def radical(h: HopfAlgebra) -> Subspace:
    """Jacobson radical as the kernel of the trace form (characteristic 0)."""
    if h.field.characteristic != 0:
        msg = "trace-form radical is only available in characteristic 0"
        raise UnsupportedOperationError(msg)
    return kernel(trace_form(h), h.field)


def is_semisimple(h: HopfAlgebra) -> bool:
    return radical(h).dim == 0


def is_cosemisimple(h: HopfAlgebra) -> bool:
    return is_semisimple(dual(h))


def trivial_hopf_algebra(field: Field = QQ) -> HopfAlgebra:
    """The one-dimensional Hopf algebra k."""
    return HopfAlgebra.build(field, ["1"], [(0, 0, 0, 1)], [(0, 1)], [(0, 0, 0, 1)],
                             [(0, 1)], [(0, 0, 1)])
