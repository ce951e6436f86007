"""Subalgebra calculus inside a fixed Hopf algebra.

Subobjects are RREF subspaces of the parent. Closures grow an
``EchelonBasis`` until every required operation maps the span into itself.
Quotients use the non-pivot coordinates of the ideal as their basis.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from functools import cached_property

from hopfkit.errors import DomainError, InputError, InternalError, TheoremViolation
from hopfkit.exact_linear import (
    EchelonBasis,
    SparseVector,
    Subspace,
    add_scaled,
    canonicalize,
    complement_indices,
    full_space,
    intersect,
    kernel,
    subspace_sum,
)
from hopfkit.hopf_core import (
    HopfAlgebra,
    HopfMorphism,
    Tensor2,
    antipode_of,
    comultiply,
    counit_of,
    multiply,
    verify_morphism,
)

logger = logging.getLogger(__name__)

LEFT = "left"
RIGHT = "right"
BOTH = "both"


# =============================================================================
# Subobject types
# =============================================================================


@dataclass(frozen=True, eq=False)
class _Subobject:
    parent: HopfAlgebra
    space: Subspace

    def __post_init__(self):
        if self.space.parent_dim != self.parent.dim:
            msg = f"subspace lives in dim {self.space.parent_dim}, parent has dim {self.parent.dim}"
            raise InputError(msg)

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def rows(self) -> tuple[SparseVector, ...]:
        return self.space.rows

    def contains(self, vec: SparseVector) -> bool:
        return self.space.contains(vec)

    def coordinates(self, vec: SparseVector) -> SparseVector:
        """Coordinates of vec (which must lie in the subobject) in the RREF basis."""
        return {a: vec[p] for a, p in enumerate(self.space.pivots) if vec.get(p)}

    def embed(self, coords: SparseVector) -> SparseVector:
        out: SparseVector = {}
        for a, c in coords.items():
            add_scaled(out, self.space.rows[a], c)
        return out

    def relative(self, other: Subspace) -> Subspace:
        """A subspace of this subobject, re-expressed in its own coordinates."""
        if not other.is_subspace_of(self.space):
            msg = "subspace is not contained in the subobject"
            raise DomainError(msg)
        return canonicalize([self.coordinates(r) for r in other.rows], self.dim,
                            self.parent.field)

    def __eq__(self, other):
        if not isinstance(other, _Subobject):
            return NotImplemented
        return self.parent is other.parent and self.space == other.space

    def __hash__(self):
        return hash((id(self.parent), self.space))


@dataclass(frozen=True, eq=False)
class RightCoidealSubalgebra(_Subobject):
    """Subalgebra V with Δ(V) ⊆ V ⊗ H."""


@dataclass(frozen=True, eq=False)
class HopfSubalgebra(_Subobject):
    """Hopf subalgebra; ``algebra`` is the standalone Hopf algebra on the RREF basis."""

    @cached_property
    def algebra(self) -> HopfAlgebra:
        return restrict(self)

    @cached_property
    def inclusion(self) -> HopfMorphism:
        return HopfMorphism(self.algebra, self.parent, tuple(dict(r) for r in self.rows))


# =============================================================================
# Adjoint actions
# =============================================================================


def adjoint_action(h: HopfAlgebra, side: str, x: SparseVector, a: SparseVector) -> SparseVector:
    """Left: x.a = x1 a S(x2). Right: a.x = S(x1) a x2."""
    out: SparseVector = {}
    for (i, j), c in comultiply(h, x).items():
        if side == LEFT:
            term = multiply(h, multiply(h, h.e(i), a), dict(h.antipode[j]))
        elif side == RIGHT:
            term = multiply(h, multiply(h, dict(h.antipode[i]), a), h.e(j))
        else:
            msg = f"side must be 'left' or 'right', got {side!r}"
            raise InputError(msg)
        add_scaled(out, term, c)
    return out


def _stable_under(h: HopfAlgebra, side: str, actors: Iterable[SparseVector],
                  space: Subspace) -> bool:
    actors = list(actors)
    for v in space.rows:
        for x in actors:
            if not space.contains(adjoint_action(h, side, x, v)):
                return False
    return True


def basis_vectors(h: HopfAlgebra) -> list[SparseVector]:
    return [h.e(i) for i in range(h.dim)]


# =============================================================================
# Structural checks
# =============================================================================


def _coefficient_vectors(delta: Tensor2, which: str) -> list[SparseVector]:
    """Left (first-factor) or right (second-factor) coefficient vectors of a tensor."""
    groups: dict[int, SparseVector] = {}
    for (j, k), c in delta.items():
        if which == LEFT:
            groups.setdefault(k, {})[j] = c
        else:
            groups.setdefault(j, {})[k] = c
    return list(groups.values())


def _subalgebra_failure(h: HopfAlgebra, space: Subspace) -> str | None:
    if not space.contains(h.one):
        return "does not contain 1"
    rows = space.rows
    for a, ra in enumerate(rows):
        for rb in rows[a:]:
            if not space.contains(multiply(h, ra, rb)) or not space.contains(
                multiply(h, rb, ra)
            ):
                return "not closed under multiplication"
    return None


def hopf_subalgebra_failure(h: HopfAlgebra, space: Subspace) -> str | None:
    """None when space is a Hopf subalgebra, else the first violated condition."""
    reason = _subalgebra_failure(h, space)
    if reason:
        return reason
    for v in space.rows:
        delta = comultiply(h, v)
        if not all(space.contains(w) for w in _coefficient_vectors(delta, LEFT)) or not all(
            space.contains(w) for w in _coefficient_vectors(delta, RIGHT)
        ):
            return "not a subcoalgebra"
        if not space.contains(antipode_of(h, v)):
            return "not stable under the antipode"
    return None


def right_coideal_failure(h: HopfAlgebra, space: Subspace) -> str | None:
    reason = _subalgebra_failure(h, space)
    if reason:
        return reason
    for v in space.rows:
        if not all(space.contains(w) for w in _coefficient_vectors(comultiply(h, v), LEFT)):
            return "not a right coideal"
    return None


def hopf_subalgebra(h: HopfAlgebra, space: Subspace) -> HopfSubalgebra:
    """Verified Hopf subalgebra on `space`."""
    reason = hopf_subalgebra_failure(h, space)
    if reason:
        msg = f"subspace of dim {space.dim} is not a Hopf subalgebra: {reason}"
        raise DomainError(msg)
    return HopfSubalgebra(h, space)


def right_coideal_subalgebra(h: HopfAlgebra, space: Subspace) -> RightCoidealSubalgebra:
    reason = right_coideal_failure(h, space)
    if reason:
        msg = f"subspace of dim {space.dim} is not a right coideal subalgebra: {reason}"
        raise DomainError(msg)
    return RightCoidealSubalgebra(h, space)


# =============================================================================
# Closures
# =============================================================================


def _close(h: HopfAlgebra, seed: Iterable[SparseVector], *, coalgebra: bool,
           antipode: bool, adjoint: Sequence[SparseVector] | None) -> Subspace:
    ech = EchelonBasis(h.dim, h.field)
    queue: list[SparseVector] = []

    def push(v: SparseVector) -> None:
        if v and ech.add(v):
            queue.append(v)

    push(h.one)
    for s in seed:
        push(s)
    done: list[SparseVector] = []
    while queue:
        v = queue.pop()
        for w in [*done, v]:
            push(multiply(h, v, w))
            push(multiply(h, w, v))
        if coalgebra:
            delta = comultiply(h, v)
            for w in _coefficient_vectors(delta, LEFT) + _coefficient_vectors(delta, RIGHT):
                push(w)
        if antipode:
            push(antipode_of(h, v))
        if adjoint is not None:
            for x in adjoint:
                push(adjoint_action(h, LEFT, x, v))
                push(adjoint_action(h, RIGHT, x, v))
        done.append(v)
    return ech.to_subspace()


def hopf_closure(h: HopfAlgebra, seed: Iterable[SparseVector]) -> HopfSubalgebra:
    """Smallest Hopf subalgebra containing the seed."""
    space = _close(h, seed, coalgebra=True, antipode=True, adjoint=None)
    return HopfSubalgebra(h, space)


def normal_closure(h: HopfAlgebra, seed: Iterable[SparseVector],
                   generators: Sequence[SparseVector] | None = None) -> HopfSubalgebra:
    """Smallest normal Hopf subalgebra containing the seed.

    Adjoint stability is imposed for `generators` (default: the whole basis),
    which must generate H as an algebra.
    """
    actors = basis_vectors(h) if generators is None else list(generators)
    space = _close(h, seed, coalgebra=True, antipode=True, adjoint=actors)
    return HopfSubalgebra(h, space)


def left_ideal(h: HopfAlgebra, vectors: Iterable[SparseVector],
               generators: Sequence[SparseVector] | None = None) -> Subspace:
    """H·V, grown by left multiplication with algebra generators."""
    actors = basis_vectors(h) if generators is None else list(generators)
    ech = EchelonBasis(h.dim, h.field)
    queue = [v for v in vectors if v and ech.add(v)]
    while queue:
        v = queue.pop()
        for x in actors:
            w = multiply(h, x, v)
            if w and ech.add(w):
                queue.append(w)
    return ech.to_subspace()


def two_sided_ideal(h: HopfAlgebra, vectors: Iterable[SparseVector],
                    generators: Sequence[SparseVector] | None = None) -> Subspace:
    """H·V·H."""
    actors = basis_vectors(h) if generators is None else list(generators)
    ech = EchelonBasis(h.dim, h.field)
    queue = [v for v in vectors if v and ech.add(v)]
    while queue:
        v = queue.pop()
        for x in actors:
            for w in (multiply(h, x, v), multiply(h, v, x)):
                if w and ech.add(w):
                    queue.append(w)
    return ech.to_subspace()


# =============================================================================
# Normality and products
# =============================================================================


def is_normal(k: HopfSubalgebra, side: str = BOTH,
              generators: Sequence[SparseVector] | None = None) -> bool:
    """Stability under the adjoint action(s) of H (or of algebra generators of H)."""
    h = k.parent
    actors = basis_vectors(h) if generators is None else list(generators)
    if side in (LEFT, RIGHT):
        return _stable_under(h, side, actors, k.space)
    if side != BOTH:
        msg = f"side must be left, right or both, got {side!r}"
        raise InputError(msg)
    left = _stable_under(h, LEFT, actors, k.space)
    right = _stable_under(h, RIGHT, actors, k.space)
    if left != right:
        msg = (
            f"left normality ({left}) and right normality ({right}) disagree for a Hopf "
            f"subalgebra of dim {k.dim}; the structure constants are inconsistent"
        )
        raise InternalError(msg)
    return left


def is_right_normal(v: _Subobject, generators: Sequence[SparseVector] | None = None) -> bool:
    h = v.parent
    actors = basis_vectors(h) if generators is None else list(generators)
    return _stable_under(h, RIGHT, actors, v.space)


def _same_parent(a: _Subobject, b: _Subobject) -> None:
    if a.parent is not b.parent:
        msg = "subobjects belong to different Hopf algebras"
        raise InputError(msg)


def normalizes(a: _Subobject, b: _Subobject) -> bool:
    """B is stable under both adjoint actions of A."""
    _same_parent(a, b)
    h = a.parent
    return _stable_under(h, LEFT, a.rows, b.space) and _stable_under(h, RIGHT, a.rows, b.space)


def product_space(a: _Subobject, b: _Subobject) -> Subspace:
    h = a.parent
    return canonicalize((multiply(h, x, y) for x in a.rows for y in b.rows), h.dim, h.field)


def product_subalgebras(a: HopfSubalgebra, b: HopfSubalgebra) -> HopfSubalgebra:
    """AB for A normalizing B."""
    _same_parent(a, b)
    if not normalizes(a, b):
        msg = "A does not normalize B, so AB need not be a Hopf subalgebra"
        raise DomainError(msg)
    space = product_space(a, b)
    reason = hopf_subalgebra_failure(a.parent, space)
    if reason:
        msg = f"AB is not a Hopf subalgebra ({reason}) although A normalizes B"
        raise TheoremViolation(msg)
    return HopfSubalgebra(a.parent, space)


def intersection(a: HopfSubalgebra, b: HopfSubalgebra) -> HopfSubalgebra:
    _same_parent(a, b)
    return HopfSubalgebra(a.parent, intersect(a.space, b.space))


def nichols_zoeller_check(k: _Subobject, h: HopfAlgebra | None = None) -> bool:
    """dim K divides dim H."""
    parent = k.parent if h is None else h
    return parent.dim % k.dim == 0


# =============================================================================
# Ideals and quotients
# =============================================================================


def augmentation(k: _Subobject) -> list[SparseVector]:
    """Spanning vectors of K⁺ = K ∩ ker ε."""
    h = k.parent
    out = []
    for r in k.rows:
        v = dict(r)
        add_scaled(v, h.one, -counit_of(h, r))
        if v:
            out.append(v)
    return out


def hopf_ideal_failure(h: HopfAlgebra, ideal: Subspace,
                       generators: Sequence[SparseVector] | None = None) -> str | None:
    actors = basis_vectors(h) if generators is None else list(generators)
    for v in ideal.rows:
        if counit_of(h, v):
            return "counit does not vanish"
        for x in actors:
            if not ideal.contains(multiply(h, v, x)) or not ideal.contains(multiply(h, x, v)):
                return "not a two-sided ideal"
        if not ideal.contains(antipode_of(h, v)):
            return "not stable under the antipode"
        if _project_tensor(ideal, comultiply(h, v)):
            return "not a coideal"
    return None


def _project_tensor(ideal: Subspace, delta: Tensor2) -> Tensor2:
    """Image of a tensor in (H/I) ⊗ (H/I), on non-pivot coordinates."""
    reduced: dict[int, SparseVector] = {}
    out: Tensor2 = {}
    for (a, b), c in delta.items():
        for x in (a, b):
            if x not in reduced:
                reduced[x] = ideal.reduce({x: 1})
        ra, rb = reduced[a], reduced[b]
        for x, cx in ra.items():
            for y, cy in rb.items():
                s = out.get((x, y), 0) + c * cx * cy
                if s:
                    out[(x, y)] = s
                else:
                    del out[(x, y)]
    return out


def hopf_ideal(k: _Subobject, *, check: bool = True,
               generators: Sequence[SparseVector] | None = None) -> Subspace:
    """H·K⁺ for a right normal K, verified to be a Hopf ideal."""
    h = k.parent
    if check and not is_right_normal(k, generators):
        msg = f"subobject of dim {k.dim} is not right normal; H·K⁺ need not be a Hopf ideal"
        raise DomainError(msg)
    ideal = left_ideal(h, augmentation(k), generators)
    reason = hopf_ideal_failure(h, ideal, generators)
    if reason:
        msg = f"H·K⁺ is not a Hopf ideal ({reason}); the input data is invalid"
        raise TheoremViolation(msg)
    return ideal


@dataclass(frozen=True, eq=False)
class QuotientHopf:
    """H/I with its projection; the quotient basis is the non-pivot coordinates of I."""

    parent: HopfAlgebra
    kernel_ideal: Subspace
    quotient: HopfAlgebra
    projection: HopfMorphism
    complement: tuple[int, ...] = field(repr=False)

    def lift(self, coords: SparseVector) -> SparseVector:
        """A preimage: quotient basis vector b ↦ e_{complement[b]}."""
        return {self.complement[b]: c for b, c in coords.items()}


def quotient_by_ideal(h: HopfAlgebra, ideal: Subspace) -> QuotientHopf:
    """Quotient by an already verified Hopf ideal."""
    comp = complement_indices(ideal)
    where = {q: b for b, q in enumerate(comp)}

    def proj(vec: SparseVector) -> SparseVector:
        return {where[k]: c for k, c in ideal.reduce(vec).items()}

    images = [proj(h.e(j)) for j in range(h.dim)]

    def proj_fast(vec: SparseVector) -> SparseVector:
        out: SparseVector = {}
        for j, c in vec.items():
            add_scaled(out, images[j], c)
        return out

    mult = []
    for a, qa in enumerate(comp):
        for b, qb in enumerate(comp):
            terms = h.mult.get((qa, qb))
            if terms:
                for k, c in proj_fast(dict(terms)).items():
                    mult.append((a, b, k, c))
    comult = []
    for a, qa in enumerate(comp):
        acc: Tensor2 = {}
        for j, k, c in h.comult[qa]:
            for x, cx in images[j].items():
                for y, cy in images[k].items():
                    acc[(x, y)] = acc.get((x, y), 0) + c * cx * cy
        comult.extend((a, x, y, c) for (x, y), c in acc.items() if c)
    quotient = HopfAlgebra.build(
        h.field,
        [h.basis[q] for q in comp],
        mult,
        list(proj_fast(h.one).items()),
        comult,
        [(a, h.counit[q]) for a, q in enumerate(comp)],
        [(a, k, c) for a, q in enumerate(comp) for k, c in proj_fast(dict(h.antipode[q])).items()],
    )
    projection = HopfMorphism(h, quotient, tuple(images))
    logger.debug("quotient of dim %d by an ideal of dim %d", quotient.dim, ideal.dim)
    return QuotientHopf(h, ideal, quotient, projection, comp)


def quotient(h: HopfAlgebra, k: _Subobject, *, check: bool = True,
             generators: Sequence[SparseVector] | None = None) -> QuotientHopf:
    """H/HK⁺ and the projection π_K."""
    if k.parent is not h:
        msg = "subobject does not belong to this Hopf algebra"
        raise InputError(msg)
    return quotient_by_ideal(h, hopf_ideal(k, check=check, generators=generators))


# =============================================================================
# Coinvariants and exact sequences
# =============================================================================


def coinvariants(pi: HopfMorphism, side: str = LEFT) -> Subspace:
    """Left: {h : (π⊗id)Δh = 1⊗h}. Right: {h : (id⊗π)Δh = h⊗1}."""
    src, tgt = pi.source, pi.target
    n = src.dim
    one_t = tgt.one
    images = []
    for i in range(n):
        acc: dict[int, object] = {}
        for j, k, c in src.comult[i]:
            if side == LEFT:
                for a, ca in pi.columns[j].items():
                    key = a * n + k
                    acc[key] = acc.get(key, 0) + c * ca
            else:
                for b, cb in pi.columns[k].items():
                    key = j * tgt.dim + b
                    acc[key] = acc.get(key, 0) + c * cb
        for a, ca in one_t.items():
            key = a * n + i if side == LEFT else i * tgt.dim + a
            acc[key] = acc.get(key, 0) - ca
        images.append({key: v for key, v in acc.items() if v})
    return kernel(images, src.field)


def is_normal_morphism(pi: HopfMorphism) -> bool:
    """Left and right coinvariants coincide."""
    return coinvariants(pi, LEFT) == coinvariants(pi, RIGHT)


@dataclass(frozen=True, eq=False)
class ExactSequence:
    """k → H′ → H → H″ → k."""

    i: HopfMorphism
    pi: HopfMorphism

    @property
    def sub(self) -> HopfAlgebra:
        return self.i.source

    @property
    def middle(self) -> HopfAlgebra:
        return self.i.target

    @property
    def quotient(self) -> HopfAlgebra:
        return self.pi.target

    def kernel_subalgebra(self) -> HopfSubalgebra:
        """i(H′) as a Hopf subalgebra of H."""
        h = self.middle
        return HopfSubalgebra(h, canonicalize(self.i.columns, h.dim, h.field))


@dataclass
class ExactnessReport:
    conditions: dict[str, bool]
    dims: dict[str, int]
    sequence: ExactSequence | None = None

    @property
    def exact(self) -> bool:
        return all(self.conditions.values())

    @property
    def violated(self) -> list[str]:
        return [k for k, ok in self.conditions.items() if not ok]

    def to_json(self) -> dict:
        return {
            "exact": self.exact,
            "conditions": dict(self.conditions),
            "violated": self.violated,
            "dims": dict(self.dims),
        }


def verify_exact_sequence(i: HopfMorphism, pi: HopfMorphism,
                          generators: Sequence[SparseVector] | None = None) -> ExactnessReport:
    """Morphism identities, (a) injective/surjective, (b) ker π = H·i(H′)⁺,
    (c) i(H′) = ^{coπ}H, and dim H = dim H′ · dim H″."""
    if i.target.dim != pi.source.dim:
        msg = "i and π are not composable"
        raise InputError(msg)
    h = pi.source
    image = canonicalize(i.columns, h.dim, h.field)
    plus = []
    for j, col in enumerate(i.columns):
        v = dict(col)
        add_scaled(v, h.one, -i.source.counit[j])
        if v:
            plus.append(v)
    conditions = {
        "i_morphism": verify_morphism(i).passed,
        "pi_morphism": verify_morphism(pi).passed,
        "injective": i.injective,
        "surjective": pi.surjective,
        "kernel": pi.kernel() == left_ideal(h, plus, generators),
        "coinvariants": image == coinvariants(pi, LEFT),
        "dimension": h.dim == i.source.dim * pi.target.dim,
    }
    dims = {"sub": i.source.dim, "middle": h.dim, "quotient": pi.target.dim}
    report = ExactnessReport(conditions, dims)
    if report.exact:
        report.sequence = ExactSequence(i, pi)
    return report


# =============================================================================
# Standalone structures
# =============================================================================


def _row_label(h: HopfAlgebra, row: SparseVector) -> str:
    if len(row) == 1:
        return h.basis[next(iter(row))]
    return "<" + "+".join(h.basis[k] for k in sorted(row)[:2]) + ("+…>" if len(row) > 2 else ">")


def restrict(k: HopfSubalgebra) -> HopfAlgebra:
    """Structure constants of K in its RREF basis."""
    h = k.parent
    rows = k.rows
    piv = k.space.pivots
    pos = {p: a for a, p in enumerate(piv)}

    def coords(vec: SparseVector) -> SparseVector:
        if not k.space.contains(vec):
            msg = "subspace is not closed under the Hopf structure"
            raise DomainError(msg)
        return {pos[p]: vec[p] for p in piv if vec.get(p)}

    mult = []
    for a, ra in enumerate(rows):
        for b, rb in enumerate(rows):
            mult.extend((a, b, c, v) for c, v in coords(multiply(h, ra, rb)).items())
    comult = []
    for a, ra in enumerate(rows):
        delta = comultiply(h, ra)
        for (j, l), c in delta.items():
            if j in pos and l in pos:
                comult.append((a, pos[j], pos[l], c))
    antipode = []
    for a, ra in enumerate(rows):
        antipode.extend((a, b, v) for b, v in coords(antipode_of(h, ra)).items())
    return HopfAlgebra.build(
        h.field,
        [_row_label(h, r) for r in rows],
        mult,
        list(coords(h.one).items()),
        comult,
        [(a, counit_of(h, r)) for a, r in enumerate(rows)],
        antipode,
    )


def image_subalgebra(f: HopfMorphism, k: _Subobject | None = None) -> HopfSubalgebra:
    """f(K) (default f(source)) as a Hopf subalgebra of the target."""
    vecs = f.columns if k is None else [f(r) for r in k.rows]
    tgt = f.target
    return HopfSubalgebra(tgt, canonicalize(vecs, tgt.dim, tgt.field))


def whole(h: HopfAlgebra) -> HopfSubalgebra:
    return HopfSubalgebra(h, full_space(h.dim, h.field))


def trivial(h: HopfAlgebra) -> HopfSubalgebra:
    return HopfSubalgebra(h, canonicalize([h.one], h.dim, h.field))


def join(a: _Subobject, b: _Subobject) -> Subspace:
    _same_parent(a, b)
    return subspace_sum(a.space, b.space)
