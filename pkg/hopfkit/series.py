"""Composition series, lower/upper subnormal series and their invariants.

Every function that needs the normal Hopf subalgebras of an algebra takes a
``NormalLatticeProvider``; when none is passed one is resolved from the
algebra's provenance. Chains are stored outermost-first: H first, k last.
"""

from __future__ import annotations

import logging
from collections.abc import Iterator, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from sympy import Matrix, Poly, Rational, Symbol

from hopfkit.config import MAX_SERIES_ENUMERATION
from hopfkit.errors import DomainError, InputError, InternalError
from hopfkit.exact_linear import (
    Field,
    SparseVector,
    Subspace,
    apply,
    canonicalize,
    complement_indices,
    full_space,
    kernel,
)
from hopfkit.groups import group_isomorphic
from hopfkit.hopf_core import (
    HopfAlgebra,
    dual,
    is_cosemisimple,
    is_semisimple,
    multiply,
    radical,
    same_structure,
)
from hopfkit.lattices import DualProvider, NormalLatticeProvider
from hopfkit.subobjects import (
    BOTH,
    LEFT,
    RIGHT,
    HopfSubalgebra,
    QuotientHopf,
    basis_vectors,
    coinvariants,
    intersection,
    is_normal,
    product_subalgebras,
    quotient,
    restrict,
    two_sided_ideal,
)

logger = logging.getLogger(__name__)

LOWER = "lower"
UPPER = "upper"

EQUIVALENT = "equivalent"
DISTINCT = "distinct"
UNDECIDED = "undecided"

HOLDS = "holds"
NOT_APPLICABLE = "not-applicable"
VIOLATION = "violation"


def _resolve(h: HopfAlgebra, provider: NormalLatticeProvider | None) -> NormalLatticeProvider:
    if provider is None:
        from hopfkit.constructions import provider_for

        return provider_for(h)
    if provider.algebra is not h and not same_structure(provider.algebra, h):
        msg = "lattice provider belongs to a different Hopf algebra"
        raise InputError(msg)
    return provider


def dual_provider(provider: NormalLatticeProvider) -> NormalLatticeProvider:
    """Provider for H*: a family provider when the dual is tagged, else via annihilators."""
    from hopfkit.constructions import provider_for

    resolved = provider_for(dual(provider.algebra))
    if not resolved.search_based:
        return resolved
    return DualProvider.of(provider)


# =============================================================================
# Fingerprints
# =============================================================================


@dataclass(frozen=True)
class AlgebraInvariants:
    dim: int
    center: int
    radical: int | None
    abelianization: int
    rational_characters: int

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "center": self.center,
            "radical": self.radical,
            "abelianization": self.abelianization,
            "rational_characters": self.rational_characters,
        }


@dataclass(frozen=True)
class IsoFingerprint:
    """Isomorphism invariants of H and of H*; equal fingerprints are necessary only."""

    algebra: AlgebraInvariants
    dual: AlgebraInvariants

    def to_json(self) -> dict:
        return {"algebra": self.algebra.to_json(), "dual": self.dual.to_json()}


def _commutator(h: HopfAlgebra, a: SparseVector, b: SparseVector) -> SparseVector:
    out = dict(multiply(h, a, b))
    for k, c in multiply(h, b, a).items():
        s = out.get(k, 0) - c
        if s:
            out[k] = s
        else:
            del out[k]
    return out


def center(h: HopfAlgebra, generators: Sequence[SparseVector] | None = None) -> Subspace:
    gens = basis_vectors(h) if generators is None else list(generators)
    n = h.dim
    images = []
    for i in range(n):
        img: SparseVector = {}
        for g_idx, g in enumerate(gens):
            for k, c in _commutator(h, g, h.e(i)).items():
                img[g_idx * n + k] = c
        images.append(img)
    return kernel(images, h.field)


def _linear_factors(columns: Sequence[Sequence], fld: Field) -> list[tuple[object, int]]:
    """Rational roots (with algebraic multiplicity) of the characteristic polynomial."""
    x = Symbol("x")
    d = len(columns)
    if fld.characteristic == 0:
        def conv(c):
            q = Fraction(c)
            return Rational(q.numerator, q.denominator)

        m = Matrix(d, d, lambda i, j: conv(columns[j][i]))
        poly = Poly(m.charpoly(x).as_expr(), x, domain="QQ")
    else:
        m = Matrix(d, d, lambda i, j: fld.to_int(columns[j][i]))
        poly = Poly(m.charpoly(x).as_expr(), x, modulus=fld.p)
    out = []
    for q, mult in poly.factor_list()[1]:
        if q.degree() != 1:
            continue
        a, b = q.all_coeffs()
        if fld.characteristic == 0:
            r = -Rational(b) / Rational(a)
            root = fld.coerce(Fraction(int(r.p), int(r.q)))
        else:
            root = fld.coerce(-int(b)) * fld.inv(fld.coerce(int(a)))
        out.append((root, mult))
    return out


def _split_piece(piece: Subspace, op: Sequence[SparseVector], fld: Field) -> list[Subspace]:
    """Generalized eigenspaces of a multiplication operator for its rational eigenvalues."""
    d = piece.dim
    columns = [piece.coordinates(apply(op, r)) for r in piece.rows]
    found = _linear_factors(columns, fld)
    if len(found) == 1 and found[0][1] == d:
        return [piece]
    out = []
    for root, mult in found:
        shifted = [
            {i: c for i, c in enumerate(col) if c} for col in columns
        ]
        for j in range(d):
            v = shifted[j].get(j, fld.zero) - root
            if v:
                shifted[j][j] = v
            else:
                shifted[j].pop(j, None)
        images = [dict(s) for s in shifted]
        for _ in range(mult - 1):
            images = [apply(shifted, img) for img in images]
        ker = kernel(images, fld)
        vecs = [piece.combine([r.get(a, 0) for a in range(d)]) for r in ker.rows]
        out.append(canonicalize(vecs, piece.parent_dim, fld))
    return out


def rational_characters(h: HopfAlgebra, generators: Sequence[SparseVector] | None = None,
                        commutator_ideal: Subspace | None = None) -> int:
    """Number of algebra maps H → k, counted on the abelianization."""
    gens = basis_vectors(h) if generators is None else list(generators)
    fld = h.field
    ideal = commutator_ideal or abelianization_ideal(h, gens)
    comp = complement_indices(ideal)
    m = len(comp)
    if m == 0:
        return 0
    where = {q: b for b, q in enumerate(comp)}

    def to_quotient(vec: SparseVector) -> SparseVector:
        return {where[k]: c for k, c in ideal.reduce(vec).items()}

    ops = [[to_quotient(multiply(h, g, h.e(q))) for q in comp] for g in gens]
    pieces = [full_space(m, fld)]
    for op in ops:
        pieces = [p for piece in pieces for p in _split_piece(piece, op, fld)]
        if not pieces:
            break
    return len(pieces)


def abelianization_ideal(h: HopfAlgebra,
                         generators: Sequence[SparseVector] | None = None) -> Subspace:
    gens = basis_vectors(h) if generators is None else list(generators)
    comms = [_commutator(h, a, b) for i, a in enumerate(gens) for b in gens[i + 1:]]
    return two_sided_ideal(h, comms, gens)


def _invariants(h: HopfAlgebra) -> AlgebraInvariants:
    gens = basis_vectors(h)
    ideal = abelianization_ideal(h, gens)
    rad = radical(h).dim if h.field.characteristic == 0 else None
    return AlgebraInvariants(
        h.dim,
        center(h, gens).dim,
        rad,
        h.dim - ideal.dim,
        rational_characters(h, gens, ideal),
    )


def fingerprint(h: HopfAlgebra) -> IsoFingerprint:
    return IsoFingerprint(_invariants(h), _invariants(dual(h)))


# =============================================================================
# Factors and factor equivalence
# =============================================================================


@dataclass(frozen=True, eq=False)
class Factor:
    """A composition factor together with its provenance tag."""

    algebra: HopfAlgebra

    @property
    def tag(self):
        return self.algebra.tag

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @cached_property
    def fingerprint(self) -> IsoFingerprint:
        return fingerprint(self.algebra)

    def describe(self) -> str:
        if self.dim == 1:
            return "k"
        if self.tag.is_group_kind:
            return self.tag.describe()
        return f"{self.tag.kind}[{self.dim}]"

    def to_json(self, with_fingerprint: bool = False) -> dict:
        out = {"dim": self.dim, "tag": self.tag.to_json(), "label": self.describe()}
        if with_fingerprint:
            out["fingerprint"] = self.fingerprint.to_json()
        return out


def factor_equiv(f1: Factor, f2: Factor, strict: bool = False) -> str:
    """equivalent / distinct / undecided (the last only in strict mode)."""
    if f1.dim != f2.dim:
        return DISTINCT
    if f1.dim == 1:
        return EQUIVALENT
    t1, t2 = f1.tag, f2.tag
    if t1.is_group_kind and t2.is_group_kind:
        if t1.kind == t2.kind:
            return EQUIVALENT if group_isomorphic(t1.group, t2.group) else DISTINCT
        if not (t1.group.is_abelian and t2.group.is_abelian):
            return DISTINCT
    if same_structure(f1.algebra, f2.algebra):
        return EQUIVALENT
    if f1.fingerprint != f2.fingerprint:
        return DISTINCT
    return UNDECIDED if strict else EQUIVALENT


def factor_multiset_equivalent(first: Sequence[Factor], second: Sequence[Factor],
                               strict: bool = False) -> str:
    """Match two factor multisets one-to-one under factor_equiv."""
    if len(first) != len(second):
        return DISTINCT
    remaining = list(second)
    verdict = EQUIVALENT
    for f in first:
        best: tuple[int, str] | None = None
        for idx, g in enumerate(remaining):
            v = factor_equiv(f, g, strict)
            if v == EQUIVALENT:
                best = (idx, v)
                break
            if v == UNDECIDED and best is None:
                best = (idx, v)
        if best is None:
            return DISTINCT
        remaining.pop(best[0])
        if best[1] == UNDECIDED:
            verdict = UNDECIDED
    return verdict


def _labels(factors: Sequence[Factor]) -> list[str]:
    return sorted(f.describe() for f in factors)


# =============================================================================
# Composition series (recursive definition)
# =============================================================================


def is_simple(h: HopfAlgebra, provider: NormalLatticeProvider | None = None) -> bool:
    """dim > 1 and no normal Hopf subalgebra besides k and H."""
    provider = _resolve(h, provider)
    return h.dim > 1 and not provider.proper_nontrivial()


@dataclass
class CompositionNode:
    dim: int
    label: str
    simple: bool
    split_dim: int | None = None
    sub: CompositionNode | None = None
    quotient: CompositionNode | None = None

    def to_json(self) -> dict:
        out: dict = {"dim": self.dim, "label": self.label, "simple": self.simple}
        if self.split_dim is not None:
            out["split_dim"] = self.split_dim
            out["sub"] = self.sub.to_json()
            out["quotient"] = self.quotient.to_json()
        return out


@dataclass
class CompositionFactors:
    algebra: HopfAlgebra
    factors: list[Factor]
    tree: CompositionNode
    search_based: bool = False

    @property
    def length(self) -> int:
        return len(self.factors)

    def labels(self) -> list[str]:
        return _labels(self.factors)

    def to_json(self, with_fingerprints: bool = False) -> dict:
        return {
            "length": self.length,
            "factors": [f.to_json(with_fingerprints) for f in self.factors],
            "labels": self.labels(),
            "search_based": self.search_based,
            "tree": self.tree.to_json(),
        }


def composition_series(h: HopfAlgebra, provider: NormalLatticeProvider | None = None,
                       first_choice: int = 0) -> CompositionFactors:
    """Split off a proper nontrivial normal A and recurse into A and H/HA⁺.

    ``first_choice`` picks A among the provider's proper nontrivial normal
    Hopf subalgebras at the top level; deeper levels take the first one.
    """
    provider = _resolve(h, provider)
    factors: list[Factor] = []
    searched = [False]

    def walk(p: NormalLatticeProvider, choice: int) -> CompositionNode:
        a = p.algebra
        searched[0] = searched[0] or p.search_based
        if a.dim == 1:
            return CompositionNode(1, "k", simple=False)
        proper = p.proper_nontrivial()
        if not proper:
            f = Factor(a)
            factors.append(f)
            return CompositionNode(a.dim, f.describe(), simple=True)
        k = proper[choice]
        if not is_normal(k, RIGHT, p.generators()):
            msg = f"lattice provider {p.kind} returned a non-normal subalgebra of dim {k.dim}"
            raise InternalError(msg)
        sub = walk(p.for_subalgebra(k), 0)
        _, qp = p.for_quotient(k)
        quo = walk(qp, 0)
        return CompositionNode(a.dim, Factor(a).describe(), False, k.dim, sub, quo)

    top = provider.proper_nontrivial()
    if top and not 0 <= first_choice < len(top):
        msg = f"first choice {first_choice} out of range 0..{len(top) - 1}"
        raise InputError(msg)
    tree = walk(provider, first_choice)
    logger.debug("composition series of %s: %s", h.describe(), _labels(factors))
    return CompositionFactors(provider.algebra, factors, tree, searched[0])


def length(h: HopfAlgebra, provider: NormalLatticeProvider | None = None) -> int:
    return composition_series(h, provider).length


@dataclass
class JordanHolderReport:
    branches: list[dict]
    verdict: str

    @property
    def verified(self) -> bool:
        return self.verdict == EQUIVALENT

    def to_json(self) -> dict:
        return {"verified": self.verified, "verdict": self.verdict, "branches": self.branches}


def jordan_holder_verify(h: HopfAlgebra, provider: NormalLatticeProvider | None = None,
                         strict: bool = False) -> JordanHolderReport:
    """Composition factors along every first choice agree as multisets."""
    provider = _resolve(h, provider)
    choices = provider.proper_nontrivial()[:MAX_SERIES_ENUMERATION]
    results = [composition_series(h, provider, i) for i in range(len(choices))]
    if not results:
        results = [composition_series(h, provider)]
    verdict = EQUIVALENT
    for other in results[1:]:
        v = factor_multiset_equivalent(results[0].factors, other.factors, strict)
        if v == DISTINCT:
            verdict = DISTINCT
            break
        if v == UNDECIDED:
            verdict = UNDECIDED
    branches = [
        {
            "first_choice_dim": choices[i].dim if choices else None,
            "length": r.length,
            "factors": r.labels(),
        }
        for i, r in enumerate(results)
    ]
    logger.info("Jordan-Hölder over %d branches: %s", len(results), verdict)
    return JordanHolderReport(branches, verdict)


def additivity_check(seq, providers: Sequence[NormalLatticeProvider | None] = (None,) * 3) -> bool:
    """length(H) = length(H′) + length(H″) for k → H′ → H → H″ → k."""
    sub_p, mid_p, quo_p = providers
    lengths = (
        length(seq.sub, sub_p),
        length(seq.middle, mid_p),
        length(seq.quotient, quo_p),
    )
    logger.info("additivity: %d = %d + %d", lengths[1], lengths[0], lengths[2])
    return lengths[1] == lengths[0] + lengths[2]


def dual_factors_check(h: HopfAlgebra, provider: NormalLatticeProvider | None = None,
                       strict: bool = False) -> bool:
    """The factors of H* are the duals of the factors of H."""
    provider = _resolve(h, provider)
    mine = composition_series(h, provider).factors
    theirs = composition_series(dual(provider.algebra), dual_provider(provider)).factors
    duals = [Factor(dual(f.algebra)) for f in mine]
    return factor_multiset_equivalent(theirs, duals, strict) == EQUIVALENT


def semisimple_factors_check(h: HopfAlgebra,
                             provider: NormalLatticeProvider | None = None) -> bool:
    """H is (co)semisimple iff every composition factor is."""
    factors = composition_series(h, provider).factors
    ss = is_semisimple(h) == all(is_semisimple(f.algebra) for f in factors)
    css = is_cosemisimple(h) == all(is_cosemisimple(f.algebra) for f in factors)
    return ss and css


def simple_iff_dual_simple(h: HopfAlgebra,
                           provider: NormalLatticeProvider | None = None) -> bool:
    provider = _resolve(h, provider)
    d = dual_provider(provider)
    return is_simple(h, provider) == is_simple(d.algebra, d)


# =============================================================================
# Subnormal series
# =============================================================================


@dataclass(frozen=True, eq=False)
class SubnormalSeries:
    """Lower: H = H_0 ⊇ H_1 ⊇ … ⊇ H_n = k. Upper: surjections H = H_(0) → … → H_(n) = k.

    ``factor_algebras`` holds provider-tagged factors when the series was
    built from a lattice provider; otherwise factors are computed directly.
    """

    direction: str
    parent: HopfAlgebra
    chain: tuple[HopfSubalgebra, ...] = ()
    steps: tuple[QuotientHopf, ...] = ()
    factor_algebras: tuple[HopfAlgebra, ...] | None = field(default=None, repr=False)

    def __post_init__(self):
        if self.direction not in (LOWER, UPPER):
            msg = f"direction must be lower or upper, got {self.direction!r}"
            raise InputError(msg)
        if self.direction == LOWER:
            if not self.chain:
                msg = "a lower series needs at least one term"
                raise InputError(msg)
            if any(k.parent is not self.parent for k in self.chain):
                msg = "every term of a lower series must live in the same Hopf algebra"
                raise InputError(msg)

    @property
    def length(self) -> int:
        return len(self.chain) - 1 if self.direction == LOWER else len(self.steps)

    @cached_property
    def factors(self) -> tuple[HopfAlgebra, ...]:
        if self.factor_algebras is not None:
            return self.factor_algebras
        return tuple(factors_of(self))

    def dims(self) -> list[int]:
        if self.direction == LOWER:
            return [k.dim for k in self.chain]
        return [self.parent.dim, *(s.quotient.dim for s in self.steps)]

    def to_json(self) -> dict:
        factors = [Factor(f) for f in self.factors]
        return {
            "direction": self.direction,
            "length": self.length,
            "dims": self.dims(),
            "factors": [f.to_json() for f in factors],
        }


def _step_factor(upper: HopfSubalgebra, lower: HopfSubalgebra) -> HopfAlgebra:
    inner = HopfSubalgebra(upper.algebra, upper.relative(lower.space))
    return quotient(upper.algebra, inner).quotient


def factors_of(series: SubnormalSeries) -> list[HopfAlgebra]:
    """H_i/H_iH_{i+1}⁺ (lower) or ^{co H_(i+1)}H_(i) (upper)."""
    if series.direction == LOWER:
        c = series.chain
        return [_step_factor(c[i], c[i + 1]) for i in range(len(c) - 1)]
    out = []
    for step in series.steps:
        space = coinvariants(step.projection, LEFT)
        out.append(restrict(HopfSubalgebra(step.parent, space)))
    return out


@dataclass
class SeriesReport:
    direction: str
    endpoints: bool
    steps: list[bool]
    factor_dims: list[int]
    dimension_product: bool

    @property
    def failed_step(self) -> int | None:
        """1-based index i of the first step whose term i is not normal in term i-1."""
        return next((i + 1 for i, ok in enumerate(self.steps) if not ok), None)

    @property
    def verified(self) -> bool:
        return self.endpoints and all(self.steps) and self.dimension_product

    def to_json(self) -> dict:
        return {
            "direction": self.direction,
            "verified": self.verified,
            "endpoints": self.endpoints,
            "steps": self.steps,
            "failed_step": self.failed_step,
            "factor_dims": self.factor_dims,
            "dimension_product": self.dimension_product,
        }


def verify_subnormal(series: SubnormalSeries) -> SeriesReport:
    """Per-step normality, factor construction and the dimension product."""
    h = series.parent
    steps: list[bool] = []
    if series.direction == LOWER:
        c = series.chain
        endpoints = c[0].dim == h.dim and c[-1].dim == 1
        for i in range(1, len(c)):
            ok = c[i].space.is_subspace_of(c[i - 1].space)
            if ok:
                inner = HopfSubalgebra(c[i - 1].algebra, c[i - 1].relative(c[i].space))
                ok = is_normal(inner, BOTH)
            steps.append(ok)
    else:
        st = series.steps
        endpoints = st[-1].quotient.dim == 1 if st else h.dim == 1
        prev = h
        for step in st:
            ok = same_structure(step.parent, prev)
            if ok:
                k = HopfSubalgebra(step.parent, coinvariants(step.projection, LEFT))
                ok = is_normal(k, BOTH)
            steps.append(ok)
            prev = step.quotient
    factor_dims: list[int] = []
    product_ok = False
    if all(steps):
        factor_dims = [f.dim for f in factors_of(series)]
        total = 1
        for d in factor_dims:
            total *= d
        product_ok = total == h.dim
    report = SeriesReport(series.direction, endpoints, steps, factor_dims, product_ok)
    logger.debug("subnormal series check: %s", report.to_json())
    return report


# -- walking a lower series through providers ----------------------------------


def _down(lifts: Sequence[HopfSubalgebra], vec: SparseVector) -> SparseVector:
    for k in lifts:
        vec = k.coordinates(vec)
    return vec


def _levels(series: SubnormalSeries,
            provider: NormalLatticeProvider) -> Iterator[tuple[NormalLatticeProvider,
                                                               HopfSubalgebra]]:
    """(provider of H_i, H_{i+1} in that provider's coordinates) for each step."""
    cur = provider
    lifts: list[HopfSubalgebra] = []
    for nxt in series.chain[1:]:
        a = cur.algebra
        k = HopfSubalgebra(a, canonicalize([_down(lifts, r) for r in nxt.rows], a.dim, a.field))
        yield cur, k
        lifts.append(k)
        cur = cur.for_subalgebra(k)


def is_lower_composition_series(series: SubnormalSeries,
                                provider: NormalLatticeProvider | None = None) -> bool:
    """Strictly decreasing and each term maximal normal in the previous one."""
    if series.direction != LOWER:
        return False
    provider = _resolve(series.parent, provider)
    c = series.chain
    if c[0].dim != series.parent.dim or c[-1].dim != 1:
        return False
    for i in range(1, len(c)):
        if c[i].dim >= c[i - 1].dim or not c[i].space.is_subspace_of(c[i - 1].space):
            return False
    for cur, k in _levels(series, provider):
        if not any(m.space == k.space for m in cur.maximal_normal()):
            logger.debug("term of dim %d is not maximal normal in dim %d", k.dim, cur.algebra.dim)
            return False
    return True


def _lower_descent(provider: NormalLatticeProvider, path: Sequence[int] = (),
                   with_factors: bool = True) -> SubnormalSeries:
    h = provider.algebra
    chain = [HopfSubalgebra(h, full_space(h.dim, h.field))]
    lifts: list[HopfSubalgebra] = []
    factors: list[HopfAlgebra] = []
    cur = provider
    depth = 0
    while cur.algebra.dim > 1:
        options = cur.maximal_normal()
        k = options[path[depth] if depth < len(path) else 0]
        vecs = list(k.rows)
        for lift in reversed(lifts):
            vecs = [lift.embed(v) for v in vecs]
        chain.append(HopfSubalgebra(h, canonicalize(vecs, h.dim, h.field)))
        if with_factors:
            factors.append(cur.for_quotient(k)[1].algebra)
        lifts.append(k)
        cur = cur.for_subalgebra(k)
        depth += 1
    return SubnormalSeries(LOWER, h, tuple(chain),
                           factor_algebras=tuple(factors) if with_factors else None)


def lower_composition_series(h: HopfAlgebra, provider: NormalLatticeProvider | None = None,
                             path: Sequence[int] = ()) -> SubnormalSeries:
    """Descend through maximal normal Hopf subalgebras (index ``path[i]`` at depth i)."""
    return _lower_descent(_resolve(h, provider), path)


def lower_composition_series_all(h: HopfAlgebra,
                                 provider: NormalLatticeProvider | None = None,
                                 limit: int = MAX_SERIES_ENUMERATION) -> list[SubnormalSeries]:
    """Every lower composition series reachable through the provider, up to ``limit``."""
    provider = _resolve(h, provider)
    paths: list[tuple[int, ...]] = []

    def dfs(p: NormalLatticeProvider, path: tuple[int, ...]) -> None:
        if len(paths) >= limit:
            return
        if p.algebra.dim == 1:
            paths.append(path)
            return
        for i, k in enumerate(p.maximal_normal()):
            dfs(p.for_subalgebra(k), (*path, i))

    dfs(provider, ())
    logger.debug("enumerated %d lower composition series", len(paths))
    return [_lower_descent(provider, path) for path in paths]


def lower_length(h: HopfAlgebra, provider: NormalLatticeProvider | None = None) -> int:
    return _lower_descent(_resolve(h, provider), with_factors=False).length


def upper_composition_series(h: HopfAlgebra,
                             provider: NormalLatticeProvider | None = None) -> SubnormalSeries:
    """Quotient by a minimal normal Hopf subalgebra until k is reached."""
    provider = _resolve(h, provider)
    steps: list[QuotientHopf] = []
    factors: list[HopfAlgebra] = []
    cur = provider
    while cur.algebra.dim > 1:
        k = cur.minimal_normal()[0]
        factors.append(cur.for_subalgebra(k).algebra)
        q, cur = cur.for_quotient(k)
        steps.append(q)
    return SubnormalSeries(UPPER, provider.algebra, steps=tuple(steps),
                           factor_algebras=tuple(factors))


def upper_length(h: HopfAlgebra, provider: NormalLatticeProvider | None = None) -> int:
    """Lower length of H*."""
    provider = _resolve(h, provider)
    return lower_length(dual(provider.algebra), dual_provider(provider))


def _tagged_lower_factors(series: SubnormalSeries,
                          provider: NormalLatticeProvider) -> list[tuple[Factor,
                                                                         NormalLatticeProvider]]:
    out = []
    for cur, k in _levels(series, provider):
        _, qp = cur.for_quotient(k)
        out.append((Factor(qp.algebra), qp))
    return out


@dataclass
class LowerJordanHolderReport:
    series: list[dict]
    verdict: str

    @property
    def verified(self) -> bool:
        return self.verdict == EQUIVALENT

    def to_json(self) -> dict:
        return {"verified": self.verified, "verdict": self.verdict, "series": self.series}


def jh_lower_verify(h: HopfAlgebra, provider: NormalLatticeProvider | None = None,
                    strict: bool = False) -> LowerJordanHolderReport:
    """All lower composition series have equivalent factor multisets."""
    provider = _resolve(h, provider)
    all_series = lower_composition_series_all(h, provider)
    factor_lists = [[Factor(f) for f in s.factors] for s in all_series]
    verdict = EQUIVALENT
    for other in factor_lists[1:]:
        v = factor_multiset_equivalent(factor_lists[0], other, strict)
        if v == DISTINCT:
            verdict = DISTINCT
            break
        if v == UNDECIDED:
            verdict = UNDECIDED
    summary = [
        {"dims": s.dims(), "factors": _labels(fl)}
        for s, fl in zip(all_series, factor_lists, strict=True)
    ]
    return LowerJordanHolderReport(summary, verdict)


def simple_factors_imply_composition(series: SubnormalSeries,
                                     provider: NormalLatticeProvider | None = None) -> str:
    """holds / not-applicable (a factor is not simple) / violation."""
    provider = _resolve(series.parent, provider)
    tagged = _tagged_lower_factors(series, provider)
    if not all(is_simple(f.algebra, p) for f, p in tagged):
        return NOT_APPLICABLE
    comp = composition_series(series.parent, provider).factors
    verdict = factor_multiset_equivalent([f for f, _ in tagged], comp)
    return VIOLATION if verdict == DISTINCT else HOLDS


# =============================================================================
# Schreier refinement
# =============================================================================


@dataclass
class SchreierRefinement:
    first: SubnormalSeries
    second: SubnormalSeries
    pairing: list[tuple[int, int]]
    certificates: list
    verified: bool

    def nontrivial_factor_dims(self) -> list[int]:
        return sorted(f.dim for f in self.first.factors if f.dim > 1)

    def to_json(self) -> dict:
        return {
            "verified": self.verified,
            "lengths": [self.first.length, self.second.length],
            "first_dims": self.first.dims(),
            "second_dims": self.second.dims(),
            "pairing": [list(p) for p in self.pairing],
            "factor_dims": self.nontrivial_factor_dims(),
            "certificates": [c.to_json() for c in self.certificates],
        }


def _refine(outer: Sequence[HopfSubalgebra],
            inner: Sequence[HopfSubalgebra]) -> list[HopfSubalgebra]:
    """X_{i,j} = X_{i+1}(X_i ∩ Y_j), keeping repeated terms."""
    out = [outer[0]]
    for i in range(len(outer) - 1):
        for j in range(1, len(inner)):
            meet = intersection(outer[i], inner[j])
            out.append(product_subalgebras(meet, outer[i + 1]))
    return out


def schreier_refine(s1: SubnormalSeries, s2: SubnormalSeries) -> SchreierRefinement:
    """Equivalent refinements of two lower series, matched step (i, j) ↔ (j, i)."""
    from hopfkit.iso_theorems import butterfly

    if s1.direction != LOWER or s2.direction != LOWER:
        msg = "Schreier refinement needs two lower series"
        raise DomainError(msg)
    if s1.parent is not s2.parent:
        msg = "the two series live in different Hopf algebras"
        raise InputError(msg)
    for s in (s1, s2):
        if not verify_subnormal(s).verified:
            msg = "input series is not a valid lower subnormal series"
            raise DomainError(msg)
    a, b = s1.chain, s2.chain
    r, s = len(a) - 1, len(b) - 1
    first = SubnormalSeries(LOWER, s1.parent, tuple(_refine(a, b)))
    second = SubnormalSeries(LOWER, s1.parent, tuple(_refine(b, a)))
    pairing = []
    certificates = []
    ok = verify_subnormal(first).verified and verify_subnormal(second).verified
    for i in range(r):
        for j in range(s):
            pairing.append((i * s + j, j * r + i))
            report = butterfly(a[i], a[i + 1], b[j], b[j + 1])
            certificates.append(report)
            ok = ok and report.verified
    logger.info("Schreier refinement of lengths %d and %d: verified=%s", r, s, ok)
    return SchreierRefinement(first, second, pairing, certificates, ok)
