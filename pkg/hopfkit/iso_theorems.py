"""Isomorphism theorems as certificate builders.

Each theorem constructs the induced map explicitly and verifies it as a
bijective Hopf morphism. A map that fails to be well defined raises
``TheoremViolation``: in finite dimension the hypotheses hold automatically,
so this can only come from inconsistent input data.
"""

from __future__ import annotations

import logging
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field

from hopfkit.errors import DomainError, TheoremViolation
from hopfkit.exact_linear import SparseVector, intersect
from hopfkit.hopf_core import (
    HopfAlgebra,
    HopfMorphism,
    compose,
    inverse_morphism,
    verify_morphism,
)
from hopfkit.lattices import NormalLatticeProvider
from hopfkit.series import is_simple
from hopfkit.subobjects import (
    BOTH,
    LEFT,
    ExactnessReport,
    HopfSubalgebra,
    QuotientHopf,
    RightCoidealSubalgebra,
    _Subobject,
    coinvariants,
    hopf_subalgebra_failure,
    image_subalgebra,
    intersection,
    is_normal,
    is_right_normal,
    normalizes,
    product_space,
    product_subalgebras,
    quotient,
    verify_exact_sequence,
)

logger = logging.getLogger(__name__)

COROLLARY_VERIFIED = "corollary-verified"
NOT_APPLICABLE = "not-applicable"
VIOLATION = "violation"


@dataclass
class IsoCertificate:
    theorem: str
    lhs: HopfAlgebra
    rhs: HopfAlgebra
    iso: HopfMorphism
    verified: bool
    checks: dict[str, bool] = field(default_factory=dict)
    witness: list | None = None

    def to_json(self) -> dict:
        out = {
            "theorem": self.theorem,
            "verified": self.verified,
            "dims": {"lhs": self.lhs.dim, "rhs": self.rhs.dim},
            "checks": dict(self.checks),
        }
        if self.witness is not None:
            out["witness"] = self.witness
        return out


def _certify(theorem: str, iso: HopfMorphism, **checks: bool) -> IsoCertificate:
    report = verify_morphism(iso)
    all_checks = {"morphism": report.passed, "bijective": iso.bijective, **checks}
    verified = all(all_checks.values())
    logger.info("%s certificate: dims %d -> %d, verified=%s",
                theorem, iso.source.dim, iso.target.dim, verified)
    return IsoCertificate(theorem, iso.source, iso.target, iso, verified, all_checks)


def _induced(q: QuotientHopf, target: HopfAlgebra,
             f: Callable[[SparseVector], SparseVector], what: str) -> HopfMorphism:
    """The map H/I → target induced by f, checked to vanish on I."""
    for r in q.kernel_ideal.rows:
        if f(r):
            msg = f"{what} does not vanish on the kernel ideal; the input data is invalid"
            raise TheoremViolation(msg)
    cols = tuple(f(q.lift({b: 1})) for b in range(q.quotient.dim))
    return HopfMorphism(q.quotient, target, cols)


def _sub_in(outer: _Subobject, inner: _Subobject, cls=HopfSubalgebra):
    """``inner`` re-expressed inside the standalone algebra of ``outer``."""
    return cls(outer.algebra, outer.relative(inner.space))


# =============================================================================
# First isomorphism theorem and factorization
# =============================================================================


def first_isomorphism(pi: HopfMorphism) -> IsoCertificate:
    """H/HK⁺ ≅ H̄ for a surjective Hopf map π, K = ^{coπ}H."""
    if not verify_morphism(pi).passed or not pi.surjective:
        msg = "π must be a surjective Hopf algebra map"
        raise DomainError(msg)
    h = pi.source
    k = RightCoidealSubalgebra(h, coinvariants(pi, LEFT))
    q = quotient(h, k, check=False)
    iso = _induced(q, pi.target, pi, "π")
    return _certify("first", iso)


@dataclass
class Factorization:
    """π = π̄ ∘ π_K, or a witness of K outside ^{coπ}H."""

    quotient: QuotientHopf | None
    morphism: HopfMorphism | None
    witness: SparseVector | None = None
    verified: bool = False

    @property
    def exists(self) -> bool:
        return self.morphism is not None

    def to_json(self) -> dict:
        out: dict = {"exists": self.exists, "verified": self.verified}
        if self.witness is not None:
            out["witness"] = {str(k): str(v) for k, v in sorted(self.witness.items())}
        return out


def factor_through(k: _Subobject, pi: HopfMorphism) -> Factorization:
    """The unique π̄: H/HK⁺ → H̄ with π = π̄ π_K, when K ⊆ ^{coπ}H."""
    h = pi.source
    if k.parent is not h:
        msg = "K must live in the source of π"
        raise DomainError(msg)
    if not is_right_normal(k):
        msg = "K must be right normal"
        raise DomainError(msg)
    coinv = coinvariants(pi, LEFT)
    outside = next((r for r in k.rows if not coinv.contains(r)), None)
    if outside is not None:
        logger.info("K is not contained in the coinvariants of π; no factorization")
        return Factorization(None, None, dict(outside))
    q = quotient(h, k, check=False)
    pi_bar = _induced(q, pi.target, pi, "π")
    return Factorization(q, pi_bar, None, verify_morphism(pi_bar).passed)


# =============================================================================
# Second isomorphism theorem
# =============================================================================


def dim_formula_check(a: HopfSubalgebra, b: HopfSubalgebra) -> bool:
    """dim AB · dim(A∩B) = dim A · dim B."""
    if not normalizes(a, b):
        msg = "A does not normalize B"
        raise DomainError(msg)
    ab = product_space(a, b)
    meet = intersect(a.space, b.space)
    return ab.dim * meet.dim == a.dim * b.dim


def second_isomorphism(a: HopfSubalgebra, b: HopfSubalgebra) -> IsoCertificate:
    """A/A(A∩B)⁺ ≅ AB/AB⁺ induced by A ↪ AB → AB/AB⁺."""
    ab = product_subalgebras(a, b)
    meet = intersection(a, b)
    a_alg, ab_alg = a.algebra, ab.algebra
    inner_a = _sub_in(a, meet)
    inner_ab = _sub_in(ab, b)
    if not is_normal(inner_a, BOTH) or not is_normal(inner_ab, BOTH):
        msg = "A∩B is not normal in A or B is not normal in AB although A normalizes B"
        raise TheoremViolation(msg)
    q_a = quotient(a_alg, inner_a)
    q_ab = quotient(ab_alg, inner_ab)

    def to_ab_quotient(vec: SparseVector) -> SparseVector:
        return q_ab.projection(ab.coordinates(a.embed(vec)))

    iso = _induced(q_a, q_ab.quotient, to_ab_quotient, "A → AB/AB⁺")
    pi = HopfMorphism(a_alg, q_ab.quotient, tuple(to_ab_quotient(a_alg.e(i))
                                                 for i in range(a_alg.dim)))
    exact = verify_exact_sequence(inner_a.inclusion, pi)
    return _certify(
        "second",
        iso,
        product_is_hopf_subalgebra=hopf_subalgebra_failure(ab.parent, ab.space) is None,
        exact_sequence=exact.exact,
        dimension_formula=ab.dim * meet.dim == a.dim * b.dim,
    )


# =============================================================================
# Third isomorphism theorem
# =============================================================================


@dataclass
class ThirdIsomorphism:
    part_i: IsoCertificate
    part_ii: IsoCertificate
    exactness: ExactnessReport

    @property
    def verified(self) -> bool:
        return self.part_i.verified and self.part_ii.verified and self.exactness.exact

    def to_json(self) -> dict:
        return {
            "theorem": "third",
            "verified": self.verified,
            "part_i": self.part_i.to_json(),
            "part_ii": self.part_ii.to_json(),
            "exact_sequence": self.exactness.to_json(),
        }


def third_isomorphism(a: HopfSubalgebra, b: _Subobject) -> ThirdIsomorphism:
    """(H/HB⁺)/(H/HB⁺)π_B(A)⁺ ≅ H/HA⁺ and A/AB⁺ ≅ π_B(A)."""
    h = a.parent
    if b.parent is not h:
        msg = "A and B must live in the same Hopf algebra"
        raise DomainError(msg)
    if not b.space.is_subspace_of(a.space):
        msg = "B is not contained in A"
        raise DomainError(msg)
    if not is_normal(a, BOTH):
        msg = "A is not a normal Hopf subalgebra"
        raise DomainError(msg)
    if not is_right_normal(b):
        msg = "B is not right normal"
        raise DomainError(msg)
    q_b = quotient(h, b, check=False)
    q_a = quotient(h, a, check=False)
    pi_a_bar = _induced(q_b, q_a.quotient, q_a.projection, "π_A")

    image = image_subalgebra(q_b.projection, a)
    q_img = quotient(q_b.quotient, image)
    part_i = _certify("third-i", _induced(q_img, q_a.quotient, pi_a_bar, "π̄_A"))

    b_in_a = _sub_in(a, b, RightCoidealSubalgebra)
    q_ab = quotient(a.algebra, b_in_a)

    def into_image(vec: SparseVector) -> SparseVector:
        return image.coordinates(q_b.projection(a.embed(vec)))

    part_ii = _certify("third-ii", _induced(q_ab, image.algebra, into_image, "π_B on A"))

    def into_middle(vec: SparseVector) -> SparseVector:
        return q_b.projection(a.embed(vec))

    i = _induced(q_ab, q_b.quotient, into_middle, "A/AB⁺ → H/HB⁺")
    exactness = verify_exact_sequence(i, pi_a_bar)
    return ThirdIsomorphism(part_i, part_ii, exactness)


# =============================================================================
# Maximality from a simple quotient
# =============================================================================


def maximality_from_simple_quotient(b: HopfSubalgebra, lattice: Sequence[HopfSubalgebra],
                                    provider: NormalLatticeProvider | None = None) -> str:
    """If H/HB⁺ is simple, every normal A ⊇ B in the lattice is B or H."""
    h = b.parent
    if provider is not None:
        q, q_provider = provider.for_quotient(provider.own(b))
        simple = is_simple(q.quotient, q_provider)
    else:
        simple = is_simple(quotient(h, b).quotient)
    if not simple:
        return NOT_APPLICABLE
    for a in lattice:
        if b.space.is_subspace_of(a.space) and a.dim not in (b.dim, h.dim):
            logger.warning("normal Hopf subalgebra of dim %d lies strictly between B and H", a.dim)
            return VIOLATION
    return COROLLARY_VERIFIED


# =============================================================================
# Butterfly lemma
# =============================================================================


@dataclass
class ButterflyReport:
    part_i: bool
    part_ii: bool
    part_iii: bool
    certificate: IsoCertificate | None

    @property
    def part_iv(self) -> bool:
        return self.certificate is not None and self.certificate.verified

    @property
    def verified(self) -> bool:
        return self.part_i and self.part_ii and self.part_iii and self.part_iv

    def to_json(self) -> dict:
        return {
            "theorem": "butterfly",
            "verified": self.verified,
            "parts": {
                "i": self.part_i,
                "ii": self.part_ii,
                "iii": self.part_iii,
                "iv": self.part_iv,
            },
            "iso": self.certificate.to_json() if self.certificate else None,
        }


def _normal_inside(outer: HopfSubalgebra, inner: HopfSubalgebra) -> bool:
    if not inner.space.is_subspace_of(outer.space):
        return False
    return is_normal(_sub_in(outer, inner), BOTH)


def butterfly(a: HopfSubalgebra, a1: HopfSubalgebra, b: HopfSubalgebra,
              b1: HopfSubalgebra) -> ButterflyReport:
    """Zassenhaus for A' ◁ A and B' ◁ B; ``a1`` is A' and ``b1`` is B'."""
    if not _normal_inside(a, a1):
        msg = "A' is not a normal Hopf subalgebra of A"
        raise DomainError(msg)
    if not _normal_inside(b, b1):
        msg = "B' is not a normal Hopf subalgebra of B"
        raise DomainError(msg)
    a_b = intersection(a, b)
    a_b1 = intersection(a, b1)
    a1_b = intersection(a1, b)
    x = product_subalgebras(a_b, a1)
    x1 = product_subalgebras(a_b1, a1)
    y = product_subalgebras(a_b, b1)
    y1 = product_subalgebras(a1_b, b1)
    part_i = _normal_inside(x, x1)
    part_ii = _normal_inside(y, y1)

    middle = product_space(a1_b, a_b1)
    left = intersect(x1.space, a_b.space)
    right = intersect(y1.space, a_b.space)
    part_iii = left == middle == right

    certificate = None
    if part_i and part_ii and part_iii:
        to_x = second_isomorphism(a_b, x1)
        to_y = second_isomorphism(a_b, y1)
        if not (to_x.verified and to_y.verified):
            msg = "second isomorphism certificates inside the butterfly failed"
            raise TheoremViolation(msg)
        iso = compose(to_y.iso, inverse_morphism(to_x.iso))
        certificate = _certify("butterfly", iso)
    return ButterflyReport(part_i, part_ii, part_iii, certificate)
