"""Unit tests for hopfkit.subobjects.

Tests cover:
- Hopf subalgebra checks and relative coordinates
- Hopf and normal closures, left and two-sided ideals
- Normality, products and intersections
- Hopf ideals, quotients and coinvariants
- Short exact sequence verification
"""

import pytest

from hopfkit.constructions import inclusion_morphism, sign_morphism, subgroup_space
from hopfkit.errors import DomainError, InputError
from hopfkit.exact_linear import canonicalize
from hopfkit.hopf_core import grouplikes, identity_morphism, verify_axioms, verify_morphism
from hopfkit.subobjects import (
    LEFT,
    RIGHT,
    HopfSubalgebra,
    adjoint_action,
    augmentation,
    coinvariants,
    hopf_closure,
    hopf_ideal,
    hopf_ideal_failure,
    hopf_subalgebra,
    hopf_subalgebra_failure,
    image_subalgebra,
    intersection,
    is_normal,
    is_normal_morphism,
    is_right_normal,
    left_ideal,
    nichols_zoeller_check,
    normal_closure,
    normalizes,
    product_subalgebras,
    quotient,
    quotient_by_ideal,
    trivial,
    two_sided_ideal,
    verify_exact_sequence,
    whole,
)


def span(h, group, *labels):
    """k⟨labels⟩ as a verified Hopf subalgebra of h = kG."""
    s = group.closure([group.index_of(label) for label in labels])
    return hopf_subalgebra(h, subgroup_space(h, s))


# =============================================================================
# SUBALGEBRA TESTS
# =============================================================================


class TestHopfSubalgebras:
    """Test recognition of Hopf subalgebras."""

    def test_subgroup_span(self, s4, k_s4):
        """Verify kA4 is a Hopf subalgebra of kS4 whose standalone algebra passes the axioms."""
        k = span(k_s4, s4, "(1 2 3)", "(1 2)(3 4)")
        assert k.dim == 12
        assert verify_axioms(k.algebra).passed
        assert verify_morphism(k.inclusion).passed

    def test_not_closed(self, s3, k_s3):
        """Verify span{1, (1 2 3)} is refused."""
        space = canonicalize([{0: 1}, {s3.index_of("(1 2 3)"): 1}], 6)
        assert hopf_subalgebra_failure(k_s3, space) == "not closed under multiplication"
        with pytest.raises(DomainError):
            hopf_subalgebra(k_s3, space)

    def test_missing_unit(self, sweedler):
        """Verify a subspace without 1 is refused."""
        assert hopf_subalgebra_failure(sweedler, canonicalize([{1: 1}], 4)) == "does not contain 1"

    def test_not_subcoalgebra(self, sweedler):
        """Verify span{1, x} is not a subcoalgebra since Δx involves g."""
        space = canonicalize([{0: 1}, {2: 1}], 4)
        assert hopf_subalgebra_failure(sweedler, space) == "not a subcoalgebra"

    def test_dimension_mismatch(self, sweedler):
        """Verify a subspace of another ambient dimension is rejected."""
        with pytest.raises(InputError):
            HopfSubalgebra(sweedler, canonicalize([{0: 1}], 3))

    def test_whole_and_trivial(self, sweedler):
        """Verify the extreme subobjects."""
        assert whole(sweedler).dim == 4
        assert trivial(sweedler).dim == 1

    def test_equality_by_space(self, s4, k_s4):
        """Verify subobjects compare by parent and canonical space."""
        a = span(k_s4, s4, "(1 2)(3 4)", "(1 3)(2 4)")
        b = span(k_s4, s4, "(1 4)(2 3)", "(1 2)(3 4)")
        assert a == b
        assert len({a, b}) == 1

    def test_relative(self, s4, k_s4):
        """Verify a Hopf subalgebra re-expressed inside a bigger one."""
        v4 = span(k_s4, s4, "(1 2)(3 4)", "(1 3)(2 4)")
        c2 = span(k_s4, s4, "(1 2)(3 4)")
        rel = v4.relative(c2.space)
        assert rel.dim == 2
        assert rel.parent_dim == 4

    def test_relative_not_contained(self, s4, k_s4):
        """Verify relative coordinates require containment."""
        v4 = span(k_s4, s4, "(1 2)(3 4)", "(1 3)(2 4)")
        c2 = span(k_s4, s4, "(1 2)")
        with pytest.raises(DomainError):
            v4.relative(c2.space)


# =============================================================================
# CLOSURE TESTS
# =============================================================================


class TestClosures:
    """Test Hopf closures, normal closures and ideals."""

    def test_hopf_closure(self, s4, k_s4):
        """Verify the Hopf closure of a 4-cycle is kC4."""
        k = hopf_closure(k_s4, [k_s4.e(s4.index_of("(1 2 3 4)"))])
        assert k.dim == 4

    def test_hopf_closure_sweedler(self, sweedler):
        """Verify the Hopf closure of g is k⟨g⟩ and of x is everything."""
        assert hopf_closure(sweedler, [sweedler.e(1)]).dim == 2
        assert hopf_closure(sweedler, [sweedler.e(2)]).dim == 4

    def test_normal_closure(self, s4, k_s4):
        """Verify normal closures of a double transposition and a transposition."""
        assert normal_closure(k_s4, [k_s4.e(s4.index_of("(1 2)(3 4)"))]).dim == 4
        assert normal_closure(k_s4, [k_s4.e(s4.index_of("(1 2)"))]).dim == 24

    def test_ideals_of_sweedler(self, sweedler):
        """Verify H·x and H·x·H are span{x, gx}."""
        x = sweedler.e(2)
        expected = canonicalize([{2: 1}, {3: 1}], 4)
        assert left_ideal(sweedler, [x]) == expected
        assert two_sided_ideal(sweedler, [x]) == expected


# =============================================================================
# NORMALITY TESTS
# =============================================================================


class TestNormality:
    """Test adjoint actions, normality and products."""

    def test_normal_subgroup_spans(self, s4, k_s4):
        """Verify kA4 is normal in kS4 and k⟨(1 2)⟩ is not."""
        assert is_normal(span(k_s4, s4, "(1 2 3)", "(1 2)(3 4)"))
        assert not is_normal(span(k_s4, s4, "(1 2)"))

    def test_one_sided(self, s4, k_s4):
        """Verify one-sided checks agree for Hopf subalgebras."""
        k = span(k_s4, s4, "(1 2)(3 4)", "(1 3)(2 4)")
        assert is_normal(k, LEFT) and is_normal(k, RIGHT)

    def test_sweedler_grouplikes_not_normal(self, sweedler):
        """Verify k⟨g⟩ is not normal in Sweedler's algebra."""
        assert not is_normal(hopf_closure(sweedler, [sweedler.e(1)]))

    def test_adjoint_action_on_group_algebra(self, s3, k_s3):
        """Verify ad(g)(a) = g a g⁻¹ for grouplike g."""
        g, a = s3.index_of("(1 2)"), s3.index_of("(1 2 3)")
        assert adjoint_action(k_s3, LEFT, k_s3.e(g), k_s3.e(a)) == {s3.conj(g, a): 1}

    def test_bad_side(self, k_s3):
        """Verify unknown sides are rejected."""
        with pytest.raises(InputError):
            adjoint_action(k_s3, "up", k_s3.one, k_s3.one)
        with pytest.raises(InputError):
            is_normal(whole(k_s3), "up")

    def test_product(self, s4, k_s4):
        """Verify k⟨(1 2)⟩ normalizes kV4 and their product is kD8."""
        v4 = span(k_s4, s4, "(1 2)(3 4)", "(1 3)(2 4)")
        c2 = span(k_s4, s4, "(1 2)")
        assert normalizes(c2, v4)
        assert product_subalgebras(c2, v4).dim == 8

    def test_product_needs_normalizing(self, s4, k_s4):
        """Verify AB is refused when A does not normalize B."""
        v4 = span(k_s4, s4, "(1 2)(3 4)", "(1 3)(2 4)")
        c2 = span(k_s4, s4, "(1 2)")
        with pytest.raises(DomainError):
            product_subalgebras(v4, c2)

    def test_product_different_parents(self, sweedler, k_s3):
        """Verify subobjects of different algebras cannot be combined."""
        with pytest.raises(InputError):
            product_subalgebras(whole(sweedler), whole(k_s3))

    def test_intersection(self, s4, k_s4):
        """Verify kA4 ∩ kD8 = kV4."""
        a4 = span(k_s4, s4, "(1 2 3)", "(1 2)(3 4)")
        d8 = span(k_s4, s4, "(1 2 3 4)", "(1 3)")
        assert intersection(a4, d8) == span(k_s4, s4, "(1 2)(3 4)", "(1 3)(2 4)")

    def test_dimension_divides(self, s4, k_s4):
        """Verify dim K divides dim H for Hopf subalgebras."""
        assert nichols_zoeller_check(span(k_s4, s4, "(1 2 3)"))


# =============================================================================
# QUOTIENT TESTS
# =============================================================================


class TestQuotients:
    """Test Hopf ideals and quotients."""

    def test_augmentation(self, s4, k_s4):
        """Verify K⁺ of kV4 is spanned by g - 1 for g ≠ 1."""
        assert len(augmentation(span(k_s4, s4, "(1 2)(3 4)", "(1 3)(2 4)"))) == 3

    def test_quotient_by_normal(self, s4, k_s4):
        """Verify kS4/kS4·kV4⁺ is a six-dimensional group algebra."""
        q = quotient(k_s4, span(k_s4, s4, "(1 2)(3 4)", "(1 3)(2 4)"))
        assert q.quotient.dim == 6
        assert q.kernel_ideal.dim == 18
        assert verify_axioms(q.quotient).passed
        assert verify_morphism(q.projection).passed
        assert grouplikes(q.quotient) == list(range(6))

    def test_lift(self, s4, k_s4):
        """Verify lifts are preimages under the projection."""
        q = quotient(k_s4, span(k_s4, s4, "(1 2 3)", "(1 2)(3 4)"))
        assert q.projection(q.lift({1: 1})) == {1: 1}

    def test_quotient_needs_normal(self, s4, k_s4):
        """Verify quotients by non-normal subalgebras are refused."""
        with pytest.raises(DomainError):
            quotient(k_s4, span(k_s4, s4, "(1 2)"))

    def test_quotient_wrong_parent(self, sweedler, k_s3):
        """Verify the subobject must belong to the algebra."""
        with pytest.raises(InputError):
            quotient(k_s3, trivial(sweedler))

    def test_hopf_ideal_dimension(self, s3, k_s3):
        """Verify kS3·kA3⁺ has codimension 2."""
        assert hopf_ideal(span(k_s3, s3, "(1 2 3)")).dim == 4

    def test_sweedler_quotient(self, sweedler):
        """Verify Sweedler's algebra modulo (x) is kC2."""
        ideal = two_sided_ideal(sweedler, [sweedler.e(2)])
        assert hopf_ideal_failure(sweedler, ideal) is None
        q = quotient_by_ideal(sweedler, ideal)
        assert q.quotient.basis == ("1", "g")
        assert verify_axioms(q.quotient).passed

    @pytest.mark.parametrize(
        ("rows", "reason"),
        [
            ([{0: 1}], "counit does not vanish"),
            ([{1: 1, 0: -1}], "not a two-sided ideal"),
        ],
    )
    def test_hopf_ideal_failures(self, sweedler, rows, reason):
        """Verify the first failing Hopf ideal condition is reported."""
        assert hopf_ideal_failure(sweedler, canonicalize(rows, 4)) == reason


# =============================================================================
# COINVARIANT AND EXACT SEQUENCE TESTS
# =============================================================================


class TestExactSequences:
    """Test coinvariants and exactness of k → H′ → H → H″ → k."""

    def test_coinvariants_of_sign(self, s3):
        """Verify the coinvariants of kS3 → kC2 are kA3 on both sides."""
        pi = sign_morphism(s3)
        a3 = subgroup_space(pi.source, s3.closure([s3.index_of("(1 2 3)")]))
        assert coinvariants(pi, LEFT) == a3
        assert coinvariants(pi, RIGHT) == a3
        assert is_normal_morphism(pi)

    def test_image_subalgebra(self, s3):
        """Verify the image of the sign morphism is all of kC2."""
        assert image_subalgebra(sign_morphism(s3)).dim == 2

    def test_right_normal(self, s3, k_s3):
        """Verify normal Hopf subalgebras are right normal."""
        assert is_right_normal(span(k_s3, s3, "(1 2 3)"))

    def test_exact(self, s3):
        """Verify kA3 → kS3 → kC2 is exact."""
        a3 = s3.closure([s3.index_of("(1 2 3)")])
        report = verify_exact_sequence(inclusion_morphism(s3, a3), sign_morphism(s3))
        assert report.exact
        assert report.sequence is not None
        assert report.sequence.kernel_subalgebra().dim == 3
        assert report.to_json()["dims"] == {"sub": 3, "middle": 6, "quotient": 2}

    def test_not_exact(self, s3):
        """Verify k⟨(1 2)⟩ → kS3 → kC2 violates the kernel and dimension conditions."""
        c2 = s3.closure([s3.index_of("(1 2)")])
        report = verify_exact_sequence(inclusion_morphism(s3, c2), sign_morphism(s3))
        assert not report.exact
        assert report.sequence is None
        assert {"kernel", "coinvariants", "dimension"} <= set(report.violated)

    def test_not_composable(self, s3, sweedler):
        """Verify dimension-incompatible morphisms are rejected."""
        with pytest.raises(InputError):
            verify_exact_sequence(identity_morphism(sweedler), sign_morphism(s3))
