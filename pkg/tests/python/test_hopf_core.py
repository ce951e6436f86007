"""Unit tests for hopfkit.hopf_core.

Tests cover:
- Building Hopf algebras from coefficient entries
- Axiom verification and first-failure witnesses
- Duality on the dual basis
- Grouplikes, (co)semisimplicity and the trace-form radical
- Hopf morphisms: composition, inverses, transposes and verification
"""

import pytest

from hopfkit.constructions import (
    dual_group_algebra,
    group_algebra,
    inclusion_morphism,
    sign_morphism,
)
from hopfkit.errors import InputError, UnsupportedOperationError
from hopfkit.exact_linear import Field
from hopfkit.groups import cyclic_group, named
from hopfkit.hopf_core import (
    DUAL_GROUP_ALGEBRA,
    GENERIC,
    GROUP_ALGEBRA,
    FactorTag,
    HopfAlgebra,
    HopfMorphism,
    antipode_of,
    comultiply,
    compose,
    counit_of,
    dual,
    dual_morphism,
    grouplikes,
    identity_morphism,
    inverse_morphism,
    is_cosemisimple,
    is_semisimple,
    multiply,
    radical,
    same_structure,
    trivial_hopf_algebra,
    verify_axioms,
    verify_morphism,
)

AXIOMS = [
    "associativity",
    "unit",
    "coassociativity",
    "counit",
    "comult_multiplicative",
    "counit_multiplicative",
    "antipode",
    "antipode_invertible",
]


def c3_with_antipode(images):
    """kC3 on basis 1, a, a² with the antipode replaced by `images`."""
    c3 = cyclic_group(3)
    h = group_algebra(c3)
    return HopfAlgebra.build(
        h.field,
        h.basis,
        [(i, j, k, c) for (i, j), row in h.mult.items() for k, c in row],
        h.unit,
        [(i, j, k, c) for i, row in enumerate(h.comult) for j, k, c in row],
        list(enumerate(h.counit)),
        [(i, j, 1) for i, j in enumerate(images)],
    )


# =============================================================================
# BUILD TESTS
# =============================================================================


class TestBuild:
    """Test HopfAlgebra.build validation."""

    def test_empty_basis_rejected(self):
        """Verify dimension 0 is refused."""
        with pytest.raises(InputError):
            HopfAlgebra.build(Field(), [], [], [], [], [], [])

    def test_index_out_of_range(self):
        """Verify indices outside the basis are refused."""
        with pytest.raises(InputError, match="outside"):
            HopfAlgebra.build(Field(), ["1"], [(0, 0, 1, 1)], [(0, 1)], [(0, 0, 0, 1)],
                              [(0, 1)], [(0, 0, 1)])

    def test_missing_antipode_row(self):
        """Verify a basis vector without antipode image is refused."""
        c2 = group_algebra(cyclic_group(2))
        with pytest.raises(InputError, match="antipode row 1"):
            HopfAlgebra.build(
                c2.field,
                c2.basis,
                [(i, j, k, c) for (i, j), row in c2.mult.items() for k, c in row],
                c2.unit,
                [(i, j, k, c) for i, row in enumerate(c2.comult) for j, k, c in row],
                list(enumerate(c2.counit)),
                [(0, 0, 1)],
            )

    def test_repeated_entries_sum(self):
        """Verify repeated coefficient entries are added."""
        h = HopfAlgebra.build(Field(), ["1"], [(0, 0, 0, "1/2"), (0, 0, 0, "1/2")],
                              [(0, 1)], [(0, 0, 0, 1)], [(0, 1)], [(0, 0, 1)])
        assert h.mult[(0, 0)] == ((0, 1),)

    def test_string_scalars_coerced(self):
        """Verify scalar strings are parsed into the field."""
        h = HopfAlgebra.build(Field.gf(3), ["1"], [(0, 0, 0, "4")], [(0, 1)],
                              [(0, 0, 0, 1)], [(0, 1)], [(0, 0, 1)])
        assert h.mult[(0, 0)][0][1] == 1

    def test_trivial_algebra(self):
        """Verify the one-dimensional Hopf algebra."""
        k = trivial_hopf_algebra()
        assert k.dim == 1
        assert verify_axioms(k).passed

    def test_describe_uses_tag(self, k_s3):
        """Verify describe() names the provenance."""
        assert k_s3.describe() == "kS3 (dim 6)"
        assert trivial_hopf_algebra().tag.kind == GENERIC


# =============================================================================
# AXIOM TESTS
# =============================================================================


class TestAxioms:
    """Test exact verification of the Hopf algebra axioms."""

    def test_group_algebra_passes(self, k_s3):
        """Verify kS3 satisfies every axiom."""
        report = verify_axioms(k_s3)
        assert report.passed
        assert [c.name for c in report.checks] == AXIOMS

    def test_dual_group_algebra_passes(self, s3):
        """Verify k^S3 satisfies every axiom."""
        assert verify_axioms(dual_group_algebra(s3)).passed

    def test_sweedler_passes(self, sweedler):
        """Verify the bundled Sweedler algebra satisfies every axiom."""
        assert verify_axioms(sweedler).passed

    def test_gf_group_algebra_passes(self):
        """Verify kC4 over GF(2) is a Hopf algebra."""
        assert verify_axioms(group_algebra(cyclic_group(4), Field.gf(2))).passed

    def test_wrong_antipode_detected(self):
        """Verify S(a) = a on kC3 fails the antipode axiom only."""
        h = c3_with_antipode([0, 1, 2])
        report = verify_axioms(h)
        assert not report.passed
        assert report.first_failure.name == "antipode"
        assert report["antipode"].witness == (1,)
        assert report["associativity"].passed

    def test_report_json(self):
        """Verify the JSON form lists each axiom with its witness."""
        data = verify_axioms(c3_with_antipode([0, 1, 2])).to_json()
        assert data["passed"] is False
        assert data["axioms"]["antipode"]["witness"] == [1]
        assert data["axioms"]["unit"] == {"passed": True}

    def test_element_arithmetic(self, sweedler):
        """Verify x² = 0, gx = -xg and S²(x) = -x in Sweedler's algebra."""
        g, x, gx = sweedler.e(1), sweedler.e(2), sweedler.e(3)
        assert multiply(sweedler, x, x) == {}
        assert multiply(sweedler, g, x) == gx
        assert multiply(sweedler, x, g) == {3: -1}
        assert antipode_of(sweedler, antipode_of(sweedler, x)) == {2: -1}
        assert comultiply(sweedler, x) == {(1, 2): 1, (2, 0): 1}
        assert counit_of(sweedler, x) == 0


# =============================================================================
# DUALITY TESTS
# =============================================================================


class TestDuality:
    """Test H* on the dual basis."""

    def test_dual_of_group_algebra(self, s3, k_s3):
        """Verify (kG)* has the structure constants of k^G."""
        d = dual(k_s3)
        assert same_structure(d, dual_group_algebra(s3))
        assert d.tag.kind == DUAL_GROUP_ALGEBRA

    def test_double_dual(self, sweedler):
        """Verify H** = H."""
        assert same_structure(dual(dual(sweedler)), sweedler)

    def test_dual_labels(self, sweedler):
        """Verify dual basis labels toggle a trailing star."""
        assert dual(sweedler).basis == ("1*", "g*", "x*", "gx*")
        assert dual(dual(sweedler)).basis == sweedler.basis

    def test_dual_tag_kind(self):
        """Verify tags flip between group algebra and dual group algebra."""
        g = named("C3")
        assert FactorTag.group_algebra(g).dual().kind == DUAL_GROUP_ALGEBRA
        assert FactorTag.dual_group_algebra(g).dual().kind == GROUP_ALGEBRA


# =============================================================================
# SEMISIMPLICITY TESTS
# =============================================================================


class TestSemisimplicity:
    """Test grouplikes and the trace-form radical."""

    def test_grouplikes_of_group_algebra(self, k_s3):
        """Verify every basis element of kG is grouplike."""
        assert grouplikes(k_s3) == list(range(6))

    def test_grouplikes_of_sweedler(self, sweedler):
        """Verify only 1 and g are grouplike in Sweedler's algebra."""
        assert grouplikes(sweedler) == [0, 1]

    def test_group_algebra_semisimple(self, k_s3):
        """Verify kS3 is semisimple and cosemisimple over Q."""
        assert is_semisimple(k_s3)
        assert is_cosemisimple(k_s3)

    def test_sweedler_not_semisimple(self, sweedler):
        """Verify Sweedler's algebra is neither semisimple nor cosemisimple."""
        assert radical(sweedler).dim == 2
        assert not is_semisimple(sweedler)
        assert not is_cosemisimple(sweedler)

    def test_positive_characteristic_unsupported(self):
        """Verify the trace-form radical refuses positive characteristic."""
        with pytest.raises(UnsupportedOperationError):
            radical(group_algebra(cyclic_group(2), Field.gf(2)))


# =============================================================================
# MORPHISM TESTS
# =============================================================================


class TestMorphisms:
    """Test Hopf morphisms and their verification."""

    def test_identity(self, sweedler):
        """Verify the identity is a bijective Hopf morphism."""
        f = identity_morphism(sweedler)
        assert verify_morphism(f).passed
        assert f.bijective

    def test_sign_morphism(self, s3):
        """Verify kS3 → kC2 is a surjective Hopf morphism with 4-dim linear kernel."""
        f = sign_morphism(s3)
        assert verify_morphism(f).passed
        assert f.surjective and not f.injective
        assert f.kernel().dim == 4

    def test_inclusion(self, s4):
        """Verify kA4 → kS4 is injective."""
        a4 = s4.closure([s4.index_of("(1 2 3)"), s4.index_of("(1 2)(3 4)")])
        f = inclusion_morphism(s4, a4)
        assert verify_morphism(f).passed
        assert f.injective and f.rank == 12

    def test_compose_and_inverse(self, sweedler):
        """Verify f ∘ f⁻¹ is the identity for the antipode-squared automorphism."""
        cols = tuple(antipode_of(sweedler, antipode_of(sweedler, sweedler.e(i)))
                     for i in range(4))
        f = HopfMorphism(sweedler, sweedler, cols)
        assert verify_morphism(f).passed
        both = compose(f, inverse_morphism(f))
        assert both.columns == identity_morphism(sweedler).columns

    def test_not_multiplicative(self, k_s3):
        """Verify a linear bijection that is not an algebra map is caught."""
        cols = tuple({(i + 1) % 6: 1} for i in range(6))
        report = verify_morphism(HopfMorphism(k_s3, k_s3, cols))
        assert not report.passed
        assert not report.to_json()["checks"]["unital"]["passed"]

    def test_dual_morphism(self, s3):
        """Verify the transpose of a Hopf morphism is a Hopf morphism."""
        f = sign_morphism(s3)
        assert verify_morphism(dual_morphism(f)).passed

    def test_from_matrix_shape(self, sweedler):
        """Verify matrix shape is checked."""
        with pytest.raises(InputError):
            HopfMorphism.from_matrix(sweedler, sweedler, [[1, 0]])

    def test_matrix_round_trip(self, sweedler):
        """Verify from_matrix and .matrix agree."""
        f = identity_morphism(sweedler)
        assert HopfMorphism.from_matrix(sweedler, sweedler, f.matrix).columns == f.columns

    def test_compose_checks_dims(self, sweedler, k_s3):
        """Verify incompatible morphisms cannot be composed."""
        with pytest.raises(InputError):
            compose(identity_morphism(sweedler), identity_morphism(k_s3))
