"""Unit tests for hopfkit.series.

Tests cover:
- Simplicity and the recursive composition series
- Jordan-Hölder verification across first choices
- Additivity, duality and semisimplicity of factors
- Lower and upper subnormal series, their lengths and factors
- Schreier refinement of two lower series
- Factor equivalence and isomorphism fingerprints
- Lengths of D(A4) (slow)
"""

import pytest

from hopfkit.constructions import (
    abelian_ext_lower_series,
    abelian_extension,
    drinfeld_double_pair,
    dual_group_algebra,
    group_algebra,
    inclusion_morphism,
    sign_morphism,
    subgroup_space,
)
from hopfkit.errors import DomainError, InputError
from hopfkit.groups import cyclic_group, named
from hopfkit.hopf_core import dual
from hopfkit.series import (
    DISTINCT,
    EQUIVALENT,
    HOLDS,
    LOWER,
    NOT_APPLICABLE,
    Factor,
    SubnormalSeries,
    additivity_check,
    composition_series,
    dual_factors_check,
    factor_equiv,
    fingerprint,
    is_lower_composition_series,
    is_simple,
    jh_lower_verify,
    jordan_holder_verify,
    length,
    lower_composition_series,
    lower_composition_series_all,
    lower_length,
    schreier_refine,
    semisimple_factors_check,
    simple_factors_imply_composition,
    simple_iff_dual_simple,
    upper_composition_series,
    upper_length,
    verify_subnormal,
)
from hopfkit.subobjects import ExactSequence, HopfSubalgebra, trivial, whole


def span(h, group, *labels):
    """kS inside h = kG for S generated by the given permutations."""
    s = group.closure([group.index_of(label) for label in labels])
    return HopfSubalgebra(h, subgroup_space(h, s))


def lower(h, *terms):
    return SubnormalSeries(LOWER, h, chain=(whole(h), *terms, trivial(h)))


def factor_labels(series):
    return sorted(Factor(f).describe() for f in series.factors)


@pytest.fixture(scope="module")
def k_c6():
    """Group algebra of C6."""
    return group_algebra(cyclic_group(6))


@pytest.fixture(scope="module")
def double_a4():
    """D(A4) with its exact sequence k^A4 → D(A4) → kA4."""
    return abelian_extension(drinfeld_double_pair(named("A4")))


# =============================================================================
# COMPOSITION SERIES TESTS
# =============================================================================


class TestSimplicity:
    """Test is_simple."""

    def test_prime_cyclic(self):
        """Verify kC5 is simple."""
        assert is_simple(group_algebra(cyclic_group(5)))

    def test_c6_not_simple(self, k_c6):
        """Verify kC6 is not simple."""
        assert not is_simple(k_c6)

    def test_sweedler(self, sweedler):
        """Verify Sweedler's algebra is simple."""
        assert is_simple(sweedler)

    def test_one_dimensional(self):
        """Verify k is not simple."""
        assert not is_simple(group_algebra(named("C1")))


class TestCompositionSeries:
    """Test the recursive composition series."""

    def test_s4(self, k_s4):
        """Verify kS4 has factors kC2, kC2, kC2, kC3."""
        result = composition_series(k_s4)
        assert result.length == 4
        assert result.labels() == ["kC2", "kC2", "kC2", "kC3"]
        assert not result.search_based

    @pytest.mark.parametrize("choice", [0, 1])
    def test_c6_either_choice(self, k_c6, choice):
        """Verify kC6 has factors kC2, kC3 whichever subalgebra is split off first."""
        result = composition_series(k_c6, first_choice=choice)
        assert result.labels() == ["kC2", "kC3"]

    def test_one_dimensional(self):
        """Verify k has no factors."""
        assert length(group_algebra(named("C1"))) == 0

    def test_sweedler_single_factor(self, sweedler):
        """Verify a simple algebra is its own single factor."""
        result = composition_series(sweedler)
        assert result.length == 1
        assert result.factors[0].dim == 4
        assert result.search_based

    def test_first_choice_out_of_range(self, k_c6):
        """Verify an out-of-range first choice raises InputError."""
        with pytest.raises(InputError):
            composition_series(k_c6, first_choice=5)

    def test_tree(self, k_c6):
        """Verify the recursion tree records the split."""
        data = composition_series(k_c6).to_json()
        assert data["tree"]["split_dim"] == 2
        assert data["tree"]["sub"]["simple"]
        assert data["length"] == 2

    def test_dimension_product(self, k_s4):
        """Verify factor dims multiply to dim H."""
        total = 1
        for f in composition_series(k_s4).factors:
            total *= f.dim
        assert total == 24


class TestJordanHolder:
    """Test Jordan-Hölder verification and the corollaries."""

    def test_s4_branches(self, k_s4):
        """Verify kS4 gives the same factors through kV4 and through kA4."""
        report = jordan_holder_verify(k_s4)
        assert report.verified
        assert sorted(b["first_choice_dim"] for b in report.branches) == [4, 12]

    def test_c6_branches(self, k_c6):
        """Verify kC6 gives the same factors through kC2 and through kC3."""
        report = jordan_holder_verify(k_c6)
        assert report.verified
        assert len(report.branches) == 2

    def test_simple_vacuous(self):
        """Verify a simple algebra has a single branch."""
        report = jordan_holder_verify(group_algebra(cyclic_group(5)))
        assert report.verified
        assert len(report.branches) == 1

    def test_additivity_s3(self, s3):
        """Verify kA3 → kS3 → kC2 gives 2 = 1 + 1."""
        a3 = s3.closure([s3.index_of("(1 2 3)")])
        seq = ExactSequence(inclusion_morphism(s3, a3), sign_morphism(s3))
        assert additivity_check(seq)

    def test_additivity_logs(self, s3, caplog):
        """Verify the additivity check logs the three lengths."""
        a3 = s3.closure([s3.index_of("(1 2 3)")])
        seq = ExactSequence(inclusion_morphism(s3, a3), sign_morphism(s3))
        with caplog.at_level("INFO", logger="hopfkit.series"):
            additivity_check(seq)
        assert "2 = 1 + 1" in caplog.text

    def test_dual_factors(self, k_s4):
        """Verify factors of (kS4)* are the duals of those of kS4."""
        assert dual_factors_check(k_s4)

    def test_semisimple_factors(self, k_s4, sweedler):
        """Verify (co)semisimplicity agrees with that of the factors."""
        assert semisimple_factors_check(k_s4)
        assert semisimple_factors_check(sweedler)

    def test_simple_iff_dual_simple(self, sweedler, k_c6):
        """Verify H is simple iff H* is."""
        assert simple_iff_dual_simple(sweedler)
        assert simple_iff_dual_simple(k_c6)


# =============================================================================
# SUBNORMAL SERIES TESTS
# =============================================================================


class TestSubnormalSeries:
    """Test verify_subnormal and series factors."""

    def test_s4_chain(self, s4, k_s4):
        """Verify k ⊂ kV4 ⊂ kA4 ⊂ kS4 with factors of dims 2, 3, 4."""
        series = lower(k_s4, span(k_s4, s4, "(1 2 3)", "(1 2)(3 4)"),
                       span(k_s4, s4, "(1 2)(3 4)", "(1 3)(2 4)"))
        report = verify_subnormal(series)
        assert report.verified
        assert report.factor_dims == [2, 3, 4]
        assert series.dims() == [24, 12, 4, 1]

    def test_trivial_chain(self, sweedler):
        """Verify k ⊂ H is a subnormal series with single factor H."""
        series = lower(sweedler)
        assert verify_subnormal(series).verified
        assert [f.dim for f in series.factors] == [4]

    def test_non_normal_step(self, s3, k_s3):
        """Verify k ⊂ k⟨(1 2)⟩ ⊂ kS3 fails at step 1."""
        report = verify_subnormal(lower(k_s3, span(k_s3, s3, "(1 2)")))
        assert not report.verified
        assert report.failed_step == 1
        assert report.to_json()["factor_dims"] == []

    def test_foreign_term(self, k_s3, sweedler):
        """Verify terms must live in the series' algebra."""
        with pytest.raises(InputError):
            SubnormalSeries(LOWER, k_s3, chain=(whole(k_s3), trivial(sweedler)))

    def test_bad_direction(self, k_s3):
        """Verify the direction is validated."""
        with pytest.raises(InputError):
            SubnormalSeries("sideways", k_s3, chain=(whole(k_s3),))


class TestLowerSeries:
    """Test lower composition series."""

    def test_is_lower_composition_series(self, s4, k_s4):
        """Verify kS4 ⊃ kA4 ⊃ kV4 ⊃ k⟨(1 2)(3 4)⟩ ⊃ k is a lower composition series."""
        series = lower(
            k_s4,
            span(k_s4, s4, "(1 2 3)", "(1 2)(3 4)"),
            span(k_s4, s4, "(1 2)(3 4)", "(1 3)(2 4)"),
            span(k_s4, s4, "(1 2)(3 4)"),
        )
        assert is_lower_composition_series(series)

    def test_skipping_a_term(self, s4, k_s4):
        """Verify k ⊂ kV4 ⊂ kS4 is not one, kA4 lies in between."""
        series = lower(k_s4, span(k_s4, s4, "(1 2)(3 4)", "(1 3)(2 4)"))
        assert verify_subnormal(series).verified
        assert not is_lower_composition_series(series)

    def test_prime_order(self):
        """Verify k ⊂ kC2 is a lower composition series."""
        h = group_algebra(cyclic_group(2))
        assert is_lower_composition_series(lower(h))

    def test_s4_lengths(self, k_s4):
        """Verify kS4 has lower length 4, equal to its length."""
        assert lower_length(k_s4) == 4 == length(k_s4)

    def test_dual_s4_lengths(self, dual_s4):
        """Verify k^S4 has lower length 3 and upper length 4."""
        assert lower_length(dual_s4) == 3
        assert upper_length(dual_s4) == 4

    def test_dual_s4_factors(self, dual_s4):
        """Verify the lower factors of k^S4 are k^V4, k^C3, k^C2."""
        series = lower_composition_series(dual_s4)
        assert series.dims() == [24, 6, 2, 1]
        assert factor_labels(series) == ["k^C2", "k^C3", "k^V4"]

    def test_non_simple_factor(self, dual_s4):
        """Verify k^V4 is a lower factor of k^S4 but not simple."""
        series = lower_composition_series(dual_s4)
        v4 = next(f for f in series.factors if f.dim == 4)
        assert not is_simple(v4)

    def test_all_c6(self, k_c6):
        """Verify kC6 has two lower composition series with equivalent factors."""
        assert len(lower_composition_series_all(k_c6)) == 2
        assert jh_lower_verify(k_c6).verified

    def test_jh_dual_s4(self, dual_s4):
        """Verify every lower composition series of k^S4 has the same factors."""
        report = jh_lower_verify(dual_s4)
        assert report.verified
        assert all(s["dims"] == [24, 6, 2, 1] for s in report.series)

    def test_simple_factors_hold(self, k_s4):
        """Verify lower factors of kS4 are simple and match the composition factors."""
        assert simple_factors_imply_composition(lower_composition_series(k_s4)) == HOLDS

    def test_simple_factors_not_applicable(self, dual_s4):
        """Verify the k^V4 factor makes the check not applicable for k^S4."""
        verdict = simple_factors_imply_composition(lower_composition_series(dual_s4))
        assert verdict == NOT_APPLICABLE

    def test_simple_algebra(self, sweedler):
        """Verify k ⊂ H with H simple holds."""
        assert simple_factors_imply_composition(lower(sweedler)) == HOLDS


class TestUpperSeries:
    """Test upper composition series."""

    def test_s4(self, k_s4):
        """Verify kS4 → kS3 → kC2 → k."""
        series = upper_composition_series(k_s4)
        assert series.dims() == [24, 6, 2, 1]
        assert series.length == 3 == upper_length(k_s4)
        assert verify_subnormal(series).verified

    def test_upper_is_dual_lower(self, k_s4, dual_s4):
        """Verify the upper length of H is the lower length of H*."""
        assert upper_length(k_s4) == lower_length(dual(k_s4))
        assert upper_length(dual_s4) == lower_length(k_s4)


# =============================================================================
# SCHREIER REFINEMENT TESTS
# =============================================================================


class TestSchreier:
    """Test equivalent refinements of two lower series."""

    def test_s4(self, s4, k_s4):
        """Verify k ⊂ kV4 ⊂ kS4 and k ⊂ kA4 ⊂ kS4 refine to equivalent series."""
        s1 = lower(k_s4, span(k_s4, s4, "(1 2)(3 4)", "(1 3)(2 4)"))
        s2 = lower(k_s4, span(k_s4, s4, "(1 2 3)", "(1 2)(3 4)"))
        result = schreier_refine(s1, s2)
        assert result.verified
        assert result.nontrivial_factor_dims() == [2, 3, 4]
        assert result.to_json()["pairing"] == [[0, 0], [1, 2], [2, 1], [3, 3]]

    def test_c6(self):
        """Verify k ⊂ kC2 ⊂ kC6 and k ⊂ kC3 ⊂ kC6 both refine to factors of dims 2, 3."""
        c6 = cyclic_group(6)
        h = group_algebra(c6)
        c2, c3 = (c6.closure([c6.element_orders.index(n)]) for n in (2, 3))
        s1 = lower(h, HopfSubalgebra(h, subgroup_space(h, c2)))
        s2 = lower(h, HopfSubalgebra(h, subgroup_space(h, c3)))
        result = schreier_refine(s1, s2)
        assert result.verified
        assert result.nontrivial_factor_dims() == [2, 3]
        assert sorted(f.dim for f in result.second.factors if f.dim > 1) == [2, 3]

    def test_same_series(self, s4, k_s4):
        """Verify a series refines against itself."""
        s1 = lower(k_s4, span(k_s4, s4, "(1 2 3)", "(1 2)(3 4)"))
        assert schreier_refine(s1, s1).verified

    def test_invalid_series(self, s3, k_s3):
        """Verify an invalid input series raises DomainError."""
        bad = lower(k_s3, span(k_s3, s3, "(1 2)"))
        with pytest.raises(DomainError):
            schreier_refine(bad, lower(k_s3))


# =============================================================================
# FACTOR EQUIVALENCE TESTS
# =============================================================================


class TestFactorEquivalence:
    """Test factor_equiv and fingerprints."""

    def test_same_group(self):
        """Verify two kC2 factors are equivalent."""
        c2 = cyclic_group(2)
        assert factor_equiv(Factor(group_algebra(c2)), Factor(group_algebra(c2))) == EQUIVALENT

    def test_c3_vs_dual(self):
        """Verify kC3 and k^C3 are told apart over Q by rational characters."""
        c3 = cyclic_group(3)
        assert factor_equiv(Factor(group_algebra(c3)),
                            Factor(dual_group_algebra(c3))) == DISTINCT
        assert fingerprint(group_algebra(c3)).algebra.rational_characters == 1
        assert fingerprint(dual_group_algebra(c3)).algebra.rational_characters == 3

    def test_v4_vs_c4(self):
        """Verify kV4 and kC4 are distinct."""
        assert factor_equiv(Factor(group_algebra(named("V4"))),
                            Factor(group_algebra(cyclic_group(4)))) == DISTINCT

    def test_nonabelian_group_vs_dual(self, k_s3, s3):
        """Verify kS3 and k^S3 are distinct."""
        assert factor_equiv(Factor(k_s3), Factor(dual_group_algebra(s3))) == DISTINCT

    def test_sweedler_fingerprint(self, sweedler):
        """Verify the fingerprint of Sweedler's algebra."""
        fp = fingerprint(sweedler)
        assert fp.algebra.dim == 4
        assert fp.algebra.radical == 2
        assert fp.dual.radical == 2


# =============================================================================
# DRINFELD DOUBLE TESTS
# =============================================================================


@pytest.mark.slow
class TestDoubleA4:
    """Test lengths of D(A4), where all three differ."""

    def test_lengths(self, double_a4):
        """Verify length 6, lower length 5 and upper length 4."""
        h = double_a4.algebra
        assert length(h) == 6
        assert lower_length(h) == 5
        assert upper_length(h) == 4

    def test_upper_is_dual_lower(self, double_a4):
        """Verify upper(D(A4)) = lower(D(A4)*)."""
        h = double_a4.algebra
        assert upper_length(h) == lower_length(dual(h))

    def test_additivity(self, double_a4):
        """Verify 6 = 3 + 3 along k^A4 → D(A4) → kA4."""
        assert additivity_check(double_a4.sequence)

    def test_displayed_series(self, double_a4):
        """Verify the displayed lower series is a lower composition series of length 5."""
        series = abelian_ext_lower_series(double_a4.matched_pair)
        assert series.length == 5
        assert verify_subnormal(series).verified

    def test_dual_and_semisimple_factors(self, double_a4):
        """Verify factor duality and semisimplicity of factors."""
        h = double_a4.algebra
        assert dual_factors_check(h)
        assert semisimple_factors_check(h)
