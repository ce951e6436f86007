"""Unit tests for hopfkit.exact_linear.

Tests cover:
- GF(p) residues and field descriptors, with field axioms as property tests
- Scalar parsing and canonical formatting
- Canonical (RREF) subspaces, sums and intersections
- Kernels, inverses, annihilators and determinants
- Dimension identities and intersection membership as property tests
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hopfkit.errors import InputError
from hopfkit.exact_linear import (
    QQ,
    EchelonBasis,
    Field,
    annihilator,
    apply,
    canonicalize,
    complement_indices,
    determinant,
    full_space,
    image,
    intersect,
    invert,
    kernel,
    rank,
    sparse_in,
    subspace_sum,
    zero_subspace,
)

# =============================================================================
# SCALAR TESTS
# =============================================================================


class TestResidues:
    """Test arithmetic on GF(p) scalars."""

    def test_addition_wraps(self):
        """Verify sums are reduced modulo p."""
        f5 = Field.gf(5)
        assert f5.coerce(3) + f5.coerce(4) == 2

    def test_int_interop(self):
        """Verify plain ints combine with residues on either side."""
        f7 = Field.gf(7)
        assert 1 + f7.coerce(6) == 0
        assert f7.coerce(2) * 4 == 1
        assert 3 - f7.coerce(5) == f7.coerce(5)

    def test_inverse(self):
        """Verify multiplicative inverses."""
        assert Field.gf(7).inv(2) == 4
        assert Field.gf(3).div(Field.gf(3).one, 2) == 2

    def test_zero_has_no_inverse(self):
        """Verify inverting zero raises."""
        f5 = Field.gf(5)
        with pytest.raises(ZeroDivisionError):
            f5.inv(f5.coerce(10))

    def test_foreign_residue_rejected(self):
        """Verify a GF(3) scalar is not accepted by GF(5)."""
        with pytest.raises(InputError):
            Field.gf(5).coerce(Field.gf(3).one)

    def test_truthiness(self):
        """Verify zero residues are falsy."""
        f7 = Field.gf(7)
        assert not f7.coerce(7)
        assert f7.coerce(8)

    def test_to_int(self):
        """Verify residues are read back in 0..p-1."""
        assert Field.gf(5).to_int(-1) == 4
        assert Field.gf(5).to_int(Fraction(1, 2)) == 3

    def test_denominator_divisible_by_p(self):
        """Verify 1/5 has no image in GF(5)."""
        with pytest.raises(InputError):
            Field.gf(5).parse("1/5")

    def test_sparse_in_drops_vanishing_entries(self):
        """Verify entries that are multiples of p disappear."""
        assert sparse_in(Field.gf(5), [(0, 5), (1, 6), (2, 0)]) == {1: 1}

    def test_multiple_of_p_in_rows(self):
        """Verify rows with entries divisible by p canonicalize."""
        u = canonicalize([[5, 1], [2, 0]], 2, Field.gf(5))
        assert u.dim == 2


class TestField:
    """Test field descriptors, coercion and formatting."""

    def test_rejects_composite_modulus(self):
        """Verify GF(p) needs a prime."""
        with pytest.raises(InputError):
            Field.gf(4)

    def test_rejects_modulus_on_q(self):
        """Verify Q takes no modulus."""
        with pytest.raises(InputError):
            Field("Q", 3)

    def test_unknown_kind(self):
        """Verify unknown field kinds are rejected."""
        with pytest.raises(InputError):
            Field("R")

    def test_characteristic(self):
        """Verify characteristic of Q and GF(p)."""
        assert QQ.characteristic == 0
        assert Field.gf(5).characteristic == 5

    def test_parse_fraction(self):
        """Verify exact parsing of rational strings."""
        assert QQ.parse("-1/2") == Fraction(-1, 2)
        assert QQ.parse("6/3") == 2

    def test_parse_rejects_decimals(self):
        """Verify decimal strings are refused as inexact."""
        with pytest.raises(InputError):
            QQ.parse("1.5")

    def test_parse_rejects_garbage(self):
        """Verify unparsable scalars raise InputError."""
        with pytest.raises(InputError):
            QQ.parse("two")

    def test_parse_gf_fraction(self):
        """Verify fractions are read as quotients of residues."""
        assert Field.gf(7).parse("1/2") == 4

    def test_coerce_rejects_bool(self):
        """Verify booleans are not accepted as scalars."""
        with pytest.raises(InputError):
            QQ.coerce(True)

    def test_format_canonical(self):
        """Verify canonical text of scalars."""
        assert QQ.format(Fraction(4, 2)) == "2"
        assert QQ.format(Fraction(-3, 6)) == "-1/2"
        assert Field.gf(5).format(-1) == "4"

    def test_inv(self):
        """Verify inverses stay integral when possible."""
        assert QQ.inv(2) == Fraction(1, 2)
        assert QQ.inv(Fraction(1, 2)) == 2
        assert isinstance(QQ.inv(Fraction(1, 2)), int)

    def test_json_round_trip(self):
        """Verify field descriptors survive to_json/from_json."""
        for f in (QQ, Field.gf(3)):
            assert Field.from_json(f.to_json()) == f

    def test_from_json_unknown_kind(self):
        """Verify unknown kinds are named in the error."""
        with pytest.raises(InputError, match="unknown field kind 'R'"):
            Field.from_json({"kind": "R"})

    def test_from_json_needs_kind(self):
        """Verify a descriptor without 'kind' is rejected."""
        with pytest.raises(InputError):
            Field.from_json({"p": 3})


# =============================================================================
# SUBSPACE TESTS
# =============================================================================


class TestCanonicalSubspaces:
    """Test RREF canonical forms and subspace equality."""

    def test_rref_normalizes(self):
        """Verify proportional rows collapse to one normalized row."""
        u = canonicalize([[2, 4], [1, 2]], 2)
        assert u.dim == 1
        assert u.basis == ((1, 2),)

    def test_equality_ignores_spanning_set(self):
        """Verify two spanning sets of one space give equal subspaces."""
        u = canonicalize([[1, 1, 0], [0, 1, 1]], 3)
        w = canonicalize([[1, 0, -1], [1, 2, 1]], 3)
        assert u == w

    def test_sparse_and_dense_agree(self):
        """Verify sparse dict input matches dense rows."""
        assert canonicalize([{0: 1, 2: 3}], 3) == canonicalize([[1, 0, 3]], 3)

    def test_row_length_checked(self):
        """Verify wrong row length raises InputError."""
        with pytest.raises(InputError):
            canonicalize([[1, 2]], 3)

    def test_sparse_index_checked(self):
        """Verify sparse indices outside the space raise InputError."""
        with pytest.raises(InputError):
            canonicalize([{5: 1}], 3)

    def test_contains_and_coordinates(self):
        """Verify membership and pivot coordinates."""
        u = canonicalize([[1, 0, 1], [0, 1, 1]], 3)
        assert u.contains({0: 2, 1: 3, 2: 5})
        assert not u.contains({2: 1})
        assert u.coordinates({0: 2, 1: 3, 2: 5}) == [2, 3]

    def test_coordinates_outside_raises(self):
        """Verify coordinates of a foreign vector raise ValueError."""
        u = canonicalize([[1, 0]], 2)
        with pytest.raises(ValueError):
            u.coordinates({1: 1})

    def test_intersection(self):
        """Verify span{e0,e1} ∩ span{e1,e2} = span{e1}."""
        u = canonicalize([[1, 0, 0], [0, 1, 0]], 3)
        w = canonicalize([[0, 1, 0], [0, 0, 1]], 3)
        assert intersect(u, w).basis == ((0, 1, 0),)

    def test_sum(self):
        """Verify sums of subspaces."""
        u = canonicalize([[1, 0, 0]], 3)
        w = canonicalize([[0, 0, 1]], 3)
        assert subspace_sum(u, w).dim == 2

    def test_parent_mismatch(self):
        """Verify operations on different ambient spaces raise InputError."""
        with pytest.raises(InputError):
            intersect(full_space(2), full_space(3))

    def test_complement_indices(self):
        """Verify non-pivot coordinates."""
        u = canonicalize([[1, 1, 0, 0], [0, 0, 1, 0]], 4)
        assert complement_indices(u) == (1, 3)

    def test_zero_and_full(self):
        """Verify the trivial and full subspaces."""
        assert zero_subspace(3).dim == 0
        assert full_space(3).dim == 3
        assert zero_subspace(3).is_subspace_of(full_space(3))

    def test_gf_rank_differs_from_q(self):
        """Verify rank depends on the characteristic."""
        rows = [{0: 1, 1: 1}, {0: 1, 1: -1}]
        assert rank(rows, 2) == 2
        assert rank(rows, 2, Field.gf(2)) == 1

    def test_echelon_add_reports_dependence(self):
        """Verify EchelonBasis.add returns False for vectors already spanned."""
        ech = EchelonBasis(2)
        assert ech.add({0: 1})
        assert not ech.add({0: 3})
        assert len(ech) == 1


# =============================================================================
# LINEAR MAP TESTS
# =============================================================================


class TestLinearMaps:
    """Test kernels, images, inverses, annihilators and determinants."""

    def test_kernel(self):
        """Verify the kernel of e0, e1 ↦ e0."""
        ker = kernel([{0: 1}, {0: 1}])
        assert ker.basis == ((1, -1),)

    def test_image(self):
        """Verify the image of a rank-one map."""
        assert image([{0: 1}, {0: 2}], 2).dim == 1

    def test_invert(self):
        """Verify the inverse undoes the map."""
        images = [{0: 1, 1: 1}, {1: 2}]
        inv = invert(images)
        for v in ({0: 1}, {1: 1}, {0: 3, 1: -5}):
            assert apply(inv, apply(images, v)) == v

    def test_invert_singular(self):
        """Verify singular maps are refused."""
        with pytest.raises(ValueError):
            invert([{0: 1}, {0: 1}])

    def test_annihilator(self):
        """Verify span{e0}^⊥ = span{e1*}."""
        assert annihilator(canonicalize([[1, 0]], 2)).basis == ((0, 1),)

    def test_determinant(self):
        """Verify exact determinants over Q and GF(5)."""
        assert determinant([[1, 2], [3, 4]]) == -2
        assert determinant([[1, 2], [3, 4]], Field.gf(5)) == 3
        assert determinant([[1, 2], [2, 4]]) == 0

    def test_determinant_fraction(self):
        """Verify determinants stay exact with fractions."""
        assert determinant([[Fraction(1, 2), 0], [0, Fraction(2, 3)]]) == Fraction(1, 3)

    def test_determinant_needs_square(self):
        """Verify non-square matrices are rejected."""
        with pytest.raises(InputError):
            determinant([[1, 2]])


# =============================================================================
# PROPERTY TESTS
# =============================================================================

small_rows = st.lists(
    st.lists(st.integers(min_value=-3, max_value=3), min_size=4, max_size=4),
    min_size=0,
    max_size=4,
)


class TestDimensionIdentities:
    """Property tests of canonical forms and the dimension formula."""

    @settings(max_examples=60, deadline=None)
    @given(small_rows)
    def test_canonicalize_idempotent(self, rows):
        """Verify canonicalizing an RREF basis returns it unchanged."""
        u = canonicalize(rows, 4)
        assert canonicalize(u.basis, 4) == u

    @settings(max_examples=60, deadline=None)
    @given(small_rows, small_rows)
    def test_grassmann_formula(self, rows_u, rows_w):
        """Verify dim(U+W) + dim(U∩W) = dim U + dim W."""
        u = canonicalize(rows_u, 4)
        w = canonicalize(rows_w, 4)
        assert subspace_sum(u, w).dim + intersect(u, w).dim == u.dim + w.dim

    @settings(max_examples=60, deadline=None)
    @given(small_rows)
    def test_annihilator_dimension(self, rows):
        """Verify dim U + dim U^⊥ = 4."""
        u = canonicalize(rows, 4)
        assert u.dim + annihilator(u).dim == 4

    @settings(max_examples=60, deadline=None)
    @given(small_rows)
    def test_rank_nullity(self, rows):
        """Verify rank + nullity of the map given by row vectors as images."""
        images = [{i: c for i, c in enumerate(r) if c} for r in rows]
        assert kernel(images).dim + rank(images, 4) == len(images)


FIELDS = [QQ, Field.gf(2), Field.gf(3), Field.gf(7), Field.gf(101)]


@st.composite
def field_triples(draw):
    """A field and three of its scalars."""
    fld = draw(st.sampled_from(FIELDS))
    if fld.characteristic == 0:
        elem = st.builds(Fraction, st.integers(-50, 50), st.integers(1, 50))
    else:
        elem = st.integers(-500, 500)
    a, b, c = (fld.coerce(draw(elem)) for _ in range(3))
    return fld, a, b, c


@st.composite
def subspace_pairs(draw):
    """Two spanning sets in k^n for n ≤ 8 over Q or a small prime field."""
    fld = draw(st.sampled_from([QQ, Field.gf(2), Field.gf(5)]))
    n = draw(st.integers(1, 8))
    row = st.lists(st.integers(-4, 4), min_size=n, max_size=n)
    return fld, n, draw(st.lists(row, max_size=n)), draw(st.lists(row, max_size=n))


class TestFieldAxioms:
    """Property tests of the field axioms over Q and GF(p)."""

    @settings(max_examples=100, deadline=None)
    @given(field_triples())
    def test_associativity(self, triple):
        """Verify (a+b)+c = a+(b+c) and (ab)c = a(bc)."""
        _, a, b, c = triple
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)

    @settings(max_examples=100, deadline=None)
    @given(field_triples())
    def test_commutativity(self, triple):
        """Verify a+b = b+a and ab = ba."""
        _, a, b, _ = triple
        assert a + b == b + a
        assert a * b == b * a

    @settings(max_examples=100, deadline=None)
    @given(field_triples())
    def test_distributivity(self, triple):
        """Verify a(b+c) = ab + ac."""
        _, a, b, c = triple
        assert a * (b + c) == a * b + a * c

    @settings(max_examples=100, deadline=None)
    @given(field_triples())
    def test_inverses(self, triple):
        """Verify additive inverses always and multiplicative inverses of nonzero a."""
        fld, a, b, _ = triple
        assert a + (-a) == fld.zero
        assert a * fld.one == a
        if a:
            assert a * fld.inv(a) == fld.one
            assert fld.div(b, a) * a == b
        else:
            with pytest.raises(ZeroDivisionError):
                fld.inv(a)


class TestIntersectionMembership:
    """Property tests of Zassenhaus intersections in dimension up to 8."""

    @settings(max_examples=100, deadline=None)
    @given(subspace_pairs())
    def test_basis_lies_in_both(self, pair):
        """Verify every basis vector of U ∩ W lies in U and in W."""
        fld, n, rows_u, rows_w = pair
        u = canonicalize(rows_u, n, fld)
        w = canonicalize(rows_w, n, fld)
        meet = intersect(u, w)
        assert all(u.contains(r) and w.contains(r) for r in meet.rows)
        assert subspace_sum(u, w).dim + meet.dim == u.dim + w.dim

    @settings(max_examples=100, deadline=None)
    @given(subspace_pairs())
    def test_intersection_is_largest(self, pair):
        """Verify U ∩ W contains every vector of W that lies in U."""
        fld, n, rows_u, rows_w = pair
        u = canonicalize(rows_u, n, fld)
        w = canonicalize(rows_w, n, fld)
        meet = intersect(u, w)
        assert all(meet.contains(r) for r in w.rows if u.contains(r))
