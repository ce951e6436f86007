"""Hopf algebras built from group data, with exact normal lattices.

Builders:
    group_algebra, dual_group_algebra, abelian_extension (bicrossed product
    k^Γ #^τ_σ kF from a matched pair), drinfeld_double.

Providers (see ``hopfkit.lattices``):
    GroupAlgebraProvider   {kN : N ◁ G}
    DualGroupProvider      {k^{G/S} : S ◁ G}
    AbelianExtensionProvider
        k^{Γ/S} # kN for S ◁ Γ stable under ⊲ and N ◁ F stable under ⊳,
        kept when they verify as normal Hopf subalgebras.

Abelian extension basis: e_g # x sits at index g·|F| + x.
"""

from __future__ import annotations

import logging
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from typing import Any

from hopfkit.errors import DomainError, InputError, InternalError
from hopfkit.exact_linear import QQ, Field, Scalar, SparseVector, Subspace, canonicalize
from hopfkit.groups import (
    FiniteGroup,
    GroupAction,
    GroupSeries,
    Subgroup,
    chief_series_group,
    cosets,
    cyclic_group,
    gamma_composition_series,
    is_homomorphism,
    is_normal_subgroup,
    is_subgroup,
    normal_subgroups,
    quotient_group,
    sign_homomorphism,
    subgroup_group,
)
from hopfkit.hopf_core import (
    ABELIAN_EXTENSION,
    DUAL_ABELIAN_EXTENSION,
    DUAL_GROUP_ALGEBRA,
    GROUP_ALGEBRA,
    FactorTag,
    HopfAlgebra,
    HopfMorphism,
    dual,
    same_structure,
    verify_axioms,
    with_provenance,
)
from hopfkit.lattices import DualProvider, NormalLatticeProvider, SeededSearchProvider
from hopfkit.series import SubnormalSeries, is_lower_composition_series
from hopfkit.subobjects import (
    BOTH,
    ExactnessReport,
    ExactSequence,
    HopfSubalgebra,
    QuotientHopf,
    RightCoidealSubalgebra,
    hopf_subalgebra_failure,
    is_normal,
    is_right_normal,
    right_coideal_subalgebra,
    verify_exact_sequence,
)

logger = logging.getLogger(__name__)


# =============================================================================
# Group algebras
# =============================================================================


def group_algebra(group: FiniteGroup, field: Field = QQ) -> HopfAlgebra:
    """kG: Δ(g) = g⊗g, ε(g) = 1, S(g) = g⁻¹."""
    n = group.order
    return HopfAlgebra.build(
        field,
        group.labels,
        [(a, b, group.table[a][b], 1) for a in range(n) for b in range(n)],
        [(group.identity, 1)],
        [(a, a, a, 1) for a in range(n)],
        [(a, 1) for a in range(n)],
        [(a, group.inv(a), 1) for a in range(n)],
        FactorTag.group_algebra(group),
    )


def dual_group_algebra(group: FiniteGroup, field: Field = QQ) -> HopfAlgebra:
    """k^G on the indicator functions e[g]."""
    n = group.order
    return HopfAlgebra.build(
        field,
        [f"e[{label}]" for label in group.labels],
        [(a, a, a, 1) for a in range(n)],
        [(a, 1) for a in range(n)],
        [(group.table[s][t], s, t, 1) for s in range(n) for t in range(n)],
        [(group.identity, 1)],
        [(a, group.inv(a), 1) for a in range(n)],
        FactorTag.dual_group_algebra(group),
    )


def subgroup_space(h: HopfAlgebra, s: Subgroup) -> Subspace:
    """span{g : g ∈ s} inside kG."""
    return canonicalize(({g: 1} for g in sorted(s)), h.dim, h.field)


def coset_function_space(h: HopfAlgebra, parts: Sequence[Sequence[int]]) -> Subspace:
    """Span of indicator functions of a partition of G inside k^G."""
    return canonicalize(({g: 1 for g in part} for part in parts), h.dim, h.field)


def right_cosets(group: FiniteGroup, s: Subgroup) -> list[tuple[int, ...]]:
    seen: set[int] = set()
    out = []
    for g in range(group.order):
        if g not in seen:
            c = tuple(sorted(group.table[x][g] for x in s))
            seen.update(c)
            out.append(c)
    return sorted(out)


def coideal_subalgebra_of_dual(group: FiniteGroup, s: Subgroup,
                               h: HopfAlgebra | None = None) -> RightCoidealSubalgebra:
    """k^{S\\G}: functions constant on right cosets Sg, a right coideal subalgebra of k^G."""
    if not is_subgroup(group, s):
        msg = "element set is not a subgroup"
        raise InputError(msg)
    h = h or dual_group_algebra(group)
    return right_coideal_subalgebra(h, coset_function_space(h, right_cosets(group, s)))


def dual_coideal_chain(group: FiniteGroup, series: GroupSeries,
                       h: HopfAlgebra | None = None) -> list[RightCoidealSubalgebra]:
    """k^{S_i\\G} for a subgroup chain G = S_0 ⊋ … ⊋ S_n = 1, listed k^G first.

    Every term is right normal (k^G is commutative), so maximal subgroup
    chains of different lengths give unrefinable coideal chains of different
    lengths.
    """
    h = h or dual_group_algebra(group)
    chain = [coideal_subalgebra_of_dual(group, s, h) for s in reversed(series.chain)]
    for k in chain:
        if not is_right_normal(k):
            msg = f"k^(S\\G) of dim {k.dim} is not right normal"
            raise InternalError(msg)
    return chain


# =============================================================================
# Morphisms from group data
# =============================================================================


def group_homomorphism_morphism(g1: FiniteGroup, g2: FiniteGroup, images: Sequence[int],
                                source: HopfAlgebra | None = None,
                                target: HopfAlgebra | None = None) -> HopfMorphism:
    """kG1 → kG2 induced by a group homomorphism."""
    if len(images) != g1.order or not is_homomorphism(g1, g2, images):
        msg = "images do not define a group homomorphism"
        raise InputError(msg)
    return HopfMorphism(source or group_algebra(g1), target or group_algebra(g2),
                        tuple({images[a]: 1} for a in range(g1.order)))


def inclusion_morphism(group: FiniteGroup, s: Subgroup) -> HopfMorphism:
    """kS → kG."""
    elems = sorted(s)
    sub = subgroup_group(group, s)
    return group_homomorphism_morphism(sub, group, elems)


def restriction_morphism(group: FiniteGroup, s: Subgroup) -> HopfMorphism:
    """k^G → k^S, restriction of functions (the dual of kS → kG)."""
    elems = sorted(s)
    pos = {x: i for i, x in enumerate(elems)}
    sub = subgroup_group(group, s)
    cols = tuple({pos[g]: 1} if g in pos else {} for g in range(group.order))
    return HopfMorphism(dual_group_algebra(group), dual_group_algebra(sub), cols)


def quotient_group_morphism(group: FiniteGroup, n: Subgroup) -> HopfMorphism:
    """kG → k(G/N), cosets ordered by their least element."""
    cs = cosets(group, n)
    where = {x: i for i, c in enumerate(cs) for x in c}
    return group_homomorphism_morphism(group, quotient_group(group, n),
                                       [where[g] for g in range(group.order)])


def sign_morphism(group: FiniteGroup) -> HopfMorphism:
    """kG → kC2 from the sign of a permutation group."""
    c2 = cyclic_group(2)
    odd = next(a for a in range(2) if a != c2.identity)
    return group_homomorphism_morphism(
        group, c2, [c2.identity if s == 0 else odd for s in sign_homomorphism(group)]
    )


# =============================================================================
# Matched pairs and abelian extensions
# =============================================================================


@dataclass(frozen=True, eq=False)
class MatchedPairData:
    """(F, Γ) with g ⊲ x = ract[g][x] ∈ Γ and g ⊳ x = lact[g][x] ∈ F.

    Cocycles are sparse: sigma[(x, y, g)] = σ_g(x, y) and tau[(s, t, x)] = τ_x(s, t);
    omitted values are 1.
    """

    F: FiniteGroup
    gamma: FiniteGroup
    ract: tuple[tuple[int, ...], ...]
    lact: tuple[tuple[int, ...], ...]
    sigma: Mapping[tuple[int, int, int], Scalar] = field(default_factory=dict)
    tau: Mapping[tuple[int, int, int], Scalar] = field(default_factory=dict)
    field: Field = QQ

    def __post_init__(self):
        nf, ng = self.F.order, self.gamma.order
        for name, table, bound in (("ract", self.ract, ng), ("lact", self.lact, nf)):
            if len(table) != ng or any(len(r) != nf for r in table):
                msg = f"{name} must be a {ng}x{nf} table"
                raise InputError(msg)
            if any(not 0 <= v < bound for r in table for v in r):
                msg = f"{name} has an entry out of range"
                raise InputError(msg)
        ef, eg = self.F.identity, self.gamma.identity
        if any(self.ract[g][ef] != g for g in range(ng)) or any(
            self.ract[eg][x] != eg for x in range(nf)
        ):
            msg = "right action ⊲ is not normalized (g⊲e = g, e⊲x = e)"
            raise DomainError(msg)
        if any(self.lact[eg][x] != x for x in range(nf)) or any(
            self.lact[g][ef] != ef for g in range(ng)
        ):
            msg = "left action ⊳ is not normalized (e⊳x = x, g⊳e = e)"
            raise DomainError(msg)
        for (x, y, g), c in self.sigma.items():
            self._check_entry("sigma", c, (x, y, g), x == ef or y == ef or g == eg)
        for (s, t, x), c in self.tau.items():
            self._check_entry("tau", c, (s, t, x), s == eg or t == eg or x == ef)

    def _check_entry(self, name: str, value: Scalar, key: tuple, on_boundary: bool) -> None:
        if not value:
            msg = f"{name}{key} is zero; cocycles must be invertible"
            raise DomainError(msg)
        if on_boundary and value != self.field.one:
            msg = f"{name}{key} = {value} violates normalization"
            raise DomainError(msg)

    def sigma_at(self, g: int, x: int, y: int) -> Scalar:
        return self.sigma.get((x, y, g), self.field.one)

    def tau_at(self, x: int, s: int, t: int) -> Scalar:
        return self.tau.get((s, t, x), self.field.one)

    @property
    def index_count(self) -> int:
        return self.gamma.order * self.F.order

    def index(self, g: int, x: int) -> int:
        return g * self.F.order + x

    def label(self, g: int, x: int) -> str:
        return f"e[{self.gamma.labels[g]}]#{self.F.labels[x]}"

    def lact_action(self) -> GroupAction:
        return GroupAction(self.gamma, self.F, self.lact)

    def ract_stable(self, s: Subgroup) -> bool:
        return all(self.ract[g][x] in s for g in s for x in range(self.F.order))

    def lact_stable(self, n: Subgroup) -> bool:
        return self.lact_action().stable(n)

    def to_json(self) -> dict:
        f = self.field
        return {
            "F": {"labels": list(self.F.labels), "table": [list(r) for r in self.F.table]},
            "Gamma": {
                "labels": list(self.gamma.labels),
                "table": [list(r) for r in self.gamma.table],
            },
            "ract": [list(r) for r in self.ract],
            "lact": [list(r) for r in self.lact],
            "sigma": [[x, y, g, f.format(c)] for (x, y, g), c in sorted(self.sigma.items())],
            "tau": [[s, t, x, f.format(c)] for (s, t, x), c in sorted(self.tau.items())],
        }


def extension_tag(mp: MatchedPairData) -> FactorTag:
    if mp.F.order == 1:
        return FactorTag.dual_group_algebra(mp.gamma)
    if mp.gamma.order == 1:
        return FactorTag.group_algebra(mp.F)
    return FactorTag(ABELIAN_EXTENSION, matched_pair=mp)


def build_extension(mp: MatchedPairData) -> HopfAlgebra:
    """Structure constants of k^Γ #^τ_σ kF, unverified."""
    gm, fg, f = mp.gamma, mp.F, mp.field
    ng, nf = gm.order, fg.order
    idx = mp.index
    mult = []
    for g in range(ng):
        for x in range(nf):
            h = mp.ract[g][x]
            for y in range(nf):
                mult.append((idx(g, x), idx(h, y), idx(g, fg.table[x][y]), mp.sigma_at(g, x, y)))
    comult = []
    for s in range(ng):
        for t in range(ng):
            g = gm.table[s][t]
            for x in range(nf):
                comult.append((idx(g, x), idx(s, mp.lact[t][x]), idx(t, x), mp.tau_at(x, s, t)))
    antipode = []
    for g in range(ng):
        for x in range(nf):
            gx = mp.ract[g][x]
            fx = mp.lact[g][x]
            coeff = f.inv(mp.sigma_at(gm.inv(gx), fg.inv(fx), fx)) * f.inv(
                mp.tau_at(x, gm.inv(g), g)
            )
            antipode.append((idx(g, x), idx(gm.inv(gx), fg.inv(fx)), coeff))
    return HopfAlgebra.build(
        f,
        [mp.label(g, x) for g in range(ng) for x in range(nf)],
        mult,
        [(idx(g, fg.identity), 1) for g in range(ng)],
        comult,
        [(idx(gm.identity, x), 1) for x in range(nf)],
        antipode,
        extension_tag(mp),
    )


@dataclass
class AbelianExtension:
    """k → k^Γ → H → kF → k together with its verification report."""

    algebra: HopfAlgebra
    matched_pair: MatchedPairData
    sequence: ExactSequence
    report: ExactnessReport


def extension_generators(mp: MatchedPairData, h: HopfAlgebra) -> list[SparseVector]:
    """e_g # 1 for every g and 1 # x for generators x of F."""
    gens = [h.e(mp.index(g, mp.F.identity)) for g in range(mp.gamma.order)]
    for x in mp.F.generators():
        gens.append({mp.index(g, x): h.field.one for g in range(mp.gamma.order)})
    return gens


def extension_sequence(mp: MatchedPairData, h: HopfAlgebra) -> tuple[HopfMorphism, HopfMorphism]:
    """i(e_g) = e_g # 1 and π = ε ⊗ id."""
    e_f, e_g = mp.F.identity, mp.gamma.identity
    i = HopfMorphism(
        dual_group_algebra(mp.gamma, mp.field), h,
        tuple({mp.index(g, e_f): 1} for g in range(mp.gamma.order)),
    )
    pi_cols = tuple(
        {x: 1} if g == e_g else {} for g in range(mp.gamma.order) for x in range(mp.F.order)
    )
    pi = HopfMorphism(h, group_algebra(mp.F, mp.field), pi_cols)
    return i, pi


def abelian_extension(mp: MatchedPairData) -> AbelianExtension:
    """Build, verify the axioms, and verify the exact sequence k^Γ → H → kF."""
    h = build_extension(mp)
    report = verify_axioms(h)
    if not report.passed:
        bad = report.first_failure
        msg = (
            f"matched pair data is incompatible: axiom {bad.name} fails at basis tuple "
            f"{list(bad.witness or ())}"
        )
        raise DomainError(msg)
    i, pi = extension_sequence(mp, h)
    exactness = verify_exact_sequence(i, pi, extension_generators(mp, h))
    if not exactness.exact:
        msg = f"extension sequence is not exact: {', '.join(exactness.violated)}"
        raise DomainError(msg)
    logger.info("built abelian extension of dim %d (|Γ|=%d, |F|=%d)",
                h.dim, mp.gamma.order, mp.F.order)
    return AbelianExtension(h, mp, exactness.sequence, exactness)


def drinfeld_double_pair(group: FiniteGroup, field: Field = QQ) -> MatchedPairData:
    """Trivial ⊳ and g ⊲ x = x⁻¹ g x on (F, Γ) = (G, G)."""
    n = group.order
    ract = tuple(tuple(group.conj(group.inv(x), g) for x in range(n)) for g in range(n))
    lact = tuple(tuple(range(n)) for _ in range(n))
    return MatchedPairData(group, group, ract, lact, field=field)


def drinfeld_double(group: FiniteGroup, field: Field = QQ, *, verify: bool = True) -> HopfAlgebra:
    """D(G) = k^G # kG."""
    mp = drinfeld_double_pair(group, field)
    if verify:
        return abelian_extension(mp).algebra
    return build_extension(mp)


def matched_pair_from_factorization(sigma_group: FiniteGroup, f_sub: Subgroup,
                                    gamma_sub: Subgroup, field: Field = QQ) -> MatchedPairData:
    """Exact factorization Σ = FΓ; γ·x = (γ⊳x)(γ⊲x) with γ⊳x ∈ F and γ⊲x ∈ Γ."""
    if not (is_subgroup(sigma_group, f_sub) and is_subgroup(sigma_group, gamma_sub)):
        msg = "F and Gamma must be subgroups of the factorized group"
        raise InputError(msg)
    if len(f_sub & gamma_sub) != 1 or len(f_sub) * len(gamma_sub) != sigma_group.order:
        msg = "F and Gamma do not give an exact factorization"
        raise DomainError(msg)
    fs, gs = sorted(f_sub), sorted(gamma_sub)
    fpos = {x: i for i, x in enumerate(fs)}
    gpos = {g: i for i, g in enumerate(gs)}
    split = {sigma_group.table[x][g]: (x, g) for x in fs for g in gs}
    ract, lact = [], []
    for g in gs:
        rrow, lrow = [], []
        for x in fs:
            fx, gx = split[sigma_group.table[g][x]]
            rrow.append(gpos[gx])
            lrow.append(fpos[fx])
        ract.append(tuple(rrow))
        lact.append(tuple(lrow))
    return MatchedPairData(
        subgroup_group(sigma_group, f_sub), subgroup_group(sigma_group, gamma_sub),
        tuple(ract), tuple(lact), field=field,
    )


# -- derived matched pairs ----------------------------------------------------


def restrict_gamma(mp: MatchedPairData, s: Subgroup) -> MatchedPairData:
    """(F, S) for S ⊆ Γ stable under ⊲; describes H/H(k^{Γ/S})⁺."""
    if not mp.ract_stable(s):
        msg = "subgroup of Gamma is not stable under the right action"
        raise DomainError(msg)
    elems = sorted(s)
    pos = {g: i for i, g in enumerate(elems)}
    return MatchedPairData(
        mp.F,
        subgroup_group(mp.gamma, s),
        tuple(tuple(pos[mp.ract[g][x]] for x in range(mp.F.order)) for g in elems),
        tuple(mp.lact[g] for g in elems),
        {(x, y, pos[g]): c for (x, y, g), c in mp.sigma.items() if g in pos},
        {(pos[a], pos[b], x): c for (a, b, x), c in mp.tau.items() if a in pos and b in pos},
        mp.field,
    )


def induced_pair(mp: MatchedPairData, s: Subgroup, n: Subgroup) -> MatchedPairData:
    """(N, Γ/S) describing k^{Γ/S} # kN, when the data descends to cosets."""
    gm = mp.gamma
    if not is_normal_subgroup(gm, s) or not is_normal_subgroup(mp.F, n):
        msg = "S and N must be normal subgroups"
        raise DomainError(msg)
    if not mp.lact_stable(n):
        msg = "subgroup of F is not stable under the left action"
        raise DomainError(msg)
    cs = cosets(gm, s)
    where = {g: i for i, c in enumerate(cs) for g in c}
    fs = sorted(n)
    fpos = {x: i for i, x in enumerate(fs)}

    def constant(values: list, what: str):
        if len(set(values)) != 1:
            msg = f"{what} does not descend to cosets"
            raise DomainError(msg)
        return values[0]

    ract = tuple(
        tuple(constant([where[mp.ract[g][x]] for g in c], "right action") for x in fs)
        for c in cs
    )
    lact = tuple(
        tuple(constant([fpos[mp.lact[g][x]] for g in c], "left action") for x in fs)
        for c in cs
    )
    sigma = {}
    for ci, c in enumerate(cs):
        for x in fs:
            for y in fs:
                v = constant([mp.sigma_at(g, x, y) for g in c], "sigma")
                if v != mp.field.one:
                    sigma[(fpos[x], fpos[y], ci)] = v
    tau = {}
    for ai, a in enumerate(cs):
        for bi, b in enumerate(cs):
            for x in fs:
                v = constant([mp.tau_at(x, p, q) for p in a for q in b], "tau")
                if v != mp.field.one:
                    tau[(ai, bi, fpos[x])] = v
    return MatchedPairData(
        subgroup_group(mp.F, n), quotient_group(gm, s), ract, lact, sigma, tau, mp.field
    )


def extension_space(mp: MatchedPairData, h: HopfAlgebra, s: Subgroup, n: Subgroup) -> Subspace:
    """k^{Γ/S} # kN: rows 1_C # x for cosets C of S and x ∈ N."""
    vecs = [
        {mp.index(g, x): 1 for g in c} for c in cosets(mp.gamma, s) for x in sorted(n)
    ]
    return canonicalize(vecs, h.dim, h.field)


# =============================================================================
# Lattice providers
# =============================================================================


def _adopt(algebra: HopfAlgebra | None, expected: HopfAlgebra) -> HopfAlgebra | None:
    if algebra is None:
        return expected
    if same_structure(algebra, expected):
        return with_provenance(algebra, expected.provenance)
    return None


class GroupAlgebraProvider(NormalLatticeProvider):
    kind = "group-algebra"

    def __init__(self, group: FiniteGroup, algebra: HopfAlgebra | None = None):
        adopted = _adopt(algebra, group_algebra(group, algebra.field if algebra else QQ))
        if adopted is None:
            msg = "algebra is not the group algebra of the given group"
            raise InternalError(msg)
        super().__init__(adopted)
        self.group = group

    def _lattice(self) -> list[Subspace]:
        return [subgroup_space(self.algebra, n) for n in normal_subgroups(self.group)]

    def generators(self) -> list[SparseVector]:
        return [self.algebra.e(g) for g in self.group.generators()]

    def subgroup_of(self, k: HopfSubalgebra) -> Subgroup:
        """Hopf subalgebras of kG are the spans kN."""
        k = self.own(k)
        support = frozenset(next(iter(r)) for r in k.rows if len(r) == 1)
        if len(support) != k.dim or not is_subgroup(self.group, support):
            msg = "subalgebra is not spanned by a subgroup"
            raise DomainError(msg)
        return support

    def for_subalgebra(self, k: HopfSubalgebra) -> NormalLatticeProvider:
        s = self.subgroup_of(k)
        return GroupAlgebraProvider(subgroup_group(self.group, s), self.own(k).algebra)

    def for_quotient(self, k: HopfSubalgebra) -> tuple[QuotientHopf, NormalLatticeProvider]:
        n = self.subgroup_of(k)
        q = self.quotient(k)
        return q, GroupAlgebraProvider(quotient_group(self.group, n, "max"), q.quotient)


class DualGroupProvider(NormalLatticeProvider):
    kind = "dual-group-algebra"

    def __init__(self, group: FiniteGroup, algebra: HopfAlgebra | None = None):
        adopted = _adopt(algebra, dual_group_algebra(group, algebra.field if algebra else QQ))
        if adopted is None:
            msg = "algebra is not the dual group algebra of the given group"
            raise InternalError(msg)
        super().__init__(adopted)
        self.group = group

    def _lattice(self) -> list[Subspace]:
        return [
            coset_function_space(self.algebra, cosets(self.group, s))
            for s in normal_subgroups(self.group)
        ]

    def subgroup_of(self, k: HopfSubalgebra) -> Subgroup:
        """k^{G/S} ↦ S, read off the indicator row through the identity."""
        k = self.own(k)
        e = self.group.identity
        row = next((r for r in k.rows if r.get(e)), None)
        s = frozenset(row) if row else frozenset()
        if not s or not is_normal_subgroup(self.group, s):
            msg = "subalgebra is not the function algebra of a quotient group"
            raise DomainError(msg)
        if coset_function_space(self.algebra, cosets(self.group, s)) != k.space:
            msg = "subalgebra is not the function algebra of a quotient group"
            raise DomainError(msg)
        return s

    def for_subalgebra(self, k: HopfSubalgebra) -> NormalLatticeProvider:
        s = self.subgroup_of(k)
        return DualGroupProvider(quotient_group(self.group, s), self.own(k).algebra)

    def for_quotient(self, k: HopfSubalgebra) -> tuple[QuotientHopf, NormalLatticeProvider]:
        s = self.subgroup_of(k)
        q = self.quotient(k)
        return q, DualGroupProvider(subgroup_group(self.group, s), q.quotient)


class AbelianExtensionProvider(NormalLatticeProvider):
    kind = "abelian-extension"

    def __init__(self, mp: MatchedPairData, algebra: HopfAlgebra | None = None):
        adopted = _adopt(algebra, build_extension(mp))
        if adopted is None:
            msg = "algebra does not match the matched-pair structure constants"
            raise InternalError(msg)
        super().__init__(adopted)
        self.mp = mp
        self._pairs: dict[Subspace, tuple[Subgroup, Subgroup]] = {}

    def generators(self) -> list[SparseVector]:
        return extension_generators(self.mp, self.algebra)

    def _lattice(self) -> list[Subspace]:
        mp, h = self.mp, self.algebra
        gens = self.generators()
        out = []
        for s in normal_subgroups(mp.gamma):
            if not mp.ract_stable(s):
                continue
            for n in normal_subgroups(mp.F):
                if not mp.lact_stable(n):
                    continue
                space = extension_space(mp, h, s, n)
                if hopf_subalgebra_failure(h, space) is not None:
                    continue
                if not is_normal(HopfSubalgebra(h, space), BOTH, gens):
                    continue
                self._pairs[space] = (s, n)
                out.append(space)
        return out

    def pair_of(self, k: HopfSubalgebra) -> tuple[Subgroup, Subgroup] | None:
        _ = self.normal_subalgebras
        return self._pairs.get(self.own(k).space)

    def for_subalgebra(self, k: HopfSubalgebra) -> NormalLatticeProvider:
        k = self.own(k)
        pair = self.pair_of(k)
        if pair is not None:
            try:
                provider = provider_for_matched_pair(induced_pair(self.mp, *pair), k.algebra)
            except DomainError:
                provider = None
            if provider is not None:
                return provider
        logger.debug("no family description for a subalgebra of dim %d; searching", k.dim)
        return SeededSearchProvider(with_provenance(k.algebra, None))

    def for_quotient(self, k: HopfSubalgebra) -> tuple[QuotientHopf, NormalLatticeProvider]:
        k = self.own(k)
        q = self.quotient(k)
        pair = self.pair_of(k)
        provider: NormalLatticeProvider | None = None
        if pair is not None:
            s, n = pair
            if len(n) == 1:
                provider = provider_for_matched_pair(restrict_gamma(self.mp, s), q.quotient)
            elif len(s) == 1:
                fq = quotient_group(self.mp.F, n, "max")
                if _adopt(q.quotient, group_algebra(fq, q.quotient.field)) is not None:
                    provider = GroupAlgebraProvider(fq, q.quotient)
        if provider is None:
            logger.debug("no family description for a quotient of dim %d; searching",
                         q.quotient.dim)
            provider = SeededSearchProvider(q.quotient)
        return q, provider


def provider_for_matched_pair(mp: MatchedPairData,
                              algebra: HopfAlgebra | None = None) -> NormalLatticeProvider | None:
    """Family provider for k^Γ #^τ_σ kF, or None when `algebra` has other structure constants."""
    if algebra is not None and not same_structure(algebra, build_extension(mp)):
        return None
    if mp.F.order == 1:
        return DualGroupProvider(mp.gamma, algebra)
    if mp.gamma.order == 1:
        return GroupAlgebraProvider(mp.F, algebra)
    return AbelianExtensionProvider(mp, algebra)


def provider_for(h: HopfAlgebra) -> NormalLatticeProvider:
    """Pick the exact family provider from provenance; fall back to seeded search."""
    tag = h.tag
    try:
        if tag.kind == GROUP_ALGEBRA:
            return GroupAlgebraProvider(tag.group, h)
        if tag.kind == DUAL_GROUP_ALGEBRA:
            return DualGroupProvider(tag.group, h)
        if tag.kind == ABELIAN_EXTENSION:
            provider = provider_for_matched_pair(tag.matched_pair, h)
            if provider is not None:
                return provider
        if tag.kind == DUAL_ABELIAN_EXTENSION:
            base = provider_for_matched_pair(tag.matched_pair)
            if base is not None and same_structure(dual(base.algebra), h):
                return DualProvider(h, base)
    except InternalError:
        logger.debug("provenance tag %s does not match the structure constants", tag.kind)
    return SeededSearchProvider(h)


# =============================================================================
# Lower composition series of abelian extensions
# =============================================================================


def abelian_ext_lower_series(mp: MatchedPairData,
                             provider: AbelianExtensionProvider | None = None,
                             gamma_chain: Sequence[Subgroup] | None = None,
                             f_chain: Sequence[Subgroup] | None = None) -> SubnormalSeries:
    """H ⊇ k^Γ#kF_1 ⊇ … ⊇ k^Γ ⊇ k^{Γ/Γ_{n-1}} ⊇ … ⊇ k^{Γ/Γ_1} ⊇ k, verified.

    Defaults: the first chief series of Γ and the first Γ-composition series
    of F (both outermost-first).
    """
    provider = provider or AbelianExtensionProvider(mp)
    h = provider.algebra
    if gamma_chain is None:
        gamma_chain = chief_series_group(mp.gamma)[0].chain
    if f_chain is None:
        f_chain = gamma_composition_series(mp.lact_action())[0].chain
    for n in f_chain:
        if not mp.lact_stable(n):
            msg = f"term of order {len(n)} of the F-series is not Gamma-stable"
            raise DomainError(msg)
    trivial_f = frozenset({mp.F.identity})
    trivial_g = frozenset({mp.gamma.identity})
    spaces = [extension_space(mp, h, trivial_g, n) for n in f_chain[:-1]]
    spaces += [extension_space(mp, h, s, trivial_f) for s in reversed(gamma_chain)]
    chain = tuple(HopfSubalgebra(h, space) for space in spaces)
    series = SubnormalSeries("lower", h, chain=chain)
    if not is_lower_composition_series(series, provider):
        msg = "the displayed chain is not a lower composition series"
        raise DomainError(msg)
    return series


def extension_chain_subalgebra(mp: MatchedPairData, h: HopfAlgebra, s: Subgroup,
                               n: Subgroup) -> HopfSubalgebra:
    """k^{Γ/S} # kN as a verified Hopf subalgebra."""
    space = extension_space(mp, h, s, n)
    reason = hopf_subalgebra_failure(h, space)
    if reason:
        msg = f"k^(Gamma/S) # kN is not a Hopf subalgebra: {reason}"
        raise DomainError(msg)
    return HopfSubalgebra(h, space)


def matched_pair_from_json_tables(f_group: FiniteGroup, gamma: FiniteGroup,
                                  ract: Sequence[Sequence[int]], lact: Sequence[Sequence[int]],
                                  sigma: Mapping[tuple[int, int, int], Any] | None = None,
                                  tau: Mapping[tuple[int, int, int], Any] | None = None,
                                  field: Field = QQ) -> MatchedPairData:
    """Coerce raw table data into a MatchedPairData."""
    return MatchedPairData(
        f_group, gamma,
        tuple(tuple(int(v) for v in row) for row in ract),
        tuple(tuple(int(v) for v in row) for row in lact),
        {k: field.coerce(v) for k, v in (sigma or {}).items()},
        {k: field.coerce(v) for k, v in (tau or {}).items()},
        field,
    )

