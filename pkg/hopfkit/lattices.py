"""Normal Hopf subalgebra lattices.

A provider knows the normal Hopf subalgebras of one Hopf algebra and can
hand out providers for its normal subalgebras and for its quotients, which
is all the series recursions need. Construction families supply exact
providers (``hopfkit.constructions``); this module holds the generic ones:

    SeededSearchProvider  normal closures of seed vectors (semi-decision)
    TransportProvider     a known lattice moved along an explicit isomorphism
    DualProvider          the lattice of H* read off the Hopf ideals of H
"""

from __future__ import annotations

import logging
from abc import ABC, abstractmethod
from collections.abc import Sequence
from functools import cached_property

from hopfkit.errors import DomainError, InputError, InternalError
from hopfkit.exact_linear import SparseVector, Subspace, annihilator, canonicalize, invert
from hopfkit.hopf_core import (
    HopfAlgebra,
    HopfMorphism,
    dual,
    grouplikes,
    same_structure,
    with_provenance,
)
from hopfkit.subobjects import (
    HopfSubalgebra,
    QuotientHopf,
    basis_vectors,
    coinvariants,
    hopf_ideal,
    is_normal,
    normal_closure,
    quotient,
    quotient_by_ideal,
)

logger = logging.getLogger(__name__)


def lattice_key(k: HopfSubalgebra) -> tuple:
    return (k.dim, k.space.basis)


class NormalLatticeProvider(ABC):
    """Normal Hopf subalgebras of ``algebra``, including k and the whole algebra."""

    kind = "abstract"
    search_based = False

    def __init__(self, algebra: HopfAlgebra):
        self.algebra = algebra

    # -- lattice --------------------------------------------------------------

    @abstractmethod
    def _lattice(self) -> list[Subspace]:
        """Spaces of all normal Hopf subalgebras."""

    @cached_property
    def normal_subalgebras(self) -> list[HopfSubalgebra]:
        seen: set[Subspace] = set()
        out = []
        for space in self._lattice():
            if space not in seen:
                seen.add(space)
                out.append(HopfSubalgebra(self.algebra, space))
        out.sort(key=lattice_key)
        logger.debug("%s lattice of %s: %s", self.kind, self.algebra.describe(),
                     [k.dim for k in out])
        return out

    def proper_nontrivial(self) -> list[HopfSubalgebra]:
        n = self.algebra.dim
        return [k for k in self.normal_subalgebras if 1 < k.dim < n]

    def maximal_normal(self) -> list[HopfSubalgebra]:
        """Proper normal Hopf subalgebras not strictly inside another proper one."""
        proper = [k for k in self.normal_subalgebras if k.dim < self.algebra.dim]
        return [
            k for k in proper
            if not any(o.dim > k.dim and k.space.is_subspace_of(o.space) for o in proper)
        ]

    def minimal_normal(self) -> list[HopfSubalgebra]:
        """Nontrivial normal Hopf subalgebras with no nontrivial normal one strictly inside."""
        nontrivial = [k for k in self.normal_subalgebras if k.dim > 1]
        return [
            k for k in nontrivial
            if not any(o.dim < k.dim and o.space.is_subspace_of(k.space) for o in nontrivial)
        ]

    def is_member(self, k: HopfSubalgebra) -> bool:
        k = self.own(k)
        return any(k.space == o.space for o in self.normal_subalgebras)

    def generators(self) -> list[SparseVector]:
        """Vectors generating the algebra; adjoint stability is tested against these."""
        return basis_vectors(self.algebra)

    def own(self, k: HopfSubalgebra) -> HopfSubalgebra:
        """Re-anchor a subalgebra given on an equal-structure copy of the algebra."""
        if k.parent is self.algebra:
            return k
        if k.parent.dim == self.algebra.dim and same_structure(k.parent, self.algebra):
            return HopfSubalgebra(self.algebra, k.space)
        msg = "subalgebra does not belong to this provider's Hopf algebra"
        raise InputError(msg)

    # -- recursion ------------------------------------------------------------

    @abstractmethod
    def for_subalgebra(self, k: HopfSubalgebra) -> NormalLatticeProvider:
        """Provider whose algebra is the standalone ``k.algebra`` (suitably tagged)."""

    @abstractmethod
    def for_quotient(self, k: HopfSubalgebra) -> tuple[QuotientHopf, NormalLatticeProvider]:
        """H/HK⁺ together with a provider for it."""

    def quotient(self, k: HopfSubalgebra) -> QuotientHopf:
        k = self.own(k)
        known = self.is_member(k)
        return quotient(self.algebra, k, check=not known, generators=self.generators())

    def check_normal(self, k: HopfSubalgebra) -> None:
        k = self.own(k)
        if not self.is_member(k) and not is_normal(k, "right", self.generators()):
            msg = f"Hopf subalgebra of dim {k.dim} is not normal"
            raise DomainError(msg)

    def describe(self) -> dict:
        return {"provider": self.kind, "search_based": self.search_based}


# =============================================================================
# Seeded search
# =============================================================================


class SeededSearchProvider(NormalLatticeProvider):
    """Normal closures of basis vectors, grouplikes and pairwise joins.

    Complete for pointed and group-built inputs; a semi-decision procedure in
    general, so every result is flagged search-based.
    """

    kind = "seeded-search"
    search_based = True

    def _lattice(self) -> list[Subspace]:
        h = self.algebra
        gens = self.generators()
        found: dict[Subspace, HopfSubalgebra] = {}

        def add(seed: Sequence[SparseVector]) -> None:
            k = normal_closure(h, seed, gens)
            found.setdefault(k.space, k)

        add([])
        seeds = {i: h.e(i) for i in range(h.dim)}
        for i in grouplikes(h):
            seeds.setdefault(i, h.e(i))
        for vec in seeds.values():
            add([vec])
        level = list(found.values())
        for a_idx, a in enumerate(level):
            for b in level[a_idx + 1:]:
                if not a.space.is_subspace_of(b.space) and not b.space.is_subspace_of(a.space):
                    add([*a.rows, *b.rows])
        logger.debug("seeded search found %d normal Hopf subalgebras in dim %d",
                     len(found), h.dim)
        return list(found)

    def for_subalgebra(self, k: HopfSubalgebra) -> NormalLatticeProvider:
        k = self.own(k)
        return SeededSearchProvider(with_provenance(k.algebra, None))

    def for_quotient(self, k: HopfSubalgebra) -> tuple[QuotientHopf, NormalLatticeProvider]:
        q = self.quotient(k)
        return q, SeededSearchProvider(q.quotient)


# =============================================================================
# Transport along an isomorphism
# =============================================================================


class TransportProvider(NormalLatticeProvider):
    """Lattice of ``algebra`` pulled back from ``base`` along iso: algebra → base.algebra."""

    kind = "transport"

    def __init__(self, algebra: HopfAlgebra, base: NormalLatticeProvider,
                 iso_columns: Sequence[SparseVector]):
        super().__init__(with_provenance(algebra, base.algebra.provenance))
        self.base = base
        self.iso = HopfMorphism(self.algebra, base.algebra, tuple(iso_columns))
        if not self.iso.bijective:
            msg = "transport map is not bijective"
            raise InternalError(msg)
        self.inverse = invert(self.iso.columns, algebra.field)

    @property
    def search_based(self) -> bool:
        return self.base.search_based

    def _pull(self, vec: SparseVector) -> SparseVector:
        out: SparseVector = {}
        for j, c in vec.items():
            for k, v in self.inverse[j].items():
                s = out.get(k, 0) + c * v
                if s:
                    out[k] = s
                else:
                    del out[k]
        return out

    def _push(self, k: HopfSubalgebra) -> HopfSubalgebra:
        b = self.base.algebra
        return HopfSubalgebra(b, canonicalize([self.iso(r) for r in k.rows], b.dim, b.field))

    def _lattice(self) -> list[Subspace]:
        a = self.algebra
        return [
            canonicalize([self._pull(r) for r in k.rows], a.dim, a.field)
            for k in self.base.normal_subalgebras
        ]

    def generators(self) -> list[SparseVector]:
        return [self._pull(g) for g in self.base.generators()]

    def for_subalgebra(self, k: HopfSubalgebra) -> NormalLatticeProvider:
        k = self.own(k)
        image = self._push(k)
        sub = self.base.for_subalgebra(image)
        cols = [image.coordinates(self.iso(r)) for r in k.rows]
        return TransportProvider(k.algebra, sub, cols)

    def for_quotient(self, k: HopfSubalgebra) -> tuple[QuotientHopf, NormalLatticeProvider]:
        k = self.own(k)
        q = self.quotient(k)
        qb, sub = self.base.for_quotient(self._push(k))
        cols = [qb.projection(self.iso(q.lift({b: 1}))) for b in range(q.quotient.dim)]
        return q, TransportProvider(q.quotient, sub, cols)

    def describe(self) -> dict:
        return {**super().describe(), "base": self.base.describe()}


# =============================================================================
# Duality
# =============================================================================


class DualProvider(NormalLatticeProvider):
    """Normal Hopf subalgebras of H* are the annihilators (HK⁺)^⊥ of normal K ⊆ H.

    ``algebra`` must be ``dual(base.algebra)`` on the dual basis.
    """

    kind = "dual"

    def __init__(self, algebra: HopfAlgebra, base: NormalLatticeProvider):
        super().__init__(algebra)
        self.base = base
        self._partner: dict[Subspace, HopfSubalgebra] = {}

    @classmethod
    def of(cls, base: NormalLatticeProvider) -> DualProvider:
        return cls(dual(base.algebra), base)

    @property
    def search_based(self) -> bool:
        return self.base.search_based

    def _lattice(self) -> list[Subspace]:
        h = self.base.algebra
        out = []
        for k in self.base.normal_subalgebras:
            ideal = hopf_ideal(k, check=False, generators=self.base.generators())
            space = annihilator(ideal)
            self._partner[space] = k
            out.append(space)
        logger.debug("dual lattice of dim %d read off %d Hopf ideals", h.dim, len(out))
        return out

    def partner(self, l_sub: HopfSubalgebra) -> HopfSubalgebra:
        """The normal K ⊆ H with L = (HK⁺)^⊥."""
        l_sub = self.own(l_sub)
        _ = self.normal_subalgebras
        known = self._partner.get(l_sub.space)
        if known is not None:
            return known
        h = self.base.algebra
        projection = quotient_by_ideal(h, annihilator(l_sub.space)).projection
        return HopfSubalgebra(h, coinvariants(projection, "left"))

    def for_subalgebra(self, l_sub: HopfSubalgebra) -> NormalLatticeProvider:
        # L ≅ (H/HK⁺)*: the quotient's dual basis vector q_b* is the functional
        # e_j ↦ π(e_j)[b], whose value at the complement coordinate q_c is δ_bc.
        l_sub = self.own(l_sub)
        k = self.partner(l_sub)
        q, q_provider = self.base.for_quotient(k)
        dual_q = DualProvider.of(q_provider)
        cols = [{b: r[p] for b, p in enumerate(q.complement) if r.get(p)} for r in l_sub.rows]
        return TransportProvider(l_sub.algebra, dual_q, cols)

    def for_quotient(self, l_sub: HopfSubalgebra) -> tuple[QuotientHopf, NormalLatticeProvider]:
        # H*/H*L⁺ ≅ K*: a functional restricts to K's RREF basis k_a.
        l_sub = self.own(l_sub)
        k = self.partner(l_sub)
        q = self.quotient(l_sub)
        k_provider = self.base.for_subalgebra(k)
        dual_k = DualProvider.of(k_provider)
        cols = []
        for p in q.complement:
            cols.append({a: row[p] for a, row in enumerate(k.rows) if row.get(p)})
        return q, TransportProvider(q.quotient, dual_k, cols)

    def describe(self) -> dict:
        return {**super().describe(), "base": self.base.describe()}
