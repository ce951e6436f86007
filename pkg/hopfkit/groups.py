"""Finite-group oracle.

Groups are Cayley tables over element indices 0..n-1. Subgroups are
``frozenset`` index sets; every chain is stored outermost-first (the whole
group first, the trivial subgroup last). Permutation input goes through
sympy's permutation groups.
"""

from __future__ import annotations

import logging
import re
from collections import Counter
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass, field
from functools import cached_property

from sympy.combinatorics import Permutation, PermutationGroup

from hopfkit.config import NAMED_GROUPS, ORDER_CAP
from hopfkit.errors import InputError, UnsupportedOperationError

logger = logging.getLogger(__name__)

type Subgroup = frozenset[int]

_CYCLE_RE = re.compile(r"\(([^()]*)\)")
_NAME_RE = re.compile(r"^([CSAD])(\d+)$")


# =============================================================================
# FiniteGroup
# =============================================================================


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """A finite group given by its Cayley table (table[a][b] = index of a·b)."""

    labels: tuple[str, ...]
    table: tuple[tuple[int, ...], ...]
    name: str | None = None
    permutations: tuple[Permutation, ...] | None = field(default=None, repr=False)

    def __post_init__(self):
        n = len(self.table)
        if n == 0:
            msg = "a group needs at least one element"
            raise InputError(msg)
        if n > ORDER_CAP:
            msg = f"group order {n} exceeds the order cap {ORDER_CAP}"
            raise UnsupportedOperationError(msg)
        if len(self.labels) != n:
            msg = f"{len(self.labels)} labels for a table of order {n}"
            raise InputError(msg)
        for a, row in enumerate(self.table):
            if len(row) != n or any(not 0 <= x < n for x in row):
                msg = f"row {a} of the Cayley table is malformed"
                raise InputError(msg)
            if len(set(row)) != n:
                msg = f"row {a} of the Cayley table is not a permutation"
                raise InputError(msg)
        _ = self.identity
        t = self.table
        for a in range(n):
            ta = t[a]
            for b in range(n):
                tab = t[ta[b]]
                tb = t[b]
                for c in range(n):
                    if tab[c] != ta[tb[c]]:
                        msg = f"table is not associative at ({a}, {b}, {c})"
                        raise InputError(msg)

    # -- basic structure ------------------------------------------------------

    @property
    def order(self) -> int:
        return len(self.table)

    @cached_property
    def identity(self) -> int:
        n = len(self.table)
        for e in range(n):
            if all(self.table[e][x] == x and self.table[x][e] == x for x in range(n)):
                return e
        msg = "table has no identity element"
        raise InputError(msg)

    @cached_property
    def inverses(self) -> tuple[int, ...]:
        e = self.identity
        return tuple(row.index(e) for row in self.table)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverses[a]

    def conj(self, g: int, x: int) -> int:
        """g x g⁻¹."""
        return self.table[self.table[g][x]][self.inverses[g]]

    @cached_property
    def element_orders(self) -> tuple[int, ...]:
        orders = []
        for a in range(self.order):
            k, x = 1, a
            while x != self.identity:
                x = self.table[x][a]
                k += 1
            orders.append(k)
        return tuple(orders)

    @cached_property
    def is_abelian(self) -> bool:
        n = self.order
        return all(self.table[a][b] == self.table[b][a] for a in range(n) for b in range(a))

    @cached_property
    def conjugacy_classes(self) -> tuple[frozenset[int], ...]:
        seen: set[int] = set()
        classes = []
        for x in range(self.order):
            if x in seen:
                continue
            cls = frozenset(self.conj(g, x) for g in range(self.order))
            seen |= cls
            classes.append(cls)
        return tuple(classes)

    @cached_property
    def display_name(self) -> str:
        """Given name, else Cn / V4 when recognisable, else the canonical id."""
        if self.name:
            return self.name
        n = self.order
        if n == 1:
            return "1"
        if max(self.element_orders) == n:
            return f"C{n}"
        if n == 4:
            return "V4"
        return self.canonical_id

    @cached_property
    def canonical_id(self) -> str:
        """Order plus a sorted profile of (element order, class size) counts."""
        profile = Counter(
            (self.element_orders[min(c)], len(c)) for c in self.conjugacy_classes
        )
        body = ",".join(f"{o}.{s}x{m}" for (o, s), m in sorted(profile.items()))
        kind = "ab" if self.is_abelian else "na"
        return f"G{self.order}:{kind}:n{len(self.normal_lattice)}:{body}"

    def index_of(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            pass
        if self.permutations is not None:
            target = parse_permutation(label, self.permutations[0].size)
            for i, p in enumerate(self.permutations):
                if p == target:
                    return i
        msg = f"no element labelled {label!r} in {self.name or 'group'}"
        raise InputError(msg)

    def closure(self, gens: Iterable[int]) -> Subgroup:
        gens = list(gens)
        elems = {self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.table[x][g]
                    if y not in elems:
                        elems.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(elems)

    @cached_property
    def subgroup_lattice(self) -> tuple[Subgroup, ...]:
        return tuple(_enumerate_subgroups(self))

    @cached_property
    def normal_lattice(self) -> tuple[Subgroup, ...]:
        return tuple(s for s in self.subgroup_lattice if is_normal_subgroup(self, s))

    @property
    def whole(self) -> Subgroup:
        return frozenset(range(self.order))

    @property
    def trivial(self) -> Subgroup:
        return frozenset({self.identity})

    def generators(self) -> list[int]:
        """Greedy generating set, highest element order first."""
        gens: list[int] = []
        span = self.trivial
        by_order = sorted(range(self.order), key=lambda a: (-self.element_orders[a], a))
        for a in by_order:
            if a not in span:
                gens.append(a)
                span = self.closure(gens)
            if len(span) == self.order:
                break
        return gens


# =============================================================================
# Builders
# =============================================================================


def parse_permutation(text: str, degree: int | None = None) -> Permutation:
    """Parse cycle notation with 1-based points, e.g. "(1 2 3)(4 5)"."""
    stripped = text.strip()
    if not re.fullmatch(r"(\([^()]*\)\s*)*", stripped):
        msg = f"bad cycle notation {text!r}"
        raise InputError(msg)
    cycles = []
    for body in _CYCLE_RE.findall(stripped):
        parts = body.replace(",", " ").split()
        try:
            points = [int(p) - 1 for p in parts]
        except ValueError as e:
            msg = f"bad point in cycle {body!r}"
            raise InputError(msg) from e
        if any(p < 0 for p in points) or len(set(points)) != len(points):
            msg = f"bad cycle {body!r}"
            raise InputError(msg)
        if len(points) > 1:
            cycles.append(points)
    size = max([max(c) + 1 for c in cycles] + [degree or 1])
    return Permutation(cycles, size=size)


def format_permutation(p: Permutation) -> str:
    cycles = p.cyclic_form
    if not cycles:
        return "()"
    return "".join("(" + " ".join(str(x + 1) for x in c) + ")" for c in cycles)


def from_permutations(gens: Iterable[str | Permutation], name: str | None = None) -> FiniteGroup:
    """Close a set of permutations into a group; elements sorted by array form."""
    raw = [parse_permutation(g) if isinstance(g, str) else g for g in gens]
    degree = max([p.size for p in raw] + [1])
    perms = [Permutation(p.array_form + list(range(p.size, degree))) for p in raw]
    if not perms:
        perms = [Permutation(list(range(degree)))]
    pg = PermutationGroup(perms)
    if pg.order() > ORDER_CAP:
        msg = f"group order {pg.order()} exceeds the order cap {ORDER_CAP}"
        raise UnsupportedOperationError(msg)
    elements = sorted(pg.elements, key=lambda p: p.array_form)
    index = {tuple(p.array_form): i for i, p in enumerate(elements)}
    # a·b = a∘b: apply b first; sympy's p*q applies p first
    table = tuple(
        tuple(index[tuple((b * a).array_form)] for b in elements) for a in elements
    )
    labels = tuple(format_permutation(p) for p in elements)
    logger.debug("closed %d generators into a group of order %d", len(perms), len(elements))
    return FiniteGroup(labels, table, name, tuple(elements))


def from_table(table: Sequence[Sequence[int]], labels: Sequence[str] | None = None,
               name: str | None = None) -> FiniteGroup:
    rows = tuple(tuple(int(x) for x in row) for row in table)
    if labels is None:
        labels = [str(i) for i in range(len(rows))]
    return FiniteGroup(tuple(labels), rows, name)


def named(name: str) -> FiniteGroup:
    """Cn, Sn (n ≤ 5), An (n ≤ 5), Dn (dihedral of order n) or V4."""
    if name == "V4":
        return from_permutations(["(1 2)(3 4)", "(1 3)(2 4)"], "V4")
    m = _NAME_RE.match(name)
    if not m:
        known = ", ".join(NAMED_GROUPS)
        msg = f"unknown group name {name!r}; expected one of {known}"
        raise InputError(msg)
    kind, n = m.group(1), int(m.group(2))
    if n < 1:
        msg = f"group name {name!r} needs n >= 1"
        raise InputError(msg)
    if kind == "C":
        if n > ORDER_CAP:
            msg = f"C{n} exceeds the order cap {ORDER_CAP}"
            raise UnsupportedOperationError(msg)
        cycle = "(" + " ".join(str(i) for i in range(1, n + 1)) + ")"
        return from_permutations([cycle] if n > 1 else [], name)
    if kind in "SA" and n > 5:
        msg = f"{name} is not supported (n <= 5)"
        raise UnsupportedOperationError(msg)
    if kind == "S":
        gens = [] if n == 1 else ["(1 2)", "(" + " ".join(str(i) for i in range(1, n + 1)) + ")"]
        return from_permutations(gens, name)
    if kind == "A":
        return from_permutations([f"(1 2 {k})" for k in range(3, n + 1)], name)
    if n % 2 or n < 4:
        msg = f"dihedral group order must be even and >= 4, got {n}"
        raise InputError(msg)
    if n == 4:
        return from_permutations(["(1 2)", "(3 4)"], name)
    k = n // 2
    rotation = "(" + " ".join(str(i) for i in range(1, k + 1)) + ")"
    reflection = "".join(f"({i} {k + 1 - i})" for i in range(1, k // 2 + 1))
    return from_permutations([rotation, reflection], name)


def cyclic_group(n: int) -> FiniteGroup:
    return named(f"C{n}")


def direct_product(g1: FiniteGroup, g2: FiniteGroup) -> FiniteGroup:
    n2 = g2.order
    labels = tuple(f"{a}|{b}" for a in g1.labels for b in g2.labels)
    table = tuple(
        tuple(
            g1.table[a][c] * n2 + g2.table[b][d]
            for c in range(g1.order)
            for d in range(n2)
        )
        for a in range(g1.order)
        for b in range(n2)
    )
    name = f"{g1.name}x{g2.name}" if g1.name and g2.name else None
    return FiniteGroup(labels, table, name)


def elementary_abelian(p: int, k: int) -> FiniteGroup:
    group = cyclic_group(p)
    for _ in range(k - 1):
        group = direct_product(group, cyclic_group(p))
    return group


# =============================================================================
# Subgroups, cosets, sections
# =============================================================================


def _sorted_subgroups(subs: Iterable[Subgroup]) -> list[Subgroup]:
    return sorted(subs, key=lambda s: (len(s), sorted(s)))


def subgroups(group: FiniteGroup) -> list[Subgroup]:
    """All subgroups, sorted by (order, elements)."""
    return list(group.subgroup_lattice)


def _enumerate_subgroups(group: FiniteGroup) -> list[Subgroup]:
    """Subgroups as joins of cyclic subgroups."""
    cyclic = {group.closure([a]) for a in range(group.order)}
    found = set(cyclic)
    frontier = list(cyclic)
    while frontier:
        nxt = []
        for h in frontier:
            for c in cyclic:
                if c <= h:
                    continue
                j = group.closure(h | c)
                if j not in found:
                    found.add(j)
                    nxt.append(j)
        frontier = nxt
    result = _sorted_subgroups(found)
    logger.debug("enumerated %d subgroups of a group of order %d", len(result), group.order)
    return result


def is_subgroup(group: FiniteGroup, s: Iterable[int]) -> bool:
    s = frozenset(s)
    return group.identity in s and all(group.table[a][b] in s for a in s for b in s)


def is_normal_subgroup(group: FiniteGroup, s: Subgroup, within: Subgroup | None = None) -> bool:
    """Is s normal in `within` (default: the whole group)?"""
    within = group.whole if within is None else within
    return s <= within and all(group.conj(g, x) in s for g in within for x in s)


def normal_subgroups(group: FiniteGroup) -> list[Subgroup]:
    return list(group.normal_lattice)


def subgroups_of(group: FiniteGroup, h: Subgroup) -> list[Subgroup]:
    return [s for s in subgroups(group) if s <= h]


def cosets(group: FiniteGroup, n: Subgroup, order: str = "min") -> list[tuple[int, ...]]:
    """Left cosets gN sorted by their min (or max) element."""
    seen: set[int] = set()
    out = []
    for g in range(group.order):
        if g in seen:
            continue
        c = frozenset(group.table[g][x] for x in n)
        seen |= c
        out.append(tuple(sorted(c)))
    pick = min if order == "min" else max
    return sorted(out, key=pick)


def subgroup_group(group: FiniteGroup, s: Iterable[int], name: str | None = None) -> FiniteGroup:
    """The subgroup s as a group in its own right; elements in increasing parent order."""
    elems = sorted(s)
    pos = {x: i for i, x in enumerate(elems)}
    try:
        table = tuple(tuple(pos[group.table[a][b]] for b in elems) for a in elems)
    except KeyError as e:
        msg = "element set is not closed under multiplication"
        raise InputError(msg) from e
    perms = None
    if group.permutations is not None:
        perms = tuple(group.permutations[x] for x in elems)
    return FiniteGroup(tuple(group.labels[x] for x in elems), table, name, perms)


def quotient_group(group: FiniteGroup, n: Subgroup, order: str = "min") -> FiniteGroup:
    """G/N with cosets ordered by their min (or max) element and labelled by it."""
    if not is_normal_subgroup(group, n):
        msg = "quotient by a non-normal subgroup"
        raise InputError(msg)
    cs = cosets(group, n, order)
    pick = min if order == "min" else max
    reps = [pick(c) for c in cs]
    where = {x: i for i, c in enumerate(cs) for x in c}
    table = tuple(tuple(where[group.table[a][b]] for b in reps) for a in reps)
    return FiniteGroup(tuple(group.labels[r] for r in reps), table)


def section(group: FiniteGroup, upper: Subgroup, lower: Subgroup) -> FiniteGroup:
    """upper/lower for lower normal in upper."""
    sub = subgroup_group(group, upper)
    elems = sorted(upper)
    pos = {x: i for i, x in enumerate(elems)}
    return quotient_group(sub, frozenset(pos[x] for x in lower))


# =============================================================================
# Series
# =============================================================================


@dataclass(frozen=True, eq=False)
class GroupSeries:
    """A chain of subgroups, outermost-first."""

    group: FiniteGroup
    chain: tuple[Subgroup, ...]
    kind: str

    @property
    def length(self) -> int:
        return len(self.chain) - 1

    @cached_property
    def factors(self) -> tuple[FiniteGroup, ...]:
        if self.kind == "maximal-chain":
            return ()
        return tuple(
            section(self.group, self.chain[i], self.chain[i + 1]) for i in range(self.length)
        )

    def factor_ids(self) -> list[str]:
        return sorted(f.canonical_id for f in self.factors)

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "length": self.length,
            "chain": [[self.group.labels[x] for x in sorted(s)] for s in self.chain],
            "orders": [len(s) for s in self.chain],
        }


def _maximal_among(candidates: list[Subgroup], top: Subgroup) -> list[Subgroup]:
    proper = [s for s in candidates if s < top]
    return [s for s in proper if not any(s < t for t in proper)]


def _walk(group: FiniteGroup, top: Subgroup, children: Callable[[Subgroup], list[Subgroup]],
          kind: str) -> list[GroupSeries]:
    out: list[GroupSeries] = []

    def dfs(chain: list[Subgroup]) -> None:
        cur = chain[-1]
        if len(cur) == 1:
            out.append(GroupSeries(group, tuple(chain), kind))
            return
        for nxt in children(cur):
            dfs([*chain, nxt])

    dfs([top])
    return out


def composition_series_group(group: FiniteGroup) -> list[GroupSeries]:
    """All composition series, each step a maximal normal subgroup of the previous term."""

    def children(cur: Subgroup) -> list[Subgroup]:
        normal_in_cur = [s for s in subgroups_of(group, cur) if is_normal_subgroup(group, s, cur)]
        return _maximal_among(normal_in_cur, cur)

    return _walk(group, group.whole, children, "composition")


def chief_series_group(group: FiniteGroup) -> list[GroupSeries]:
    """All chief series: chains of normal subgroups of G with no normal subgroup in between."""
    normals = normal_subgroups(group)

    def children(cur: Subgroup) -> list[Subgroup]:
        return _maximal_among([s for s in normals if s <= cur], cur)

    return _walk(group, group.whole, children, "chief")


@dataclass(frozen=True, eq=False)
class GroupAction:
    """Action of `acting` on the elements of `target`: table[g][x] = g ▹ x."""

    acting: FiniteGroup
    target: FiniteGroup
    table: tuple[tuple[int, ...], ...]

    def stable(self, s: Subgroup) -> bool:
        return all(self.table[g][x] in s for g in range(self.acting.order) for x in s)


def trivial_action(acting: FiniteGroup, target: FiniteGroup) -> GroupAction:
    row = tuple(range(target.order))
    return GroupAction(acting, target, tuple(row for _ in range(acting.order)))


def conjugation_action(group: FiniteGroup) -> GroupAction:
    table = tuple(tuple(group.conj(g, x) for x in range(group.order)) for g in range(group.order))
    return GroupAction(group, group, table)


def gamma_composition_series(action: GroupAction) -> list[GroupSeries]:
    """Γ-subnormal series of F with no proper Γ-stable refinement."""
    f = action.target
    stable = [s for s in subgroups(f) if action.stable(s)]

    def children(cur: Subgroup) -> list[Subgroup]:
        cands = [s for s in stable if s < cur and is_normal_subgroup(f, s, cur)]
        out = []
        for n in cands:
            between = any(
                n < s < cur and is_normal_subgroup(f, s, cur) and is_normal_subgroup(f, n, s)
                for s in cands
            )
            if not between:
                out.append(n)
        return out

    return _walk(f, f.whole, children, "gamma-composition")


def maximal_subgroup_chains(group: FiniteGroup) -> list[GroupSeries]:
    """Every chain G = G_0 ⊋ G_1 ⊋ … ⊋ 1 with each G_{i+1} maximal in G_i."""
    subs = subgroups(group)

    def children(cur: Subgroup) -> list[Subgroup]:
        return _maximal_among([s for s in subs if s <= cur], cur)

    return _walk(group, group.whole, children, "maximal-chain")


def chain_lengths(chains: Iterable[GroupSeries]) -> set[int]:
    return {c.length for c in chains}


# =============================================================================
# Isomorphism and invariants
# =============================================================================


def _order_profile(group: FiniteGroup) -> list[int]:
    return sorted(group.element_orders)


def group_isomorphic(g1: FiniteGroup, g2: FiniteGroup) -> bool:
    """Backtracking search over generator images, pruned by element orders."""
    if g1.order != g2.order or g1.is_abelian != g2.is_abelian:
        return False
    if _order_profile(g1) != _order_profile(g2):
        return False
    gens = g1.generators()
    e1, e2 = g1.identity, g2.identity

    def extend(images: list[int]) -> dict[int, int] | None:
        mapping = {e1: e2}
        frontier = [e1]
        while frontier:
            nxt = []
            for x in frontier:
                for g, img in zip(gens, images, strict=False):
                    y = g1.table[x][g]
                    target = g2.table[mapping[x]][img]
                    if y in mapping:
                        if mapping[y] != target:
                            return None
                    else:
                        mapping[y] = target
                        nxt.append(y)
            frontier = nxt
        return mapping

    def search(images: list[int]) -> bool:
        mapping = extend(images)
        if mapping is None:
            return False
        if len(set(mapping.values())) != len(mapping):
            return False
        if len(images) == len(gens):
            return len(mapping) == g1.order
        want = g1.element_orders[gens[len(images)]]
        return any(
            search([*images, c])
            for c in range(g2.order)
            if g2.element_orders[c] == want
        )

    return search([])


def is_simple_group(group: FiniteGroup) -> bool:
    return group.order > 1 and len(normal_subgroups(group)) == 2


def is_characteristically_simple(group: FiniteGroup) -> bool:
    """Direct power of a simple group (C_p^k, or simple itself at these orders)."""
    if group.order == 1:
        return False
    if is_simple_group(group):
        return True
    if not group.is_abelian:
        return False
    orders = {o for o in group.element_orders if o > 1}
    if len(orders) != 1:
        return False
    p = orders.pop()
    k = 0
    while p**k < group.order:
        k += 1
    return p**k == group.order and group_isomorphic(group, elementary_abelian(p, k))


def sign_homomorphism(group: FiniteGroup) -> list[int]:
    """Parity of each element of a permutation group (0 even, 1 odd)."""
    if group.permutations is None:
        msg = "sign needs a permutation group"
        raise InputError(msg)
    return [0 if p.is_even else 1 for p in group.permutations]


def is_homomorphism(g1: FiniteGroup, g2: FiniteGroup, images: Sequence[int]) -> bool:
    return all(
        images[g1.table[a][b]] == g2.table[images[a]][images[b]]
        for a in range(g1.order)
        for b in range(g1.order)
    )
