"""JSON file formats.

    .hopf.json    structure constants of a Hopf algebra
    .sub.json     a subobject of a given Hopf algebra
    .series.json  a lower subnormal series, outermost-first
    .group.json   a finite group by name, permutations or Cayley table
    .mp.json      matched-pair data for an abelian extension

Every writer emits canonical text (sorted keys, canonical scalar strings) so a
file that was loaded and written again is byte-identical. Readers raise
``InputError`` carrying the file and JSON-pointer location of the bad entry.
"""

from __future__ import annotations

import json
import logging
from collections.abc import Iterator
from contextlib import contextmanager
from pathlib import Path
from typing import Any

from hopfkit.config import JSON_INDENT
from hopfkit.constructions import (
    MatchedPairData,
    coideal_subalgebra_of_dual,
    extension_space,
    matched_pair_from_json_tables,
    subgroup_space,
)
from hopfkit.errors import DomainError, InputError
from hopfkit.exact_linear import Field, Subspace, canonicalize, dense, full_space
from hopfkit.groups import (
    FiniteGroup,
    Subgroup,
    from_permutations,
    from_table,
    is_subgroup,
    named,
)
from hopfkit.hopf_core import (
    ABELIAN_EXTENSION,
    DUAL_ABELIAN_EXTENSION,
    DUAL_GROUP_ALGEBRA,
    GROUP_ALGEBRA,
    FactorTag,
    HopfAlgebra,
)
from hopfkit.series import LOWER, SubnormalSeries
from hopfkit.subobjects import (
    HopfSubalgebra,
    RightCoidealSubalgebra,
    _Subobject,
    hopf_subalgebra_failure,
    right_coideal_failure,
)

logger = logging.getLogger(__name__)


# =============================================================================
# Plumbing
# =============================================================================


def dumps(data: Any) -> str:
    return json.dumps(data, indent=JSON_INDENT, sort_keys=True) + "\n"


def read_json(path: str | Path) -> Any:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as e:
        msg = f"cannot read file: {e.strerror or e}"
        raise InputError(msg, str(path)) from e
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        msg = f"invalid JSON: {e.msg} (line {e.lineno}, column {e.colno})"
        raise InputError(msg, str(path)) from e


def write_json(path: str | Path, data: Any) -> None:
    """Atomic write: temp file next to the target, then replace."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    temp_path = path.with_name(path.name + ".tmp")
    try:
        temp_path.write_text(dumps(data))
        temp_path.replace(path)
    except OSError:
        temp_path.unlink(missing_ok=True)
        raise
    logger.debug("wrote %s", path)


@contextmanager
def located(location: str) -> Iterator[None]:
    """Attach ``location`` to input errors raised while reading a part of a file."""
    try:
        yield
    except InputError as e:
        if e.location:
            raise
        raise InputError(str(e), location) from e
    except (TypeError, ValueError, KeyError, IndexError, AttributeError) as e:
        msg = f"malformed entry ({e})"
        raise InputError(msg, location) from e


def _require(data: Any, kind: type, what: str, location: str) -> Any:
    if not isinstance(data, kind):
        msg = f"{what} must be a JSON {'object' if kind is dict else 'array'}"
        raise InputError(msg, location)
    return data


def _index(value: Any, location: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        msg = f"expected an integer index, got {value!r}"
        raise InputError(msg, location)
    return value


def _scalar(fld: Field, value: Any, location: str):
    if isinstance(value, bool) or not isinstance(value, str | int):
        msg = f"scalars are strings like \"3\" or \"-1/2\", got {value!r}"
        raise InputError(msg, location)
    with located(location):
        return fld.coerce(value)


def _entries(data: dict, key: str, width: int, fld: Field, where: str) -> list[tuple]:
    """Rows of ``width`` integers followed by one scalar."""
    rows = _require(data.get(key, []), list, key, f"{where}/{key}")
    out = []
    for n, row in enumerate(rows):
        loc = f"{where}/{key}/{n}"
        if not isinstance(row, list) or len(row) != width + 1:
            msg = f"expected {width} indices and a scalar"
            raise InputError(msg, loc)
        out.append((*(_index(v, loc) for v in row[:width]), _scalar(fld, row[width], loc)))
    return out


# =============================================================================
# Groups
# =============================================================================


def group_to_json(group: FiniteGroup) -> dict:
    out: dict = {"labels": list(group.labels), "table": [list(r) for r in group.table]}
    if group.name:
        out["name"] = group.name
    return out


def group_from_json(data: Any, location: str = "group") -> FiniteGroup:
    if isinstance(data, str):
        with located(location):
            return named(data)
    _require(data, dict, "group spec", location)
    unknown = set(data) - {"name", "permutations", "table", "labels"}
    if unknown:
        msg = f"unknown group keys {sorted(unknown)}"
        raise InputError(msg, location)
    name = data.get("name")
    with located(location):
        if "table" in data:
            return from_table(data["table"], data.get("labels"), name)
        if "permutations" in data:
            gens = data["permutations"]
            if gens and all(isinstance(g, list) for g in gens):
                gens = [p for group_gens in gens for p in group_gens]
            return from_permutations(gens, name)
        if name is not None:
            return named(name)
    msg = "group spec needs 'name', 'permutations' or 'table'"
    raise InputError(msg, location)


def load_group(path: str | Path) -> FiniteGroup:
    return group_from_json(read_json(path), str(path))


def _subgroup_from_labels(group: FiniteGroup, labels: Any, closure: bool,
                          location: str) -> Subgroup:
    _require(labels, list, "element list", location)
    with located(location):
        elems = [group.index_of(str(x)) for x in labels]
    s = group.closure(elems) if closure else frozenset(elems) | group.trivial
    if not is_subgroup(group, s):
        msg = "listed elements do not form a subgroup"
        raise InputError(msg, location)
    return s


def subgroup_from_json(group: FiniteGroup, data: Any, location: str) -> Subgroup:
    """{"subgroup": [labels]} (exact element set) or {"generated_by": [labels]}."""
    _require(data, dict, "subgroup spec", location)
    if "generated_by" in data:
        return _subgroup_from_labels(group, data["generated_by"], True,
                                     f"{location}/generated_by")
    if "subgroup" in data:
        return _subgroup_from_labels(group, data["subgroup"], False, f"{location}/subgroup")
    msg = "subgroup spec needs 'subgroup' or 'generated_by'"
    raise InputError(msg, location)


# =============================================================================
# Matched pairs
# =============================================================================


def matched_pair_to_json(mp: MatchedPairData) -> dict:
    return {**mp.to_json(), "field": mp.field.to_json()}


def matched_pair_from_json(data: Any, location: str = "matched-pair") -> MatchedPairData:
    _require(data, dict, "matched pair", location)
    for key in ("F", "Gamma", "ract", "lact"):
        if key not in data:
            msg = f"missing key {key!r}"
            raise InputError(msg, location)
    with located(f"{location}/field"):
        fld = Field.from_json(data.get("field", {"kind": "Q"}))
    f_group = group_from_json(data["F"], f"{location}/F")
    gamma = group_from_json(data["Gamma"], f"{location}/Gamma")
    sigma = {(x, y, g): c for x, y, g, c in _entries(data, "sigma", 3, fld, location)}
    tau = {(s, t, x): c for s, t, x, c in _entries(data, "tau", 3, fld, location)}
    with located(location):
        return matched_pair_from_json_tables(
            f_group, gamma, data["ract"], data["lact"], sigma, tau, fld
        )


def load_matched_pair(path: str | Path) -> MatchedPairData:
    return matched_pair_from_json(read_json(path), str(path))


# =============================================================================
# Hopf algebras
# =============================================================================


def provenance_to_json(tag: FactorTag | None) -> dict | None:
    if tag is None or tag.kind not in (GROUP_ALGEBRA, DUAL_GROUP_ALGEBRA, ABELIAN_EXTENSION,
                                       DUAL_ABELIAN_EXTENSION):
        return None
    if tag.is_group_kind:
        return {"kind": tag.kind, "group": group_to_json(tag.group)}
    return {"kind": tag.kind, "matched_pair": matched_pair_to_json(tag.matched_pair)}


def provenance_from_json(data: Any, location: str) -> FactorTag | None:
    if data is None:
        return None
    _require(data, dict, "provenance", location)
    kind = data.get("kind")
    if kind in (GROUP_ALGEBRA, DUAL_GROUP_ALGEBRA):
        return FactorTag(kind, group_from_json(data.get("group"), f"{location}/group"))
    if kind in (ABELIAN_EXTENSION, DUAL_ABELIAN_EXTENSION):
        mp = matched_pair_from_json(data.get("matched_pair"), f"{location}/matched_pair")
        return FactorTag(kind, matched_pair=mp)
    msg = f"unknown provenance kind {kind!r}"
    raise InputError(msg, location)


def hopf_to_json(h: HopfAlgebra) -> dict:
    f = h.field
    out = {
        "field": f.to_json(),
        "dim": h.dim,
        "basis": list(h.basis),
        "mult": [[i, j, k, f.format(c)] for (i, j), row in sorted(h.mult.items())
                 for k, c in row],
        "unit": [[k, f.format(c)] for k, c in h.unit],
        "comult": [[i, j, k, f.format(c)] for i, row in enumerate(h.comult) for j, k, c in row],
        "counit": [[i, f.format(c)] for i, c in enumerate(h.counit) if c],
        "antipode": [[i, j, f.format(c)] for i, row in enumerate(h.antipode) for j, c in row],
    }
    provenance = provenance_to_json(h.provenance)
    if provenance is not None:
        out["provenance"] = provenance
    return out


def hopf_from_json(data: Any, location: str = "hopf") -> HopfAlgebra:
    _require(data, dict, "Hopf algebra", location)
    with located(f"{location}/field"):
        fld = Field.from_json(data.get("field", {"kind": "Q"}))
    basis = _require(data.get("basis"), list, "basis", f"{location}/basis")
    dim = data.get("dim", len(basis))
    if dim != len(basis):
        msg = f"dim is {dim} but the basis has {len(basis)} labels"
        raise InputError(msg, f"{location}/dim")
    for key in ("unit", "antipode"):
        if key not in data:
            msg = f"missing key {key!r}"
            raise InputError(msg, location)
    provenance = provenance_from_json(data.get("provenance"), f"{location}/provenance")
    with located(location):
        h = HopfAlgebra.build(
            fld,
            [str(b) for b in basis],
            _entries(data, "mult", 3, fld, location),
            _entries(data, "unit", 1, fld, location),
            _entries(data, "comult", 3, fld, location),
            _entries(data, "counit", 1, fld, location),
            _entries(data, "antipode", 2, fld, location),
            provenance,
        )
    logger.debug("loaded Hopf algebra of dim %d from %s", h.dim, location)
    return h


def load_hopf(path: str | Path) -> HopfAlgebra:
    return hopf_from_json(read_json(path), str(path))


def dump_hopf(h: HopfAlgebra, path: str | Path | None = None) -> str:
    data = hopf_to_json(h)
    if path is not None:
        write_json(path, data)
    return dumps(data)


# =============================================================================
# Subobjects
# =============================================================================


def subobject_to_json(k: _Subobject) -> dict:
    h = k.parent
    return {"vectors": [[h.field.format(c) for c in dense(r, h.dim, h.field.zero)]
                        for r in k.rows]}


def _vectors_space(h: HopfAlgebra, rows: Any, location: str) -> Subspace:
    _require(rows, list, "vectors", location)
    vecs = []
    for n, row in enumerate(rows):
        loc = f"{location}/{n}"
        if not isinstance(row, list) or len(row) != h.dim:
            msg = f"each vector needs {h.dim} coefficients"
            raise InputError(msg, loc)
        vecs.append({i: c for i, v in enumerate(row) if (c := _scalar(h.field, v, loc))})
    return canonicalize(vecs, h.dim, h.field)


def subspace_from_json(h: HopfAlgebra, data: Any, location: str = "sub") -> Subspace:
    """The subspace named by a subobject spec; group shorthands follow the provenance."""
    if data == "k":
        return canonicalize([h.one], h.dim, h.field)
    if data == "H":
        return full_space(h.dim, h.field)
    _require(data, dict, "subobject spec", location)
    if "vectors" in data:
        return _vectors_space(h, data["vectors"], f"{location}/vectors")
    tag = h.tag
    if "pair" in data:
        if tag.kind != ABELIAN_EXTENSION:
            msg = "'pair' shorthand needs an abelian extension parent"
            raise InputError(msg, location)
        mp = tag.matched_pair
        pair = _require(data["pair"], dict, "pair", f"{location}/pair")
        s = subgroup_from_json(mp.gamma, pair.get("S", {"subgroup": []}), f"{location}/pair/S")
        n = subgroup_from_json(mp.F, pair.get("N", {"subgroup": []}), f"{location}/pair/N")
        with located(location):
            return extension_space(mp, h, s, n)
    if not tag.is_group_kind:
        msg = "subgroup shorthand needs a group algebra or dual group algebra parent"
        raise InputError(msg, location)
    s = subgroup_from_json(tag.group, data, location)
    if tag.kind == GROUP_ALGEBRA:
        return subgroup_space(h, s)
    return coideal_subalgebra_of_dual(tag.group, s, h).space


def subobject_from_json(h: HopfAlgebra, data: Any, location: str = "sub") -> _Subobject:
    """A Hopf subalgebra when the space is one, else a right coideal subalgebra."""
    space = subspace_from_json(h, data, location)
    if hopf_subalgebra_failure(h, space) is None:
        return HopfSubalgebra(h, space)
    reason = right_coideal_failure(h, space)
    if reason is None:
        return RightCoidealSubalgebra(h, space)
    msg = f"{location}: subspace of dim {space.dim} is not a right coideal subalgebra ({reason})"
    raise DomainError(msg)


def hopf_subalgebra_from_json(h: HopfAlgebra, data: Any, location: str = "sub") -> HopfSubalgebra:
    k = subobject_from_json(h, data, location)
    if not isinstance(k, HopfSubalgebra):
        msg = f"{location}: a Hopf subalgebra is required"
        raise DomainError(msg)
    return k


def load_subobject(h: HopfAlgebra, path: str | Path) -> _Subobject:
    return subobject_from_json(h, read_json(path), str(path))


# =============================================================================
# Series
# =============================================================================


def series_to_json(series: SubnormalSeries) -> dict:
    if series.direction != LOWER:
        msg = "only lower series have a file format"
        raise InputError(msg)
    return {"direction": LOWER, "chain": [subobject_to_json(k) for k in series.chain]}


def series_from_json(h: HopfAlgebra, data: Any, location: str = "series") -> SubnormalSeries:
    _require(data, dict, "series", location)
    direction = data.get("direction", LOWER)
    if direction != LOWER:
        msg = f"series files describe lower series, got direction {direction!r}"
        raise InputError(msg, f"{location}/direction")
    chain = _require(data.get("chain"), list, "chain", f"{location}/chain")
    terms = tuple(
        hopf_subalgebra_from_json(h, spec, f"{location}/chain/{n}") for n, spec in enumerate(chain)
    )
    with located(location):
        return SubnormalSeries(LOWER, h, chain=terms)


def load_series(h: HopfAlgebra, path: str | Path) -> SubnormalSeries:
    return series_from_json(h, read_json(path), str(path))
