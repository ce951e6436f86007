#!/usr/bin/env python3
"""hopfkit command-line interface.

Reports go to stdout (JSON by default, a rich table with ``--report text``);
logs go to stderr. Exit codes: 0 verified, 1 verification failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import logging
import random
import sys
import time
from collections.abc import Callable, Sequence
from pathlib import Path

from rich.console import Console
from rich.table import Table

from hopfkit.config import (
    CONSTRUCTIONS,
    DEFAULT_REPORT,
    DEFAULT_SEED,
    EXIT_FAILED,
    EXIT_OK,
    EXIT_USAGE,
    FIXTURE_DIR,
    FIXTURE_FILES,
    REPORT_FORMATS,
    VERSION,
)
from hopfkit.constructions import (
    abelian_extension,
    drinfeld_double,
    dual_coideal_chain,
    dual_group_algebra,
    group_algebra,
    provider_for,
)
from hopfkit.errors import (
    DomainError,
    HopfkitError,
    InputError,
    TheoremViolation,
    UnsupportedOperationError,
)
from hopfkit.exact_linear import QQ, Field
from hopfkit.formats import (
    dumps,
    hopf_subalgebra_from_json,
    hopf_to_json,
    load_group,
    load_hopf,
    load_matched_pair,
    load_series,
    load_subobject,
    read_json,
    subobject_from_json,
    write_json,
)
from hopfkit.groups import (
    FiniteGroup,
    chain_lengths,
    chief_series_group,
    composition_series_group,
    maximal_subgroup_chains,
    named,
)
from hopfkit.hopf_core import HopfAlgebra, identity_morphism, verify_axioms
from hopfkit.iso_theorems import (
    butterfly,
    first_isomorphism,
    second_isomorphism,
    third_isomorphism,
)
from hopfkit.lattices import NormalLatticeProvider
from hopfkit.series import (
    EQUIVALENT,
    Factor,
    composition_series,
    factor_multiset_equivalent,
    is_lower_composition_series,
    is_simple,
    jordan_holder_verify,
    length,
    lower_length,
    schreier_refine,
    upper_length,
    verify_subnormal,
)
from hopfkit.subobjects import quotient

logger = logging.getLogger(__name__)

type Outcome = tuple[dict, bool]


# =============================================================================
# LOGGING
# =============================================================================


def setup_logging(verbose: bool = False, log_file: str | None = None) -> None:
    """Configure logging on stderr, plus an optional log file."""
    log_level = logging.DEBUG if verbose else logging.INFO

    handlers: list[logging.Handler] = [logging.StreamHandler()]

    if log_file:
        try:
            Path(log_file).parent.mkdir(parents=True, exist_ok=True)
            handlers.append(logging.FileHandler(log_file))
        except OSError as e:
            print(f"Warning: Could not create log file: {e}", file=sys.stderr)

    logging.basicConfig(
        level=log_level,
        format="%(asctime)s [%(levelname)s] %(message)s",
        datefmt="%Y-%m-%d %H:%M:%S",
        handlers=handlers,
        force=True,
    )


# =============================================================================
# INPUT RESOLUTION
# =============================================================================


def parse_field(text: str) -> Field:
    """"Q" or "GF(p)" / "GFp"."""
    t = text.strip().upper().replace("(", "").replace(")", "")
    if t == "Q":
        return QQ
    if t.startswith("GF") and t[2:].isdigit():
        return Field.gf(int(t[2:]))
    msg = f"unknown field {text!r} (use Q or GF(p))"
    raise InputError(msg)


def resolve_group(spec: str) -> FiniteGroup:
    """An inline name (S4, C6, ...) or a .group.json file."""
    if spec.endswith(".json") or Path(spec).is_file():
        return load_group(spec)
    return named(spec)


def build_construction(name: str, group: str | None, matched_pair: str | None,
                       field: Field = QQ) -> HopfAlgebra:
    if name not in CONSTRUCTIONS:
        msg = f"unknown construction {name!r}; choose from {', '.join(CONSTRUCTIONS)}"
        raise InputError(msg)
    if name == "abelian-extension":
        if not matched_pair:
            msg = "abelian-extension needs --matched-pair FILE"
            raise InputError(msg)
        return abelian_extension(load_matched_pair(matched_pair)).algebra
    if not group:
        msg = f"{name} needs --group SPEC"
        raise InputError(msg)
    g = resolve_group(group)
    if name == "group-algebra":
        return group_algebra(g, field)
    if name == "dual-group-algebra":
        return dual_group_algebra(g, field)
    return drinfeld_double(g, field)


def load_algebra(args: argparse.Namespace,
                 file: str | None = None) -> tuple[HopfAlgebra, NormalLatticeProvider]:
    """The Hopf algebra named on the command line and its lattice provider."""
    path = file or getattr(args, "hopf", None)
    if path:
        h = load_hopf(path)
    elif args.construction:
        h = build_construction(args.construction, args.group, args.matched_pair,
                               parse_field(args.field))
    else:
        msg = "name a Hopf algebra: a .hopf.json file or --construction NAME --group SPEC"
        raise InputError(msg)
    provider = provider_for(h)
    logger.info("using %s provider for %s", provider.kind, h.describe())
    return provider.algebra, provider


def _subs(args: argparse.Namespace, h: HopfAlgebra, count: int) -> list:
    subs = args.sub or []
    if len(subs) != count:
        msg = f"{args.command} needs exactly {count} --sub files, got {len(subs)}"
        raise InputError(msg)
    return [hopf_subalgebra_from_json(h, read_json(p), p) for p in subs]


# =============================================================================
# COMMANDS
# =============================================================================


def cmd_verify(args: argparse.Namespace) -> Outcome:
    h = load_hopf(args.file)
    report = verify_axioms(h)
    return {"file": args.file, "dim": h.dim, "field": h.field.to_json(),
            **report.to_json()}, report.passed


def cmd_build(args: argparse.Namespace) -> Outcome:
    if not args.construction:
        msg = "build needs --construction NAME"
        raise InputError(msg)
    h = build_construction(args.construction, args.group, args.matched_pair,
                           parse_field(args.field))
    data = hopf_to_json(h)
    if args.output:
        write_json(args.output, data)
        logger.info("wrote %s (dim %d)", args.output, h.dim)
        return {"output": args.output, "dim": h.dim, "construction": args.construction}, True
    return data, True


def cmd_factors(args: argparse.Namespace) -> Outcome:
    h, provider = load_algebra(args, args.file)
    if args.all_branches:
        jh = jordan_holder_verify(h, provider, strict=args.strict)
        return jh.to_json(), jh.verified
    choice = args.choice
    if args.random_branch:
        top = provider.proper_nontrivial()
        choice = random.Random(args.seed).randrange(len(top)) if top else 0
    result = composition_series(h, provider, choice)
    out = result.to_json(with_fingerprints=args.fingerprints)
    out["simple"] = is_simple(h, provider)
    out["first_choice"] = choice
    return out, True


def cmd_lengths(args: argparse.Namespace) -> Outcome:
    h, provider = load_algebra(args, args.file)
    out = {
        "dim": h.dim,
        "length": length(h, provider),
        "lower": lower_length(h, provider),
        "upper": upper_length(h, provider),
        "search_based": provider.search_based,
    }
    return out, True


def cmd_series_verify(args: argparse.Namespace) -> Outcome:
    h, provider = load_algebra(args)
    series = load_series(h, args.file)
    report = verify_subnormal(series)
    out = report.to_json()
    out["length"] = series.length
    if report.verified:
        out["factors"] = [Factor(f).to_json(with_fingerprint=True) for f in series.factors]
        out["composition"] = is_lower_composition_series(series, provider)
    ok = report.verified and (out.get("composition", False) or not args.composition)
    return out, ok


def cmd_refine(args: argparse.Namespace) -> Outcome:
    if not (args.series_a and args.series_b):
        msg = "refine needs --series-a FILE and --series-b FILE"
        raise InputError(msg)
    h, _ = load_algebra(args, args.file)
    refinement = schreier_refine(load_series(h, args.series_a), load_series(h, args.series_b))
    verdict = factor_multiset_equivalent(
        [Factor(f) for f in refinement.first.factors if f.dim > 1],
        [Factor(f) for f in refinement.second.factors if f.dim > 1],
        args.strict,
    )
    out = refinement.to_json()
    out["factors_equivalent"] = verdict
    return out, refinement.verified and verdict == EQUIVALENT


def cmd_butterfly(args: argparse.Namespace) -> Outcome:
    h, _ = load_algebra(args, args.file)
    a, a1, b, b1 = _subs(args, h, 4)
    report = butterfly(a, a1, b, b1)
    return report.to_json(), report.verified


def cmd_iso(args: argparse.Namespace) -> Outcome:
    h, _ = load_algebra(args, args.file)
    if args.theorem == "first":
        subs = args.sub or []
        if len(subs) > 1:
            msg = "iso first takes at most one --sub (the kernel of π)"
            raise InputError(msg)
        if subs:
            k = load_subobject(h, subs[0])
            pi = quotient(h, k).projection
        else:
            pi = identity_morphism(h)
        cert = first_isomorphism(pi)
        return cert.to_json(), cert.verified
    if args.theorem == "second":
        a, b = _subs(args, h, 2)
        cert = second_isomorphism(a, b)
        return cert.to_json(), cert.verified
    subs = args.sub or []
    if len(subs) != 2:
        msg = f"iso third needs exactly 2 --sub files, got {len(subs)}"
        raise InputError(msg)
    a = hopf_subalgebra_from_json(h, read_json(subs[0]), subs[0])
    b = subobject_from_json(h, read_json(subs[1]), subs[1])
    result = third_isomorphism(a, b)
    return result.to_json(), result.verified


def cmd_group(args: argparse.Namespace) -> Outcome:
    spec = args.file or args.group
    if not spec:
        msg = "group needs a .group.json file or --group SPEC"
        raise InputError(msg)
    g = resolve_group(spec)
    if args.query == "composition":
        series = composition_series_group(g)
    elif args.query == "chief":
        series = chief_series_group(g)
    else:
        series = maximal_subgroup_chains(g)
    out: dict = {
        "group": g.display_name,
        "order": g.order,
        "query": args.query,
        "lengths": sorted(chain_lengths(series)),
        "series": [s.to_json() for s in series],
    }
    if args.query != "maximal-chains":
        out["factor_ids"] = sorted({tuple(s.factor_ids()) for s in series})
        return out, len(out["factor_ids"]) == 1
    if args.coideal:
        h = dual_group_algebra(g)
        out["coideal_chains"] = [
            [k.dim for k in dual_coideal_chain(g, s, h)] for s in series
        ]
    return out, True


def cmd_fixtures(args: argparse.Namespace) -> Outcome:
    if not args.output:
        return {"fixtures": list(FIXTURE_FILES), "directory": str(FIXTURE_DIR)}, True
    target = Path(args.output)
    target.mkdir(parents=True, exist_ok=True)
    for name in FIXTURE_FILES:
        (target / name).write_bytes((FIXTURE_DIR / name).read_bytes())
    logger.info("wrote %d fixtures to %s", len(FIXTURE_FILES), target)
    return {"fixtures": list(FIXTURE_FILES), "directory": str(target)}, True


COMMANDS: dict[str, Callable[[argparse.Namespace], Outcome]] = {
    "verify": cmd_verify,
    "build": cmd_build,
    "factors": cmd_factors,
    "lengths": cmd_lengths,
    "series-verify": cmd_series_verify,
    "refine": cmd_refine,
    "butterfly": cmd_butterfly,
    "iso": cmd_iso,
    "group": cmd_group,
    "fixtures": cmd_fixtures,
}


# =============================================================================
# OUTPUT
# =============================================================================


def render_text(report: dict, console: Console) -> None:
    table = Table(title=f"hopfkit {report.get('command', '')}".strip(), show_header=True,
                  header_style="bold cyan")
    table.add_column("key")
    table.add_column("value")
    for key in sorted(report):
        value = report[key]
        table.add_row(key, value if isinstance(value, str) else json.dumps(value, sort_keys=True))
    console.print(table)


def emit(report: dict, fmt: str, output: str | None = None) -> None:
    if fmt == "json":
        text = dumps(report)
        if output:
            Path(output).write_text(text)
        else:
            sys.stdout.write(text)
        return
    if output:
        with Path(output).open("w") as f:
            render_text(report, Console(file=f, no_color=True, width=120))
    else:
        render_text(report, Console())


# =============================================================================
# ARGUMENT PARSER
# =============================================================================


def _source_options() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    src = parent.add_argument_group("Hopf algebra source")
    src.add_argument("--construction", choices=list(CONSTRUCTIONS),
                     help="Build the algebra instead of reading a file")
    src.add_argument("--group", help="Group name (S4, C6, A5, ...) or .group.json file")
    src.add_argument("--matched-pair", help="Matched-pair .mp.json file (abelian-extension)")
    src.add_argument("--field", default="Q", help="Ground field: Q (default) or GF(p)")
    return parent


def create_argument_parser() -> argparse.ArgumentParser:
    """Create and configure the argument parser."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-v", "--verbose", action="store_true", help="Debug logging on stderr")
    common.add_argument("--log-file", help="Also write logs to this file")
    common.add_argument("--strict", action="store_true",
                        help="Fingerprint-only factor matches count as undecided")
    common.add_argument("--timing", action="store_true", help="Add wall-clock timing to reports")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED,
                        help="Seed for randomized choices")
    common.add_argument("--report", choices=REPORT_FORMATS, default=DEFAULT_REPORT,
                        help="Report format (default: json)")
    common.add_argument("-o", "--output", help="Write the report (or built file) here")
    source = _source_options()

    parser = argparse.ArgumentParser(
        prog="hopfkit",
        description="Exact composition series and isomorphism theorems for "
        "finite-dimensional Hopf algebras",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # Check the Hopf algebra axioms of a structure-constants file
  %(prog)s verify fixtures/sweedler.hopf.json

  # Length, lower length and upper length of D(A4)
  %(prog)s lengths --construction drinfeld-double --group A4

  # Write kS4 to a file
  %(prog)s build --construction group-algebra --group S4 -o s4.hopf.json

  # Maximal subgroup chains of A5 and the coideal chains of k^A5
  %(prog)s group maximal-chains --group A5 --coideal
""",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {VERSION}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common], help="Verify the Hopf algebra axioms")
    p.add_argument("file", help=".hopf.json file")

    p = sub.add_parser("build", parents=[common, source], help="Build a Hopf algebra")

    p = sub.add_parser("factors", parents=[common, source], help="Composition factors")
    p.add_argument("file", nargs="?", help=".hopf.json file")
    p.add_argument("--choice", type=int, default=0,
                   help="Index of the first normal Hopf subalgebra to split off")
    p.add_argument("--random-branch", action="store_true",
                   help="Pick the first choice at random (see --seed)")
    p.add_argument("--all-branches", action="store_true",
                   help="Compare factors across every first choice (Jordan-Hölder)")
    p.add_argument("--fingerprints", action="store_true", help="Include factor fingerprints")

    p = sub.add_parser("lengths", parents=[common, source], help="Length, lower and upper length")
    p.add_argument("file", nargs="?", help=".hopf.json file")

    p = sub.add_parser("series-verify", parents=[common, source],
                       help="Verify a lower subnormal series file")
    p.add_argument("file", help=".series.json file")
    p.add_argument("--hopf", help=".hopf.json file holding the parent algebra")
    p.add_argument("--composition", action="store_true",
                   help="Fail unless the series is a lower composition series")

    p = sub.add_parser("refine", parents=[common, source], help="Schreier refinement")
    p.add_argument("file", nargs="?", help=".hopf.json file")
    p.add_argument("--series-a", help="First .series.json file")
    p.add_argument("--series-b", help="Second .series.json file")

    p = sub.add_parser("butterfly", parents=[common, source],
                       help="Butterfly lemma for --sub A --sub A' --sub B --sub B'")
    p.add_argument("file", nargs="?", help=".hopf.json file")
    p.add_argument("--sub", action="append", help=".sub.json file (repeatable)")

    p = sub.add_parser("iso", parents=[common, source], help="Isomorphism theorems")
    p.add_argument("theorem", choices=["first", "second", "third"])
    p.add_argument("file", nargs="?", help=".hopf.json file")
    p.add_argument("--sub", action="append", help=".sub.json file (repeatable)")

    p = sub.add_parser("group", parents=[common], help="Group oracle queries")
    p.add_argument("query", choices=["composition", "chief", "maximal-chains"])
    p.add_argument("file", nargs="?", help=".group.json file")
    p.add_argument("--group", help="Inline group name")
    p.add_argument("--coideal", action="store_true",
                   help="With maximal-chains: dims of the coideal chains of k^G")

    sub.add_parser("fixtures", parents=[common], help="List or write the bundled sample files")

    return parser


# =============================================================================
# MAIN
# =============================================================================


def main(argv: Sequence[str] | None = None) -> int:
    """Main CLI entry point."""
    parser = create_argument_parser()
    args = parser.parse_args(argv)
    setup_logging(args.verbose, args.log_file)

    start = time.perf_counter()
    try:
        report, ok = COMMANDS[args.command](args)
    except (InputError, DomainError, UnsupportedOperationError) as e:
        print(f"[ERROR] {e}", file=sys.stderr)
        return EXIT_USAGE
    except HopfkitError as e:
        kind = "theorem violation" if isinstance(e, TheoremViolation) else "internal error"
        print(f"[ERROR] {kind}: {e}", file=sys.stderr)
        return EXIT_FAILED

    if args.command == "build" and not args.output:
        sys.stdout.write(dumps(report))
        return EXIT_OK
    report = {"command": args.command, **report}
    if args.timing:
        report["timing"] = {"seconds": round(time.perf_counter() - start, 3)}
    output = None if args.command in ("build", "fixtures") else args.output
    emit(report, args.report, output)
    return EXIT_OK if ok else EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
