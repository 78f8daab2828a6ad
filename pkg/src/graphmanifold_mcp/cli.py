"""
Command-line front end.

    graphmanifold classify GRAPH [--property P] [--budget N] [--grid D] [--flag-loops] [--no-search]
    graphmanifold check GRAPH CERTIFICATE
    graphmanifold census [--max-vertices N] [--charges LIST] [--indices LIST] ...

Standard output carries only JSON; diagnostics go to standard error.
Exit codes: 0 success, 1 invalid certificate or census failure, 2 parse
error, 3 budget-undecided verdict (the partial output is still printed).
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any

from graphmanifold_mcp import __version__
from graphmanifold_mcp.api import census, certificates, classify
from graphmanifold_mcp.config import Settings
from graphmanifold_mcp.core.census import run_census
from graphmanifold_mcp.core.decider import SearchSettings
from graphmanifold_mcp.core.properties import ALL_PROPERTIES

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_PARSE = 2
EXIT_BUDGET = 3


def _emit(document: Any) -> None:
    sys.stdout.write(json.dumps(document, indent=2, ensure_ascii=False) + "\n")


def _read(path: str) -> str | None:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        print(f"error: cannot read {path}: {e.strerror}", file=sys.stderr)
        return None


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from e


def _str_list(text: str) -> list[str]:
    return [x.strip() for x in text.split(",") if x.strip()]


# =============================================================================
# Commands
# =============================================================================


def cmd_classify(args: argparse.Namespace, settings: Settings) -> int:
    text = _read(args.graph)
    if text is None:
        return EXIT_PARSE
    response = classify.classify_graph(
        text,
        property=args.property,
        budget=args.budget,
        grid=args.grid,
        search=not args.no_search,
        flag_loops=args.flag_loops,
        settings=settings,
    )
    if not response.success:
        print(f"error: {args.graph}: {response.error}", file=sys.stderr)
        return EXIT_PARSE if response.error_kind == "parse" else EXIT_INVALID
    for warning in response.data["warnings"]:
        logger.warning("%s: %s", args.graph, warning)
    _emit(response.data)
    if response.undecided:
        print(f"{args.graph}: {response.error} ({', '.join(response.undecided)})", file=sys.stderr)
        return EXIT_BUDGET
    return EXIT_OK


def cmd_check(args: argparse.Namespace, settings: Settings) -> int:
    graph_text = _read(args.graph)
    certificate_text = _read(args.certificate)
    if graph_text is None or certificate_text is None:
        return EXIT_PARSE
    response = certificates.check_certificate(graph_text, certificate_text)
    if not response.success:
        print(f"error: {response.error}", file=sys.stderr)
        return EXIT_PARSE
    _emit(response.data)
    return EXIT_OK if response.data["valid"] else EXIT_INVALID


def cmd_census(args: argparse.Namespace, settings: Settings) -> int:
    try:
        bounds = census.parse_bounds(
            args.max_vertices,
            args.charges,
            args.indices,
            args.max_edges,
            args.loops,
            args.include_disconnected,
        )
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    report = run_census(
        bounds,
        exhaustive_limit=args.budget or settings.exhaustive_limit,
        search=SearchSettings(
            budget=args.budget or settings.census_search_budget,
            denominator=args.grid or settings.census_grid_denominator,
        ),
        workers=args.workers,
    )
    _emit(census.census_document(report))
    return EXIT_OK if report.ok else EXIT_INVALID


# =============================================================================
# Argument Parsing
# =============================================================================


def _positive(text: str) -> int:
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="graphmanifold",
        description="Decide surface, fibering and curvature properties of graph manifolds.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="more diagnostics on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="classify one graph")
    p.add_argument("graph", help="graph document (JSON)")
    p.add_argument("--property", choices=[str(x) for x in ALL_PROPERTIES], help="emit only this property")
    p.add_argument("--budget", type=_positive, help="enumeration limit and LP-solve budget")
    p.add_argument("--grid", type=_positive, help="certificate search grid denominator")
    p.add_argument("--format", choices=["json"], default="json")
    p.add_argument("--flag-loops", action="store_true", help="report loop caveats as warnings")
    p.add_argument("--no-search", action="store_true", help="skip certificate search")
    p.set_defaults(handler=cmd_classify)

    p = sub.add_parser("check", help="check a certificate against a graph")
    p.add_argument("graph", help="graph document (JSON)")
    p.add_argument("certificate", help="certificate document (JSON)")
    p.set_defaults(handler=cmd_check)

    p = sub.add_parser("census", help="cross-validate all small graphs")
    p.add_argument("--max-vertices", type=int, default=3)
    p.add_argument("--charges", type=_str_list, help="comma-separated rationals, e.g. -1,-1/2,0,1/2,1")
    p.add_argument("--indices", type=_int_list, help="comma-separated nonzero integers")
    p.add_argument("--max-edges", type=int, default=4)
    p.add_argument("--loops", action="store_true", help="include loops")
    p.add_argument("--include-disconnected", action="store_true")
    p.add_argument("--workers", type=_positive, default=1)
    p.add_argument("--budget", type=_positive)
    p.add_argument("--grid", type=_positive)
    p.set_defaults(handler=cmd_census)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        stream=sys.stderr,
        level=max(logging.DEBUG, logging.WARNING - 10 * args.verbose),
        format="%(levelname)s %(name)s: %(message)s",
    )
    return args.handler(args, Settings())


if __name__ == "__main__":
    sys.exit(main())
