"""
Command line for rlct

Every subcommand prints a human-readable answer by default and the API
result dict under ``--json``. Exit statuses: 0 success or a positive
answer, 1 a negative answer, 2 a parse error, 3 a precondition error, 4 an
inconclusive outcome.
"""

import argparse
import logging
import sys
from typing import Any, Callable, Dict, List, Optional, Tuple

from .errors import RlctError
from .rlct import Rlct, __version__
from .utils.general_utils import GeneralUtils

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_NO = 1
EXIT_UNKNOWN = 4

Handler = Callable[[Rlct, argparse.Namespace], Tuple[Dict[str, Any], str, int]]


def _read_source(args: argparse.Namespace) -> str:
    if getattr(args, "expr", None) is not None:
        return args.expr
    path = getattr(args, "file", None)
    if path is None or path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as handle:
            return handle.read()
    except OSError as e:
        raise RlctError.validation_error(f"cannot read {path}: {e.strerror}", {"file": path})


def _answer(flag: Optional[bool]) -> Tuple[str, int]:
    if flag is None:
        return "unknown", EXIT_UNKNOWN
    return ("true", EXIT_OK) if flag else ("false", EXIT_NO)


def _outcome_status(outcome: str) -> int:
    return {"epsilon": EXIT_OK, "zero": EXIT_NO}.get(outcome, EXIT_UNKNOWN)


# Subcommand handlers: (result, human text, exit status)


def cmd_parse(client: Rlct, args: argparse.Namespace):
    result = client.syntax.parse(_read_source(args))
    return result, result["sum"], EXIT_OK


def cmd_normalize(client: Rlct, args: argparse.Namespace):
    result = client.reduction.normalize(_read_source(args))
    return result, result["prelude_name"] or result["normal_form"], EXIT_OK


def cmd_head(client: Rlct, args: argparse.Namespace):
    result = client.reduction.head(_read_source(args), args.steps)
    return result, "\n".join(result["trace"]), EXIT_OK


def cmd_converges(client: Rlct, args: argparse.Namespace):
    result = client.reduction.converges(_read_source(args), args.fuel)
    text = result["outcome"]
    if result["reason"] is not None:
        text = f"{text}({result['reason']})"
    return result, text, _outcome_status(result["outcome"])


def cmd_member(client: Rlct, args: argparse.Namespace):
    result = client.model.member(
        args.term,
        args.point,
        via=args.via,
        full=True if args.full else None,
        fuel=args.fuel,
        size_bound=args.size_bound,
    )
    text, status = _answer(result["member"])
    return result, text, status


def cmd_testctx(client: Rlct, args: argparse.Namespace):
    if "|-" in args.point:
        result = client.definability.separating_context(args.point)
        return result, result["context"], EXIT_OK
    result = client.definability.testctx(args.point)
    return result, result["alpha_plus" if args.plus else "alpha_minus"], EXIT_OK


def cmd_taylor(client: Rlct, args: argparse.Namespace):
    source = _read_source(args)
    if args.contains is not None:
        result = client.taylor.contains(args.contains, source)
        text, status = _answer(result["contains"])
        return result, text, status
    result = client.taylor.enumerate(source, args.size_bound)
    return result, "\n".join(result["approximants"]) or "0", EXIT_OK


def cmd_expand(client: Rlct, args: argparse.Namespace):
    result = client.expansion.expand(_read_source(args), args.ell)
    return result, result["expanded"], EXIT_OK


def cmd_solvable(client: Rlct, args: argparse.Namespace):
    result = client.expansion.solvable(_read_source(args))
    text, status = _answer(result["solvable"])
    return result, text, status


def cmd_probe(client: Rlct, args: argparse.Namespace):
    result = client.definability.probe(
        args.left, args.right, max_rank=args.max_rank, fuel=args.fuel, limit=args.limit
    )
    if result["included"]:
        text = f"included on {result['points_checked']} points"
        return result, text, EXIT_OK
    return result, f"separated at {result['point']}\n{result['context']}", EXIT_NO


def cmd_info(client: Rlct, args: argparse.Namespace):
    result = client.get_info()
    lines = [f"{result['name']} {result['version']}"]
    lines += [f"{key}: {value}" for key, value in sorted(result["config"].items())]
    return result, "\n".join(lines), EXIT_OK


def _add_source(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("file", nargs="?", help="input file; '-' or nothing reads stdin")
    parser.add_argument("-e", "--expr", help="expression given inline")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rlct", description="Resource lambda-calculus with tests"
    )
    parser.add_argument("--version", action="version", version=f"rlct {__version__}")
    parser.add_argument("--json", action="store_true", help="print the result as JSON")
    parser.add_argument(
        "-v", "--verbose", action="count", default=0, help="log to stderr (-vv for debug)"
    )
    parser.add_argument("--seed", type=int, default=None, help="redex-selection seed")
    sub = parser.add_subparsers(dest="command", metavar="command")
    sub.required = True

    p = sub.add_parser("parse", help="parse and print canonically")
    _add_source(p)
    p.set_defaults(handler=cmd_parse)

    p = sub.add_parser("normalize", help="normal form (promotion-free only)")
    _add_source(p)
    p.set_defaults(handler=cmd_normalize)

    p = sub.add_parser("head", help="head reduction trace")
    _add_source(p)
    p.add_argument("--steps", type=int, default=1)
    p.set_defaults(handler=cmd_head)

    p = sub.add_parser("converges", help="fair head reduction of a closed test")
    _add_source(p)
    p.add_argument("--fuel", type=int, default=None)
    p.set_defaults(handler=cmd_converges)

    p = sub.add_parser("member", help="membership of a point in an interpretation")
    p.add_argument("--term", required=True)
    p.add_argument("--point", required=True, help='e.g. "x=[*]; y=[] |- [*]::*"')
    p.add_argument("--full", action="store_true", help="decide by convergence")
    p.add_argument("--fuel", type=int, default=None)
    p.add_argument("--via", choices=["direct", "test", "taylor"], default="direct")
    p.add_argument("--size-bound", dest="size_bound", type=int, default=None)
    p.set_defaults(handler=cmd_member)

    p = sub.add_parser("testctx", help="test-context of an element or point")
    p.add_argument("--point", required=True, help='element "[*]::*" or point "x=[*] |- *"')
    p.add_argument("--plus", action="store_true", help="print the defining term instead")
    p.set_defaults(handler=cmd_testctx)

    p = sub.add_parser("taylor", help="Taylor approximants up to a size bound")
    _add_source(p)
    p.add_argument("--size-bound", dest="size_bound", type=int, default=None)
    p.add_argument("--contains", default=None, help="check one candidate instead")
    p.set_defaults(handler=cmd_taylor)

    p = sub.add_parser("expand", help="label and expand tests away")
    _add_source(p)
    p.add_argument("--ell", default="{default:0}", help='index map, e.g. "{1:0, 2:3, default:0}"')
    p.set_defaults(handler=cmd_expand)

    p = sub.add_parser("solvable", help="solvability of a test-free term")
    _add_source(p)
    p.set_defaults(handler=cmd_solvable)

    p = sub.add_parser("probe", help="search a point separating two terms")
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.add_argument("--max-rank", dest="max_rank", type=int, default=None)
    p.add_argument("--fuel", type=int, default=None)
    p.add_argument("--limit", type=int, default=None, help="number of points to examine")
    p.set_defaults(handler=cmd_probe)

    p = sub.add_parser("info", help="version and effective configuration")
    p.set_defaults(handler=cmd_info)
    return parser


def _configure_logging(verbosity: int) -> None:
    if verbosity <= 0:
        return
    logging.basicConfig(
        level=logging.DEBUG if verbosity > 1 else logging.INFO,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )


def main(argv: Optional[List[str]] = None) -> int:
    """Run the command line; returns the exit status"""
    args = build_parser().parse_args(argv)
    _configure_logging(args.verbose)
    handler: Handler = args.handler
    try:
        client = Rlct(seed=args.seed)
        result, text, status = handler(client, args)
    except RlctError as e:
        logger.debug("command %s failed: %r", args.command, e)
        if args.json:
            print(GeneralUtils.format_json({"error": e.to_dict()}))
        else:
            print(str(e), file=sys.stderr)
        return e.status
    print(client.utils.format_json(result) if args.json else text)
    return status


if __name__ == "__main__":
    sys.exit(main())
