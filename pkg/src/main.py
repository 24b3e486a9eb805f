import argparse
import logging
import sys
import uuid
from typing import Dict, List, Optional

from .boseck import BoseckContext
from .config import SWEEP_COUNT, SWEEP_SEED
from .config_file import load_config
from .decomp import decompose, tower_hash
from .errors import ConfigParseError, ConsistencyError, TowerValidationError
from .oracle.basis import build_basis, describe_block
from .oracle.places import CurveModel, model_places
from .oracle.verify import verify
from .sweep import run_sweep
from .tracing import flush_langfuse, traced_operation
from .utils import (
    descriptors_csv,
    gamma_csv,
    gamma_text,
    gap_report,
    gaps_csv,
    report_text,
    table_csv,
    table_text,
)
from .weier import GapEngine, descriptors, frobenius_number, semigroup

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_VALIDATION = 2
EXIT_CONSISTENCY = 3


def parse_args(argv: Optional[List[str]] = None) -> argparse.Namespace:
    parser = argparse.ArgumentParser(
        description="Holomorphic differentials of cyclic covers: decomposition, Boseck invariants, Weierstrass gaps"
    )
    parser.add_argument(
        "--session-id",
        required=False,
        help="Optional session identifier for tracing/observability.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    p_decompose = commands.add_parser("decompose", help="d(lambda, k) table of a tower")
    p_decompose.add_argument("path", help="Tower description file.")
    p_decompose.add_argument("--format", choices=("text", "csv"), default="text")

    p_boseck = commands.add_parser("boseck", help="Boseck invariants Gamma(k, lambda)")
    p_boseck.add_argument("path", help="Tower description file.")
    p_boseck.add_argument("--format", choices=("text", "csv"), default="text")

    p_gaps = commands.add_parser("gaps", help="Weierstrass gap structure at a totally ramified point")
    p_gaps.add_argument("path", help="Tower description file.")
    p_gaps.add_argument("--place", required=True, help="Branch point id.")
    p_gaps.add_argument("--format", choices=("text", "csv"), default="text")

    p_verify = commands.add_parser("verify", help="Brute-force oracle on an explicit curve or a random sweep")
    p_verify.add_argument("path", nargs="?", help="Curve description file with a [curve] section.")
    p_verify.add_argument(
        "--sweep",
        nargs="*",
        metavar="KEY=VALUE",
        help="Random sweep; keys: seed, count, p, n.",
    )
    p_verify.add_argument("--basis", action="store_true", help="Also print the basis differentials.")

    p_semigroup = commands.add_parser("semigroup", help="Gaps of a numerical semigroup")
    p_semigroup.add_argument("--generators", required=True, help="Comma-separated generators, e.g. 3,5.")
    p_semigroup.add_argument("--bound", type=int, default=None, help="Search bound for the sieve.")
    p_semigroup.add_argument("--d", type=int, default=None, help="Modulus for the descriptors.")
    return parser.parse_args(argv)


def _sweep_options(tokens: List[str]) -> Dict[str, int]:
    options = {"seed": SWEEP_SEED, "count": SWEEP_COUNT, "p": None, "n": None}
    for token in tokens:
        key, sep, value = token.partition("=")
        if not sep or key not in options:
            raise ConfigParseError(f"sweep option {token!r}: expected one of seed=, count=, p=, n=")
        try:
            options[key] = int(value)
        except ValueError:
            raise ConfigParseError(f"sweep option {token!r}: value is not an integer")
    return options


def cmd_decompose(args: argparse.Namespace, session_id: str) -> int:
    tower = load_config(args.path).tower()
    table = decompose(tower)
    print(table_csv(table) if args.format == "csv" else table_text(table), end="")
    return EXIT_OK


def cmd_boseck(args: argparse.Namespace, session_id: str) -> int:
    tower = load_config(args.path).tower()
    with traced_operation("boseck", {"path": args.path}, session_id=session_id, tower_id=tower_hash(tower), engine_name="BoseckContext"):
        gamma = BoseckContext(tower).gamma_table()
    print(gamma_csv(gamma) if args.format == "csv" else gamma_text(gamma), end="")
    return EXIT_OK


def cmd_gaps(args: argparse.Namespace, session_id: str) -> int:
    tower = load_config(args.path).tower()
    with traced_operation("gaps", {"place": args.place}, session_id=session_id, tower_id=tower_hash(tower), engine_name="GapEngine"):
        profile = GapEngine(tower, args.place, decompose(tower)).profile()
    desc = descriptors(profile.full_gaps, profile.d) if profile.full_gaps is not None else None
    if args.format == "csv":
        if profile.full_gaps is None:
            raise ValueError("gap CSV needs the full gap list, which requires base_genus = 0")
        print(gaps_csv(profile.full_gaps), end="")
        print(descriptors_csv(desc), end="")
    else:
        print(gap_report(profile, desc), end="")
    return EXIT_OK


def cmd_verify(args: argparse.Namespace, session_id: str) -> int:
    if args.sweep is not None:
        options = _sweep_options(args.sweep)
        reports = run_sweep(options["seed"], options["count"], p=options["p"], n=options["n"], session_id=session_id)
        for report in reports:
            print(report_text(report), end="")
        failed = sum(1 for r in reports if not r.passed)
        print(f"{len(reports) - failed}/{len(reports)} PASS")
        return EXIT_OK if not failed else EXIT_CONSISTENCY
    if args.path is None:
        raise ConfigParseError("verify needs a curve file or --sweep")
    config = load_config(args.path)
    spec = config.curve()
    if spec is None:
        raise ConfigParseError(f"{args.path} has no [curve] section")
    tower = config.tower() if config.has_tower() else None
    report = verify(spec, tower=tower, session_id=session_id)
    if args.basis:
        model = CurveModel(spec)
        for block in build_basis(model, model_places(model)).blocks:
            if block.size:
                print(f"(a={block.a}, k={block.k}, lambda={block.lam}) x^0..x^{block.degree} * {describe_block(model, block)}")
    print(report_text(report), end="")
    return EXIT_OK if report.passed else EXIT_CONSISTENCY


def cmd_semigroup(args: argparse.Namespace, session_id: str) -> int:
    try:
        generators = [int(g) for g in args.generators.split(",") if g.strip()]
    except ValueError:
        raise ConfigParseError(f"--generators {args.generators!r} is not a comma-separated integer list")
    sg = semigroup(generators, args.bound)
    print("gaps: " + (",".join(map(str, sg.gaps)) or "none"))
    print(f"frobenius: {frobenius_number(sg.gaps)}")
    d = args.d if args.d is not None else sg.multiplicity
    if d > 1:
        print(descriptors_csv(descriptors(sg.gaps, d)), end="")
    return EXIT_OK


COMMANDS = {
    "decompose": cmd_decompose,
    "boseck": cmd_boseck,
    "gaps": cmd_gaps,
    "verify": cmd_verify,
    "semigroup": cmd_semigroup,
}


def main(argv: Optional[List[str]] = None) -> int:
    args = parse_args(argv)

    # Derive a session_id if not provided
    session_id = args.session_id or str(uuid.uuid4())

    try:
        return COMMANDS[args.command](args, session_id)
    except ConfigParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except TowerValidationError as e:
        print("invalid tower:", file=sys.stderr)
        for violation in e.violations:
            print(f"  - {violation}", file=sys.stderr)
        return EXIT_VALIDATION
    except ConsistencyError as e:
        print(f"consistency failure: {e}", file=sys.stderr)
        return EXIT_CONSISTENCY
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_VALIDATION
    finally:
        # Ensure all Langfuse data is flushed before exit
        flush_langfuse()


if __name__ == "__main__":
    sys.exit(main())
