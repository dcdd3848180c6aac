"""
dgl - Quillen models and sectional category certificates

Usage:
    ./dgl check models/cp2.dgl --max-degree 8
    ./dgl power models/s2.dgl --copies 3 --check
    ./dgl cat models/cp2.dgl --max-n 3 --json
    ./dgl tc models/s2.dgl --max-n 2 --max-degree 6

Logs go to stderr; the summary (or the --json report) goes to stdout.
Exit codes: 0 passed / certificate, 1 failed / no certificate,
2 input error, 3 invariant violation.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

from .config import settings
from .errors import InputError, InvariantViolation
from .secat import commands
from .secat.modelfile import read_model
from .secat.problem import SearchOptions

logger = logging.getLogger("dgl")

EXIT_INPUT_ERROR = 2
EXIT_INVARIANT_VIOLATION = 3


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        '--max-degree',
        type=int,
        default=None,
        help=f'Degree bound N (default: {settings.DEFAULT_MAX_DEGREE})'
    )
    common.add_argument('--json', action='store_true', help='Print the machine-readable report')
    common.add_argument('--timings', action='store_true', help='Include per-phase timings in the report')
    common.add_argument('-o', '--output', type=str, default=None,
                        help='Write the model (product, power) or the JSON report to this file')
    common.add_argument('-v', '--verbose', action='store_true', help='Debug logging on stderr')
    return common


def _search_options(parser: argparse.ArgumentParser, with_n: bool = False):
    if with_n:
        parser.add_argument('--n', type=int, default=None, help='Candidate bound to test')
    parser.add_argument('--max-n', type=int, default=None,
                        help=f'Largest n to try (default: {settings.DEFAULT_MAX_N})')
    parser.add_argument('--seed', type=int, default=settings.SEARCH_SEED, help='Restart seed')
    parser.add_argument('--budget', type=int, default=settings.SEARCH_BUDGET,
                        help='Branch nodes explored per n')
    parser.add_argument('--restarts', type=int, default=settings.SEARCH_RESTARTS,
                        help='Randomized restarts after backtracking fails')
    parser.add_argument('--strategy', choices=['backtrack', 'greedy'], default='backtrack',
                        help='Search strategy (default: backtrack)')


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = argparse.ArgumentParser(
        prog='dgl',
        description='Quillen models of products, diagonals and fat wedges; secat / cat / TC upper bounds'
    )
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('check', parents=[common], help='d² = 0, minimality and stages')
    p.add_argument('file')

    p = sub.add_parser('homology', parents=[common], help='Homology dimensions up to N')
    p.add_argument('file')

    p = sub.add_parser('product', parents=[common], help='Product model of two models')
    p.add_argument('left')
    p.add_argument('right')

    p = sub.add_parser('power', parents=[common], help='n-fold power model')
    p.add_argument('file')
    p.add_argument('--copies', type=int, required=True, help='Number of factors')
    p.add_argument('--check', action='store_true', help='Run the product-model invariant checks')

    p = sub.add_parser('diagonal', parents=[common], help='Diagonal into the power model')
    p.add_argument('file')
    p.add_argument('--copies', type=int, default=2, help='Number of factors (default: 2)')

    p = sub.add_parser('fatwedge', parents=[common], help='Fat-wedge model of a map model')
    p.add_argument('file')
    p.add_argument('--n', type=int, required=True, help='Fat-wedge index (n + 1 copies)')

    p = sub.add_parser('secat', parents=[common], help='Sectional category certificate search')
    p.add_argument('file')
    _search_options(p, with_n=True)

    p = sub.add_parser('cat', parents=[common], help='LS category upper bound')
    p.add_argument('file')
    _search_options(p)

    p = sub.add_parser('tc', parents=[common], help='Topological complexity upper bound')
    p.add_argument('file')
    _search_options(p)

    return parser


def _options(args) -> SearchOptions:
    try:
        return SearchOptions(
            strategy=args.strategy,
            seed=args.seed,
            budget=args.budget,
            restarts=args.restarts,
            coefficients=list(settings.SEARCH_COEFFICIENTS),
        )
    except ValueError as e:
        raise InputError(f"Invalid search options: {e}") from e


def run(args) -> commands.CommandResult:
    """Dispatch parsed arguments to a command"""
    N = args.max_degree
    timings = args.timings or settings.REPORT_TIMINGS
    inputs = {key: value for key, value in vars(args).items()
              if key not in ('json', 'timings', 'output', 'verbose', 'command')}

    if args.command == 'product':
        return commands.product_command(read_model(args.left), read_model(args.right), N,
                                        inputs=inputs, timings=timings)

    model = read_model(args.file)
    if args.command == 'check':
        return commands.check_command(model, N, inputs=inputs, timings=timings)
    if args.command == 'homology':
        return commands.homology_command(model, N, inputs=inputs, timings=timings)
    if args.command == 'power':
        return commands.power_command(model, args.copies, N, run_checks=args.check,
                                      inputs=inputs, timings=timings)
    if args.command == 'diagonal':
        return commands.diagonal_command(model, args.copies, N, inputs=inputs, timings=timings)
    if args.command == 'fatwedge':
        return commands.fatwedge_command(model, args.n, N, inputs=inputs, timings=timings)
    if args.command == 'secat':
        return commands.secat_command(model, args.n, args.max_n, N, _options(args),
                                      inputs=inputs, timings=timings)
    if args.command == 'cat':
        return commands.cat_command(model, args.max_n, N, _options(args), inputs=inputs, timings=timings)
    if args.command == 'tc':
        return commands.tc_command(model, args.max_n, N, _options(args), inputs=inputs, timings=timings)
    raise InputError(f"Unknown command '{args.command}'")


def _emit(result: commands.CommandResult, args):
    report_json = result.report.model_dump_json(indent=2)
    if args.output:
        text = result.model_text if result.model_text is not None else report_json + "\n"
        Path(args.output).write_text(text, encoding='utf-8')
        logger.info(f"Wrote {args.output}")

    if args.json:
        print(report_json)
        return
    print("\n".join(result.summary))
    if result.model_text is not None and not args.output:
        print(result.model_text, end="")


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point; returns the exit code"""
    parser = build_parser()
    args = parser.parse_args(argv)

    logging.basicConfig(
        level='DEBUG' if args.verbose else settings.LOG_LEVEL.upper(),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
    )

    try:
        result = run(args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except InvariantViolation as e:
        logger.error(f"{type(e).__name__}: {e}")
        print(f"invariant violation: {e}", file=sys.stderr)
        return EXIT_INVARIANT_VIOLATION

    _emit(result, args)
    return result.exit_code


if __name__ == '__main__':
    sys.exit(main())
