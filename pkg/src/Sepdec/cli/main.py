import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

from dotenv import load_dotenv
from pydantic import ValidationError

from Sepdec.cli.config import GeneratorSpec, RunConfig
from Sepdec.cli.run import run_decompose, run_generate, run_graph, run_verify
from Sepdec.errors import EXIT_CODES
from Sepdec.utils.io import parse_exact
from Sepdec.utils.load_config import load_config
from Sepdec.utils.logging_utils import setup_logging

logger = logging.getLogger(__name__)

FAMILIES = ["monotone_curve", "coordinate_pairs", "random_noarray"]
FUNCTIONS = ["smooth", "additive", "zero"]


def _add_sample_source(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--input", type=Path, help="CSV sample: x,y,f per line")
    parser.add_argument(
        "--family",
        choices=FAMILIES,
        help="Generate the sample instead of reading --input",
    )
    parser.add_argument("--size", type=int, default=200)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--function", choices=FUNCTIONS, default="smooth")


def _add_run_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--tol", type=float, help="Target sup-norm residual")
    parser.add_argument("--max-iter", type=int, help="Iteration cap")
    parser.add_argument("--max-n", type=int, help="Finest lattice level tried")
    parser.add_argument(
        "--config", type=str, help="TOML overriding the packaged config.toml"
    )


def parse_args(argv: Optional[List[str]] = None) -> argparse.Namespace:
    parser = argparse.ArgumentParser(
        "sepdec", description="Approximate f(x, y) by g(x) + h(y) on a plane sample"
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    decompose = subparsers.add_parser("decompose", help="Decompose a sample")
    _add_sample_source(decompose)
    _add_run_options(decompose)
    decompose.add_argument("--out", type=Path, required=True, help="Output directory")
    decompose.add_argument(
        "--verify",
        action="store_true",
        help="Cross-check against the exact oracle and add the result to report.json",
    )
    decompose.add_argument(
        "--single-step", action="store_true", help="Run one step with --eps"
    )
    decompose.add_argument("--eps", type=float, help="Step size for --single-step")
    decompose.add_argument(
        "--plot",
        action="store_true",
        help="Also write points.csv, g_plot.csv and h_plot.csv",
    )
    decompose.set_defaults(func=_decompose)

    generate = subparsers.add_parser("generate", help="Write a synthetic sample")
    generate.add_argument("--family", choices=FAMILIES, required=True)
    generate.add_argument("--size", type=int, required=True)
    generate.add_argument("--seed", type=int, default=0)
    generate.add_argument("--function", choices=FUNCTIONS, default="smooth")
    generate.add_argument("--out", type=Path, required=True)
    generate.add_argument("--config", type=str)
    generate.set_defaults(func=_generate)

    graph = subparsers.add_parser("graph", help="Dump the lattice graph at one level")
    graph.add_argument("--input", type=Path, required=True)
    graph.add_argument("--n", type=int, required=True, help="Lattice level")
    graph.add_argument(
        "--delta", type=parse_exact, required=True, help="Long-edge threshold"
    )
    graph.add_argument("--dump", type=Path, required=True)
    graph.set_defaults(func=_graph)

    verify = subparsers.add_parser(
        "verify", help="Decompose and cross-check against the oracles"
    )
    _add_sample_source(verify)
    _add_run_options(verify)
    verify.add_argument(
        "--out", type=Path, required=True, help="Directory receiving verify.json"
    )
    verify.set_defaults(func=_verify)

    return parser.parse_args(argv)


def _run_config(args: argparse.Namespace, **extra) -> RunConfig:
    generator = None
    if args.family is not None:
        generator = GeneratorSpec(
            family=args.family, size=args.size, seed=args.seed, function=args.function
        )
    return RunConfig.from_defaults(
        config_path=args.config,
        input=args.input,
        generator=generator,
        tol=args.tol,
        max_iter=args.max_iter,
        max_n=args.max_n,
        out=args.out,
        **extra,
    )


def _decompose(args: argparse.Namespace) -> int:
    try:
        config = _run_config(
            args,
            verify=args.verify,
            single_step=args.single_step,
            eps=args.eps,
            plot=args.plot,
        )
    except ValueError as e:
        logger.error(f"invalid arguments or config: {e}")
        return EXIT_CODES["io"]
    return run_decompose(config)


def _generate(args: argparse.Namespace) -> int:
    if args.size < 1:
        logger.error(f"--size must be at least 1, got {args.size}")
        return EXIT_CODES["io"]
    try:
        max_retries = load_config(args.config)["generate"]["max_retries"]
    except ValueError as e:
        logger.error(f"could not load config: {e}")
        return EXIT_CODES["io"]
    return run_generate(
        args.family, args.size, args.seed, args.function, args.out, max_retries
    )


def _graph(args: argparse.Namespace) -> int:
    if args.n < 0 or args.delta <= 0:
        logger.error("--n must be non-negative and --delta positive")
        return EXIT_CODES["io"]
    return run_graph(args.input, args.n, args.delta, args.dump)


def _verify(args: argparse.Namespace) -> int:
    try:
        config = _run_config(args)
    except ValueError as e:
        logger.error(f"invalid arguments or config: {e}")
        return EXIT_CODES["io"]
    return run_verify(config)


def main(argv: Optional[List[str]] = None) -> int:
    load_dotenv(override=False)
    try:
        setup_logging()
    except ValidationError as e:
        setup_logging("info")
        logger.error(f"invalid environment: {e}")
        return EXIT_CODES["io"]
    args = parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
