"""CLI entry point: python -m hckm {solve,oracle,bench,check}"""

from __future__ import annotations

import argparse
import json
import logging
import signal
import sys
import threading
from contextlib import contextmanager
from typing import Any, Iterator

from hckm import __version__
from hckm.config import GeneratorSpec, HCKMConfig, RunConfig
from hckm.core.models import Instance
from hckm.errors import HCKMError, InfeasibleInstanceError
from hckm.io.bench import default_cases, run_bench, write_bench
from hckm.io.datasets import generate_instance, load_dataset
from hckm.io.results import emit_solution, solution_document
from hckm.observability.logging import setup_logging
from hckm.oracle.exact import exact_hckm
from hckm.solver.checks import run_checks
from hckm.solver.driver import SolveOptions, index_for, solve_hckm
from hckm.subroutines.registry import default_registry
from hckm.types import DatasetFormat

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INFEASIBLE = 2


class _Parser(argparse.ArgumentParser):
    """Usage errors exit 1; exit 2 is reserved for infeasible instances."""

    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _int_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _common(with_instance: bool) -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="YAML config file (default: hckm.yaml if present)")
    common.add_argument("--log-level", help="DEBUG, INFO, WARNING, ERROR (env: HCKM_LOG)")
    common.add_argument("--epsilon", type=float, help="approximation slack, default 0.36")
    common.add_argument("--seed", type=int, help="64-bit seed for every random draw")
    common.add_argument("--subroutine", help="bicriteria k-means subroutine name")
    common.add_argument("--overseed-factor", type=float, help="|S| multiplier (beta)")
    common.add_argument("--lloyd-rounds", type=int, help="Lloyd rounds after seeding")
    common.add_argument("--workers", type=int, help="parallel sweep workers")
    common.add_argument("--no-prune", action="store_true",
                        help="sweep all C(|S|+k-1, k) compositions")
    common.add_argument("--output", help="result file (stdout when omitted)")
    if with_instance:
        source = common.add_mutually_exclusive_group()
        source.add_argument("--input", help="dataset path")
        source.add_argument("--generate",
                            help="synthetic instance, e.g. blobs:count=3,per_blob=20,sigma=0.1")
        common.add_argument("--format", choices=[f.value for f in DatasetFormat],
                            help="dataset format (default: from the file suffix)")
        common.add_argument("--k", type=int, required=True, help="number of centers")
        common.add_argument("--u", type=int, required=True, help="cluster capacity")
        common.add_argument("--certify", action="store_true",
                            help="attach the exact optimum, lambda1 and the ratio (n <= 10)")
    return common


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hckm", description="Hard-capacitated k-means approximation solver")
    parser.add_argument("--version", action="version", version=f"hckm {__version__}")
    commands = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    with_instance = _common(with_instance=True)
    commands.add_parser("solve", parents=[with_instance], help="run the approximation")
    commands.add_parser("oracle", parents=[with_instance], help="exact solve, n <= 10")
    check = commands.add_parser("check", parents=[with_instance],
                                help="solve, then run the invariant suite")
    check.add_argument("--samples", type=int, default=100, help="random trials per check")

    bench = commands.add_parser("bench", parents=[_common(with_instance=False)],
                                help="ratio/runtime table as CSV")
    bench.add_argument("--sizes", type=_int_list, default=[6, 8, 9], help="point counts")
    bench.add_argument("--ks", type=_int_list, default=[2, 3], help="center counts")
    bench.add_argument("--us", type=_int_list, default=[2, 3, 4], help="capacities")
    bench.add_argument("--seeds", type=int, default=5, help="seeds 0..N-1 per case")
    return parser


def _pick(flag: Any, fallback: Any) -> Any:
    return fallback if flag is None else flag


def run_config(args: argparse.Namespace, settings: HCKMConfig) -> RunConfig:
    """Flags over config file over built-in defaults."""
    seed = _pick(args.seed, settings.seed)
    return RunConfig(
        input=args.input,
        input_format=args.format or DatasetFormat.CSV,
        generator=GeneratorSpec.parse(args.generate, seed) if args.generate else None,
        k=args.k,
        u=args.u,
        epsilon=_pick(args.epsilon, settings.epsilon),
        subroutine=_pick(args.subroutine, settings.subroutine),
        overseed_factor=_pick(args.overseed_factor, settings.overseed_factor),
        lloyd_rounds=_pick(args.lloyd_rounds, settings.lloyd_rounds),
        seed=seed,
        workers=_pick(args.workers, settings.workers),
        prune=settings.prune and not args.no_prune,
        progress_every=settings.progress_every,
        output=args.output,
        certify=args.certify,
    )


def load_instance(run: RunConfig, fmt_given: bool) -> Instance:
    if run.generator is not None:
        points = generate_instance(run.generator)
    else:
        points = load_dataset(run.input, run.input_format if fmt_given else None)
    return Instance(points, run.k, run.u)


def _options(run: RunConfig, cancel: threading.Event | None = None) -> SolveOptions:
    return SolveOptions(
        subroutine=run.subroutine,
        workers=run.workers,
        prune=run.prune,
        progress_every=run.progress_every,
        cancel=cancel,
        certify=run.certify,
    )


@contextmanager
def cancel_on_interrupt() -> Iterator[threading.Event]:
    """First Ctrl-C asks the sweep to stop with its best result; a second one interrupts."""
    cancel = threading.Event()

    def handle(signum: int, frame: Any) -> None:
        if cancel.is_set():
            raise KeyboardInterrupt
        logger.warning("interrupt received, finishing with the best result so far")
        cancel.set()

    try:
        previous = signal.signal(signal.SIGINT, handle)
    except ValueError:
        # handlers can only be installed from the main thread
        yield cancel
        return
    try:
        yield cancel
    finally:
        signal.signal(signal.SIGINT, previous)


def _write(text: str, output: Any) -> None:
    if output is None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
        return
    try:
        with open(output, "w", encoding="utf-8") as f:
            f.write(text if text.endswith("\n") else text + "\n")
    except OSError as exc:
        raise HCKMError(f"cannot write {output}: {exc.strerror}") from None


def _cmd_solve(args: argparse.Namespace, settings: HCKMConfig) -> int:
    run = run_config(args, settings)
    instance = load_instance(run, args.format is not None)
    registry = default_registry(settings.plugin_dirs, settings.disabled_subroutines)
    with cancel_on_interrupt() as cancel:
        solution = solve_hckm(instance, run.subroutine_config(), _options(run, cancel), registry)
    if run.output is not None:
        emit_solution(solution, run.output, run.echo())
    else:
        _write(solution_document(solution, run.echo()).model_dump_json(indent=2), None)
    return EXIT_OK


def _cmd_oracle(args: argparse.Namespace, settings: HCKMConfig) -> int:
    run = run_config(args, settings)
    instance = load_instance(run, args.format is not None)
    result = exact_hckm(instance)
    document = {
        "labels": result.opt_partition.labels.tolist(),
        "centers": result.opt_partition.centers.tolist(),
        "cost_d": result.opt_cost,
        "nodes_explored": result.nodes_explored,
    }
    _write(json.dumps(document, indent=2), run.output)
    return EXIT_OK


def _cmd_check(args: argparse.Namespace, settings: HCKMConfig) -> int:
    run = run_config(args, settings)
    instance = load_instance(run, args.format is not None)
    registry = default_registry(settings.plugin_dirs, settings.disabled_subroutines)
    with cancel_on_interrupt() as cancel:
        solution = solve_hckm(instance, run.subroutine_config(), _options(run, cancel), registry)
    report = run_checks(instance, solution, index_for(instance, solution),
                        samples=args.samples, seed=run.seed)
    _write(json.dumps(report.as_dict(), indent=2), run.output)
    return EXIT_OK if report.passed else EXIT_ERROR


def _cmd_bench(args: argparse.Namespace, settings: HCKMConfig) -> int:
    seed = _pick(args.seed, settings.seed)
    options = SolveOptions(
        subroutine=_pick(args.subroutine, settings.subroutine),
        workers=_pick(args.workers, settings.workers),
        prune=settings.prune and not args.no_prune,
        progress_every=settings.progress_every,
    )
    registry = default_registry(settings.plugin_dirs, settings.disabled_subroutines)
    frame = run_bench(
        default_cases(args.sizes, args.ks, args.us),
        [seed + i for i in range(args.seeds)],
        epsilon=_pick(args.epsilon, settings.epsilon),
        options=options,
        registry=registry,
        overseed_factor=_pick(args.overseed_factor, settings.overseed_factor),
        lloyd_rounds=_pick(args.lloyd_rounds, settings.lloyd_rounds),
    )
    text = write_bench(frame, args.output)
    if args.output is None:
        _write(text, None)
    return EXIT_OK


_COMMANDS = {
    "solve": _cmd_solve,
    "oracle": _cmd_oracle,
    "check": _cmd_check,
    "bench": _cmd_bench,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        settings = HCKMConfig.from_yaml(args.config or "hckm.yaml")
        setup_logging(args.log_level or settings.log_level)
        return _COMMANDS[args.command](args, settings)
    except InfeasibleInstanceError as exc:
        print(f"hckm: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except Exception as exc:  # noqa: BLE001
        logger.debug("command %s failed", args.command, exc_info=True)
        print(f"hckm: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
