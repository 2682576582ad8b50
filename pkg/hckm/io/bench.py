"""Ratio/runtime tables over seeded synthetic instances."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, replace
from pathlib import Path

import pandas as pd

from hckm.config import GeneratorSpec
from hckm.core.models import Instance
from hckm.errors import HCKMError
from hckm.io.datasets import generate_instance
from hckm.solver.bounds import ratio_bound
from hckm.solver.driver import SolveOptions, solve_hckm
from hckm.subroutines.base import SubroutineConfig
from hckm.subroutines.registry import SubroutineRegistry

logger = logging.getLogger(__name__)

RATIO_WARNING = 5.0

COLUMNS = [
    "generator", "n", "k", "u", "seed", "cost_d", "opt", "ratio", "bound",
    "lambda1", "compositions", "runtime_ms",
]


@dataclass(frozen=True)
class BenchCase:
    generator: str
    n: int
    k: int
    u: int

    def spec(self, seed: int) -> GeneratorSpec:
        if self.generator == "uniform":
            return GeneratorSpec(kind="uniform", n=self.n, dim=2, spread=10.0, seed=seed)
        per_blob = max(1, self.n // self.k)
        return GeneratorSpec(kind="blobs", count=self.k, per_blob=per_blob, sigma=1.0,
                             spread=10.0, seed=seed)


def default_cases(sizes: list[int], ks: list[int], us: list[int]) -> list[BenchCase]:
    """Every (generator, n, k, u) combination that admits a feasible solution."""
    cases = []
    for generator in ("blobs", "uniform"):
        for n in sizes:
            for k in ks:
                for u in us:
                    case = BenchCase(generator, n, k, u)
                    real_n = n if generator == "uniform" else k * max(1, n // k)
                    if k <= real_n <= k * u:
                        cases.append(case)
    return cases


def bench_row(case: BenchCase, seed: int, epsilon: float, options: SolveOptions,
              registry: SubroutineRegistry | None = None, **subroutine_fields) -> dict:
    points = generate_instance(case.spec(seed))
    instance = Instance(points, case.k, case.u)
    config = SubroutineConfig.from_epsilon(epsilon, rng_seed=seed, **subroutine_fields)
    solution = solve_hckm(instance, config, replace(options, certify=True), registry)
    row = {
        "generator": case.generator,
        "n": instance.n,
        "k": case.k,
        "u": case.u,
        "seed": seed,
        "cost_d": solution.cost_after_recenter.cost_d,
        "opt": math.nan,
        "ratio": math.nan,
        "bound": solution.advertised_bound,
        "lambda1": math.nan,
        "compositions": solution.compositions_evaluated,
        "runtime_ms": int(solution.wall_time * 1000),
    }
    if solution.certified_ratio is not None:
        row["opt"] = solution.oracle_opt
        row["ratio"] = solution.certified_ratio
        row["lambda1"] = solution.lambda1
        if math.isfinite(solution.lambda1):
            row["bound"] = ratio_bound(solution.lambda1)
        if row["ratio"] > RATIO_WARNING:
            logger.warning(
                "ratio %.4g above %.1f: %s seed=%d", row["ratio"], RATIO_WARNING, case, seed,
            )
    return row


def run_bench(cases: list[BenchCase], seeds: list[int], epsilon: float = 0.36,
              options: SolveOptions | None = None,
              registry: SubroutineRegistry | None = None, **subroutine_fields) -> pd.DataFrame:
    options = options or SolveOptions()
    rows = []
    for case in cases:
        for seed in seeds:
            try:
                rows.append(bench_row(case, seed, epsilon, options, registry, **subroutine_fields))
            except HCKMError as exc:
                logger.error("bench case %s seed=%d failed: %s", case, seed, exc)
    frame = pd.DataFrame(rows, columns=COLUMNS)
    if not frame.empty:
        logger.info(
            "bench: %d runs, max ratio %.4g, mean runtime %.1f ms",
            len(frame), frame["ratio"].max(), frame["runtime_ms"].mean(),
        )
    return frame


def write_bench(frame: pd.DataFrame, path: str | Path | None) -> str:
    """CSV text of the table; also written to ``path`` when given."""
    text = frame.to_csv(index=False)
    if path is not None:
        try:
            Path(path).write_text(text, encoding="utf-8")
        except OSError as exc:
            raise HCKMError(f"cannot write bench table to {path}: {exc.strerror}") from None
    return text
