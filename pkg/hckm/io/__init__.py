"""Datasets in, solutions and bench tables out."""

from hckm.io.datasets import generate_instance, load_dataset, parse_points
from hckm.io.results import (
    SolutionDocument,
    emit_solution,
    load_solution,
    recompute_cost_d,
    solution_document,
)

__all__ = [
    "SolutionDocument",
    "emit_solution",
    "generate_instance",
    "load_dataset",
    "load_solution",
    "parse_points",
    "recompute_cost_d",
    "solution_document",
]
