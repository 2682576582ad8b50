"""Composition sweep, driver and the invariant checks around it."""

from hckm.solver.bounds import ratio_bound, ratio_to_optimum, verify_sandwich, verify_two_sided
from hckm.solver.checks import CheckReport, CheckResult, run_checks
from hckm.solver.driver import Solution, SolveOptions, certify, index_for, solve_hckm

__all__ = [
    "CheckReport",
    "CheckResult",
    "Solution",
    "SolveOptions",
    "certify",
    "index_for",
    "ratio_bound",
    "ratio_to_optimum",
    "run_checks",
    "solve_hckm",
    "verify_sandwich",
    "verify_two_sided",
]
