"""Exhaustive solvers for toy instances."""

from hckm.oracle.exact import OracleResult, exact_assignment, exact_hckm, exact_km

__all__ = ["OracleResult", "exact_assignment", "exact_hckm", "exact_km"]
