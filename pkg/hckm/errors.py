"""Exception hierarchy for the solver and its CLI."""

from __future__ import annotations


class HCKMError(Exception):
    """Base class for every error raised by hckm."""


class InfeasibleInstanceError(HCKMError):
    def __init__(self, n: int, k: int, u: int) -> None:
        super().__init__(f"Infeasible instance: n={n}, k={k}, u={u}")
        self.n = n
        self.k = k
        self.u = u


class DimensionMismatchError(HCKMError, ValueError):
    pass


class EmptyClusterError(HCKMError, ValueError):
    def __init__(self) -> None:
        super().__init__("empty cluster has no centroid")


class TransportationInfeasibleError(HCKMError):
    pass


class CostScalingError(HCKMError):
    def __init__(self, detail: str = "") -> None:
        msg = "cost magnitude exceeds scaling range"
        super().__init__(f"{msg} ({detail})" if detail else msg)


class OracleLimitError(HCKMError, ValueError):
    pass


class DatasetError(HCKMError, ValueError):
    def __init__(self, message: str, line: int | None = None) -> None:
        super().__init__(f"{message} at line {line}" if line is not None else message)
        self.line = line


class InvariantViolationError(HCKMError):
    pass


class UnknownSubroutineError(HCKMError, KeyError):
    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "unknown subroutine"
