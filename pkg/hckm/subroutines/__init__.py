"""Pluggable uncapacitated k-means subroutines producing the representing set."""

from hckm.subroutines.base import KMSubroutine, SubroutineConfig
from hckm.subroutines.quality import measure_lambda1
from hckm.subroutines.registry import SubroutineRegistry, default_registry

__all__ = [
    "KMSubroutine",
    "SubroutineConfig",
    "SubroutineRegistry",
    "default_registry",
    "measure_lambda1",
]
