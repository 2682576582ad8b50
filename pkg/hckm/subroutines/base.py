"""Uncapacitated k-means subroutine abstraction.

A subroutine maps an instance to a representing set S with k <= |S| <= n.
The final guarantee degrades gracefully with its cost ratio against the
uncapacitated optimum, so any implementation honoring the size contract can
be plugged in.
"""

from __future__ import annotations

import abc
import math
from dataclasses import dataclass

from hckm.core.models import Instance
from hckm.types import FloatArray


@dataclass(frozen=True)
class SubroutineConfig:
    epsilon_prime: float = 0.01
    overseed_factor: float = 3.0
    lloyd_rounds: int = 20
    rng_seed: int = 0

    def __post_init__(self) -> None:
        if not self.epsilon_prime > 0:
            raise ValueError(f"epsilon_prime must be positive, got {self.epsilon_prime}")
        if not self.overseed_factor > 0:
            raise ValueError(f"overseed_factor must be positive, got {self.overseed_factor}")
        if self.lloyd_rounds < 0:
            raise ValueError(f"lloyd_rounds must be nonnegative, got {self.lloyd_rounds}")
        if not 0 <= self.rng_seed < 2**64:
            raise ValueError("rng_seed must be an unsigned 64-bit integer")

    @classmethod
    def from_epsilon(cls, epsilon: float, **kwargs) -> SubroutineConfig:
        """Subroutine parameter for a target ratio of 69 + epsilon."""
        return cls(epsilon_prime=epsilon / 36.0, **kwargs)

    def target_size(self, n: int, k: int) -> int:
        """m = min(n, ceil(beta * k * max(1, ln(1/eps')))), never below k."""
        log_term = max(1.0, math.log(1.0 / self.epsilon_prime))
        m = math.ceil(self.overseed_factor * k * log_term)
        return max(min(k, n), min(n, m))


class KMSubroutine(abc.ABC):
    @abc.abstractmethod
    def run(self, instance: Instance, config: SubroutineConfig) -> FloatArray:
        """Return the representing set S as an (m, d) array."""

    @abc.abstractmethod
    def name(self) -> str:
        """Registry key."""

    def description(self) -> str:
        return ""
