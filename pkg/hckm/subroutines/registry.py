"""Subroutine discovery and registration."""

from __future__ import annotations

import importlib.util
import inspect
import logging
from pathlib import Path

from hckm.core.models import Instance, as_points
from hckm.errors import InvariantViolationError, UnknownSubroutineError
from hckm.subroutines.base import KMSubroutine, SubroutineConfig
from hckm.types import FloatArray

logger = logging.getLogger(__name__)


class SubroutineRegistry:
    def __init__(self, disabled: list[str] | None = None) -> None:
        self._subroutines: dict[str, KMSubroutine] = {}
        self._disabled = set(disabled or [])

    def register(self, subroutine: KMSubroutine) -> None:
        name = subroutine.name()
        if name in self._disabled:
            logger.info("Subroutine %s disabled by config, not registering", name)
            return
        if name in self._subroutines:
            logger.warning("Subroutine %s re-registered, replacing previous", name)
        self._subroutines[name] = subroutine
        logger.debug("Registered subroutine %s", name)

    def get(self, name: str) -> KMSubroutine:
        try:
            return self._subroutines[name]
        except KeyError:
            raise UnknownSubroutineError(
                f"unknown subroutine {name!r}; registered: {', '.join(self.names()) or 'none'}"
            ) from None

    def names(self) -> list[str]:
        return sorted(self._subroutines)

    def register_builtins(self) -> None:
        from hckm.subroutines.builtin.overseed import OverseedSubroutine

        for subroutine_cls in [OverseedSubroutine]:
            self.register(subroutine_cls())

    def load_plugins(self, dirs: list[str]) -> int:
        """Import every ``*.py`` under ``dirs`` and register concrete subroutines."""
        loaded = 0
        for directory in dirs:
            for path in sorted(Path(directory).glob("*.py")):
                if path.name.startswith("_"):
                    continue
                spec = importlib.util.spec_from_file_location(f"hckm_plugin_{path.stem}", path)
                if spec is None or spec.loader is None:
                    continue
                module = importlib.util.module_from_spec(spec)
                spec.loader.exec_module(module)
                for _, obj in inspect.getmembers(module, inspect.isclass):
                    if (issubclass(obj, KMSubroutine) and obj is not KMSubroutine
                            and not inspect.isabstract(obj) and obj.__module__ == module.__name__):
                        self.register(obj())
                        loaded += 1
        if loaded:
            logger.info("Loaded %d plugin subroutine(s) from %s", loaded, ", ".join(dirs))
        return loaded

    def run(self, name: str, instance: Instance, config: SubroutineConfig) -> FloatArray:
        """Run a subroutine and enforce k <= |S| <= n and the dimension."""
        representing = as_points(self.get(name).run(instance, config)).copy()
        m = representing.shape[0]
        if not min(instance.k, instance.n) <= m <= instance.n:
            raise InvariantViolationError(
                f"subroutine {name} returned {m} points; expected {instance.k}..{instance.n}"
            )
        if representing.shape[1] != instance.dim:
            raise InvariantViolationError(
                f"subroutine {name} returned dimension {representing.shape[1]}, "
                f"instance has {instance.dim}"
            )
        representing.setflags(write=False)
        return representing


def default_registry(plugin_dirs: list[str] | None = None,
                     disabled: list[str] | None = None) -> SubroutineRegistry:
    registry = SubroutineRegistry(disabled)
    registry.register_builtins()
    if plugin_dirs:
        registry.load_plugins(plugin_dirs)
    return registry
