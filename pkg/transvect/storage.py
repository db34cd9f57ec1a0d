"""
Thread-safe store for move-equivalence classes of small graphs.

Classes are sets of canonical graph keys (see ``CanonicalGraph.key``). Every
member key is indexed back to the name of its class, so any graph of a
class that was explored once resolves without a second exploration.

Data Structure:
- classes: class name -> sorted list of canonical keys
- members: canonical key -> class name
- sizes: class name -> size recorded the first time the class was built

Usage:
    from transvect.storage import storage

    keys = storage.get_or_compute("e6", explore_e6)
    name = storage.find_class("6:3c1")
"""

import json
import logging
from collections.abc import Callable, Iterable
from pathlib import Path
from threading import RLock

from transvect.config import settings
from transvect.services.errors import InvariantViolation

logger = logging.getLogger(__name__)


def _empty() -> dict:
    return {"classes": {}, "members": {}, "sizes": {}}


class ClassStore:
    """
    Lock-guarded class store.

    Held in memory; mirrored to a JSON file only when a path is configured.
    Recorded sizes survive ``reset`` so a recomputed class is checked against
    the size it had before.
    """

    def __init__(self, file_path: str | None = None):
        self.file_path = Path(file_path) if file_path else None
        if self.file_path is not None:
            self.file_path.parent.mkdir(parents=True, exist_ok=True)
        self._lock = RLock()
        self._data = self._load()

    def _load(self) -> dict:
        if self.file_path is not None and self.file_path.exists():
            try:
                with open(self.file_path, "r") as f:
                    data = json.load(f)
                if set(data) == set(_empty()):
                    return data
                logger.warning("Class cache %s has an unexpected layout, starting fresh", self.file_path)
            except json.JSONDecodeError:
                logger.warning("Corrupted class cache %s, starting fresh", self.file_path)
        return _empty()

    def _save(self) -> None:
        if self.file_path is None:
            return
        with open(self.file_path, "w") as f:
            json.dump(self._data, f, indent=2, sort_keys=True)

    def reset(self, forget_sizes: bool = False) -> None:
        """Drop every stored class (useful for testing)."""
        with self._lock:
            sizes = {} if forget_sizes else self._data["sizes"]
            self._data = _empty()
            self._data["sizes"] = sizes
            self._save()

    # =========================================================================
    # Classes
    # =========================================================================

    def get_class(self, name: str) -> frozenset[str] | None:
        with self._lock:
            keys = self._data["classes"].get(name)
            return frozenset(keys) if keys is not None else None

    def find_class(self, key: str) -> str | None:
        """Name of the stored class containing the canonical key, if any."""
        with self._lock:
            return self._data["members"].get(key)

    def add_class(self, name: str, keys: Iterable[str]) -> frozenset[str]:
        with self._lock:
            keys = sorted(set(keys))
            recorded = self._data["sizes"].get(name)
            if recorded is not None and recorded != len(keys):
                raise InvariantViolation(
                    f"class {name} has {len(keys)} members, {recorded} were recorded before"
                )
            self._data["classes"][name] = keys
            self._data["sizes"][name] = len(keys)
            for key in keys:
                self._data["members"][key] = name
            self._save()
            logger.debug("stored class %s with %d members", name, len(keys))
            return frozenset(keys)

    def get_or_compute(self, name: str, compute: Callable[[], Iterable[str]]) -> frozenset[str]:
        """Return the named class, computing it at most once."""
        with self._lock:
            existing = self.get_class(name)
            if existing is not None:
                return existing
            return self.add_class(name, compute())

    # =========================================================================
    # Statistics
    # =========================================================================

    def get_statistics(self) -> dict:
        with self._lock:
            classes = self._data["classes"]
            return {
                "total_classes": len(classes),
                "total_members": len(self._data["members"]),
                "class_sizes": {name: len(keys) for name, keys in sorted(classes.items())},
                "persisted": self.file_path is not None,
            }


# Singleton instance - use this throughout the package
storage = ClassStore(settings.cache_path or None)
