"""
Cache - Persistent JSON results keyed by a hash of the canonical input.

Writes go to a temporary file in the cache directory and are renamed into
place, so concurrent invocations never observe a partial entry.
"""

import hashlib
import json
import logging
import os
import tempfile
from pathlib import Path
from typing import Any, Callable, Dict, Optional

from . import __version__

logger = logging.getLogger(__name__)

CACHE_VERSION = 1


class ResultCache:
    """JSON result cache; a ``None`` directory disables it."""

    def __init__(self, directory: Optional[str] = None):
        self.directory = Path(directory) if directory else None

    @property
    def enabled(self) -> bool:
        return self.directory is not None

    @staticmethod
    def key(kind: str, payload: Dict[str, Any]) -> str:
        canonical = json.dumps(
            {
                "kind": kind,
                "version": CACHE_VERSION,
                "package": __version__,
                "input": payload,
            },
            sort_keys=True,
            separators=(",", ":"),
        )
        return hashlib.sha256(canonical.encode("utf-8")).hexdigest()

    def _path(self, key: str) -> Path:
        assert self.directory is not None
        return self.directory / key[:2] / f"{key}.json"

    def get(self, kind: str, payload: Dict[str, Any]) -> Optional[str]:
        if not self.enabled:
            return None
        path = self._path(self.key(kind, payload))
        try:
            text = path.read_text(encoding="utf-8")
        except FileNotFoundError:
            return None
        logger.debug(f"Cache hit {kind}: {path.name}")
        return text

    def put(self, kind: str, payload: Dict[str, Any], text: str) -> None:
        if not self.enabled:
            return
        path = self._path(self.key(kind, payload))
        path.parent.mkdir(parents=True, exist_ok=True)
        fd, temp_name = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as handle:
                handle.write(text)
            os.replace(temp_name, path)
        except BaseException:
            if os.path.exists(temp_name):
                os.unlink(temp_name)
            raise
        logger.debug(f"Cache store {kind}: {path.name}")

    def get_or_compute(self, kind: str, payload: Dict[str, Any],
                       compute: Callable[[], str]) -> str:
        cached = self.get(kind, payload)
        if cached is not None:
            return cached
        text = compute()
        self.put(kind, payload, text)
        return text
