"""Content-addressed JSON cache for Hilbert bases and Grobner bases.

Entries live in ``$TENSORGF_CACHE_DIR`` (default ``~/.cache/tensorgf``).
Writes go to a temporary file in the same directory and are renamed into
place, so a reader never sees a partial entry; a per-key lock file keeps
two processes from computing the same entry at once.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
import tempfile
from pathlib import Path
from typing import Any, Callable

from filelock import FileLock

log = logging.getLogger(__name__)

ENV_VAR = "TENSORGF_CACHE_DIR"
FORMAT_VERSION = 1


def default_dir() -> Path:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    return Path(os.environ.get("XDG_CACHE_HOME", Path.home() / ".cache")) / "tensorgf"


def content_key(kind: str, payload: Any) -> str:
    blob = json.dumps({"kind": kind, "v": FORMAT_VERSION, "payload": payload}, sort_keys=True)
    return f"{kind}-{hashlib.sha256(blob.encode()).hexdigest()[:32]}"


class Cache:
    """``get_or_compute(key, producer)`` with JSON values.

    A directory that cannot be created or written turns the cache into a
    pass-through.  A corrupt entry is logged as a warning, recomputed and
    overwritten.
    """

    def __init__(self, directory: str | os.PathLike | None = None, enabled: bool = True):
        self.enabled = enabled
        self.directory = Path(directory) if directory is not None else default_dir()
        self.hits = 0
        self.misses = 0
        if self.enabled:
            try:
                self.directory.mkdir(parents=True, exist_ok=True)
            except OSError as exc:
                log.warning("cache directory %s unusable (%s); caching disabled", self.directory, exc)
                self.enabled = False
            else:
                if not os.access(self.directory, os.W_OK):
                    log.warning("cache directory %s is not writable; caching disabled", self.directory)
                    self.enabled = False

    def path(self, key: str) -> Path:
        return self.directory / f"{key}.json"

    def _read(self, key: str):
        p = self.path(key)
        if not p.exists():
            return None
        try:
            doc = json.loads(p.read_text())
            if doc.get("key") != key or "value" not in doc:
                raise ValueError("entry does not carry its key")
            return doc
        except (ValueError, OSError) as exc:
            log.warning("corrupt cache entry %s (%s); recomputing", p, exc)
            return None

    def _write(self, key: str, value) -> None:
        text = json.dumps({"key": key, "value": value}, sort_keys=True, indent=1)
        fd, tmp = tempfile.mkstemp(dir=self.directory, prefix=f".{key}.", suffix=".tmp")
        try:
            with os.fdopen(fd, "w") as fh:
                fh.write(text)
            os.replace(tmp, self.path(key))
        except OSError:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise

    def get_or_compute(self, key: str, producer: Callable[[], Any]):
        if not self.enabled:
            return producer()
        with FileLock(str(self.directory / f".{key}.lock")):
            doc = self._read(key)
            if doc is not None:
                self.hits += 1
                return doc["value"]
            self.misses += 1
            value = producer()
            try:
                self._write(key, value)
            except OSError as exc:
                log.warning("could not write cache entry %s: %s", key, exc)
            return value


def cached(cache: Cache | None, kind: str, payload, producer: Callable[[], Any]):
    if cache is None:
        return producer()
    return cache.get_or_compute(content_key(kind, payload), producer)
