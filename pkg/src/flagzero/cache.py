"""Persistent JSON cache for expensive results.

Entries live one per file, named by the SHA-256 of the canonical key, and
are written via a temporary file plus ``os.replace`` so concurrent writers
never leave a torn file behind.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
import warnings
from datetime import datetime, timezone
from pathlib import Path

from . import __version__

SCHEMA_VERSION = 1


def default_cache_dir():
    env = os.environ.get("FLAGZERO_CACHE_DIR")
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(os.path.expanduser("~"), ".cache")
    return Path(base) / "flagzero"


def make_key(family, rank, kind, params=None, code_version=__version__):
    params = params or {}
    digest = hashlib.sha256(json.dumps(params, sort_keys=True).encode()).hexdigest()[:16]
    return {"family": family, "rank": rank, "kind": kind,
            "params": digest, "code_version": code_version}


def _canonical(obj):
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


class Cache:
    def __init__(self, directory=None, code_version=__version__):
        self.directory = Path(directory) if directory is not None else default_cache_dir()
        self.code_version = code_version

    def path_for(self, key):
        return self.directory / (hashlib.sha256(_canonical(key).encode()).hexdigest() + ".json")

    def get(self, key):
        """Stored payload, or None on a miss (absent, corrupt or stale entry)."""
        path = self.path_for(key)
        try:
            text = path.read_text(encoding="utf-8")
        except FileNotFoundError:
            return None
        except OSError as exc:
            warnings.warn(f"cache entry {path.name} unreadable ({exc}); recomputing")
            return None
        try:
            entry = json.loads(text)
            ok = isinstance(entry, dict) and {"schema_version", "key", "payload"} <= entry.keys()
        except json.JSONDecodeError:
            ok = False
        if not ok:
            warnings.warn(f"corrupt cache entry {path.name}; recomputing")
            return None
        if entry["schema_version"] != SCHEMA_VERSION or entry["key"] != key:
            return None
        if key.get("code_version") != self.code_version:
            return None
        return entry["payload"]

    def put(self, key, payload):
        self.directory.mkdir(parents=True, exist_ok=True)
        entry = {
            "schema_version": SCHEMA_VERSION,
            "key": key,
            "payload": payload,
            "created_at": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        }
        path = self.path_for(key)
        fd, tmp = tempfile.mkstemp(dir=self.directory, prefix=".tmp-", suffix=".json")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                fh.write(_canonical(entry))
                fh.flush()
                os.fsync(fh.fileno())
            os.replace(tmp, path)
        except BaseException:
            try:
                os.unlink(tmp)
            except FileNotFoundError:
                pass
            raise
        return path

    def get_or_compute(self, key, compute):
        """(payload, hit) using ``compute()`` on a miss; the payload is stored canonically."""
        payload = self.get(key)
        if payload is not None:
            return payload, True
        payload = json.loads(_canonical(compute()))
        self.put(key, payload)
        return payload, False


__all__ = ["Cache", "SCHEMA_VERSION", "default_cache_dir", "make_key"]
