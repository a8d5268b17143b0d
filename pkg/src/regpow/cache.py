"""Persistent content-addressed cache of reduced Groebner bases."""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
import threading
import warnings
from pathlib import Path

from .kernel import MonomialOrder, Ring

FORMAT = "regpow-gb-cache"
VERSION = 1


def cache_key(ring: Ring, order: MonomialOrder, gens) -> str:
    payload = {
        "field": str(ring.field),
        "vars": list(ring.variables),
        "grading": [list(g) for g in ring.grading],
        "order": [order.kind, order.block],
        "gens": sorted(g.render() for g in gens),
    }
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


class GBCache:
    def __init__(self, root: str | os.PathLike | None = None):
        self.root = Path(root or os.environ.get("REGPOW_CACHE_DIR", ".regpow-cache"))
        self._lock = threading.Lock()
        self._mem: dict = {}
        self.hits = 0
        self.misses = 0

    def _path(self, key: str) -> Path:
        return self.root / key[:2] / f"{key}.json"

    def load(self, ring: Ring, order: MonomialOrder, gens):
        key = cache_key(ring, order, gens)
        with self._lock:
            if key in self._mem:
                self.hits += 1
                return [ring(t) for t in self._mem[key]]
        path = self._path(key)
        if not path.exists():
            self.misses += 1
            return None
        try:
            data = json.loads(path.read_text())
            if data.get("format") != FORMAT or data.get("version") != VERSION or data.get("key") != key:
                raise ValueError("header mismatch")
            polys = [ring(t) for t in data["basis"]]
        except Exception as exc:  # corrupt entries are recomputed
            warnings.warn(f"ignoring corrupt cache entry {path}: {exc}")
            self.misses += 1
            return None
        with self._lock:
            self._mem[key] = data["basis"]
            self.hits += 1
        return polys

    def store(self, ring: Ring, order: MonomialOrder, gens, basis) -> None:
        key = cache_key(ring, order, gens)
        texts = [g.render() for g in basis]
        with self._lock:
            self._mem[key] = texts
        path = self._path(key)
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            doc = {"format": FORMAT, "version": VERSION, "key": key, "basis": texts}
            fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
            with os.fdopen(fd, "w") as fh:
                json.dump(doc, fh)
            os.replace(tmp, path)
        except OSError as exc:
            warnings.warn(f"could not write cache entry {path}: {exc}")
