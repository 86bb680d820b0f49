"""Append-only reply cache keyed by a content hash of the request."""

from __future__ import annotations

import hashlib
import json
import threading
from datetime import datetime, timezone
from pathlib import Path


def cache_key(model: str, prompt_text: str, temperature: float, max_new_tokens: int) -> str:
    """Stable content hash over everything that determines a reply."""
    material = json.dumps(
        [model, prompt_text, temperature, max_new_tokens],
        ensure_ascii=False,
        separators=(",", ":"),
    )
    return hashlib.sha256(material.encode("utf-8")).hexdigest()


class ResponseCache:
    """JSON-lines cache; entries are never mutated, lookups never write.

    With no path the cache lives in memory only. The file is loaded once at
    construction; concurrent writers are serialized through a lock.
    """

    def __init__(self, path: str | Path | None = None):
        self._path = Path(path) if path is not None else None
        self._lock = threading.Lock()
        self._entries: dict[str, str] = {}
        if self._path is not None and self._path.exists():
            for line in self._path.read_text(encoding="utf-8").splitlines():
                if not line.strip():
                    continue
                entry = json.loads(line)
                self._entries[entry["key"]] = entry["reply"]

    def get(self, key: str) -> str | None:
        with self._lock:
            return self._entries.get(key)

    def put(self, key: str, reply: str) -> None:
        with self._lock:
            if key in self._entries:
                return
            self._entries[key] = reply
            if self._path is not None:
                record = {
                    "key": key,
                    "reply": reply,
                    "created_at": datetime.now(timezone.utc).isoformat(),
                }
                with self._path.open("a", encoding="utf-8") as handle:
                    handle.write(json.dumps(record, ensure_ascii=False) + "\n")

    def __len__(self) -> int:
        with self._lock:
            return len(self._entries)
