"""
Content-addressed on-disk cache of reports.

Entries are keyed by the SHA-256 of the canonical JSON of the job, the
group fingerprint and the report schema version.
"""

import hashlib
import json
import tempfile
from pathlib import Path
from typing import Optional

from .. import __version__
from .config import SCHEMA_VERSION
from .logging_utils import log_warning


def canonical_json(document) -> str:
    """Deterministic JSON text (sorted keys, fixed separators)."""
    return json.dumps(document, sort_keys=True, ensure_ascii=False, separators=(",", ":"), default=str)


def cache_key(job: dict, group_fingerprint: Optional[str]) -> str:
    """SHA-256 hex digest identifying a job's report."""
    payload = {
        "job": job,
        "group": group_fingerprint,
        "schema": SCHEMA_VERSION,
        "version": __version__,
    }
    return hashlib.sha256(canonical_json(payload).encode("utf-8")).hexdigest()


class ReportCache:
    """JSON reports stored as ``<key>.json`` under one directory."""

    def __init__(self, directory: Path, enabled: bool = True):
        self.directory = directory
        self.enabled = enabled

    def _path(self, key: str) -> Path:
        return self.directory / f"{key}.json"

    def get(self, key: str) -> Optional[dict]:
        """The cached report, or None on a miss or an unreadable entry."""
        if not self.enabled:
            return None
        path = self._path(key)
        if not path.is_file():
            return None
        try:
            with open(path, 'r', encoding='utf-8') as f:
                return json.load(f)
        except (OSError, json.JSONDecodeError) as e:
            log_warning(f"Ignoring unreadable cache entry {path.name}: {e}")
            return None

    def put(self, key: str, report: dict) -> None:
        """Store a report; failures to write are logged and ignored."""
        if not self.enabled:
            return
        try:
            self.directory.mkdir(parents=True, exist_ok=True)
            with tempfile.NamedTemporaryFile("w", encoding="utf-8", dir=self.directory, suffix=".tmp",
                                             delete=False) as f:
                f.write(canonical_json(report))
            Path(f.name).replace(self._path(key))
        except OSError as e:
            log_warning(f"Could not write cache entry {key[:12]}: {e}")
