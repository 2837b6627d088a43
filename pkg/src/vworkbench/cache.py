"""Deterministic JSON result cache with atomic writes and audit recomputes."""

from __future__ import annotations

import hashlib
import json
import os
import random
import tempfile

ENGINE_VERSION = "0.1.0"
ENV_CACHE_DIR = "VW_CACHE_DIR"
AUDIT_RATE = 0.05


class ResultCache:
    """File cache keyed by a hash of the job parameters and engine version.

    Entries are immutable once written; bumping ENGINE_VERSION invalidates
    everything.  In audit mode a deterministic per-key coin recomputes about
    5% of hits and insists the stored payload matches.
    """

    def __init__(self, directory=None, audit=False):
        if directory is None:
            directory = os.environ.get(ENV_CACHE_DIR) or None
        self.directory = directory
        self.audit = audit
        self.hits = 0
        self.misses = 0
        self.audited = 0
        if self.directory:
            os.makedirs(self.directory, exist_ok=True)

    @staticmethod
    def key_of(params) -> str:
        blob = json.dumps(
            {"engine": ENGINE_VERSION, "params": params},
            sort_keys=True,
            separators=(",", ":"),
        )
        return hashlib.sha256(blob.encode()).hexdigest()

    def _path(self, key):
        return os.path.join(self.directory, key + ".json")

    def get_or_compute(self, params, compute):
        if not self.directory:
            return compute()
        key = self.key_of(params)
        path = self._path(key)
        if os.path.exists(path):
            with open(path, "r", encoding="utf-8") as fh:
                payload = json.load(fh)
            self.hits += 1
            if self.audit and random.Random(key).random() < AUDIT_RATE:
                self.audited += 1
                fresh = compute()
                if _normalize(fresh) != _normalize(payload):
                    raise RuntimeError(
                        f"cache audit mismatch for key {key}: "
                        f"cached={payload!r} fresh={fresh!r}"
                    )
            return payload
        self.misses += 1
        payload = compute()
        tmp_fd, tmp_path = tempfile.mkstemp(
            dir=self.directory, prefix=".tmp-", suffix=".json"
        )
        try:
            with os.fdopen(tmp_fd, "w", encoding="utf-8") as fh:
                json.dump(payload, fh, sort_keys=True, separators=(",", ":"))
            os.replace(tmp_path, path)
        finally:
            if os.path.exists(tmp_path):
                os.unlink(tmp_path)
        return payload


def _normalize(payload):
    return json.loads(
        json.dumps(payload, sort_keys=True, separators=(",", ":"))
    )
