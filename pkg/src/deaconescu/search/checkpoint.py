"""Versioned JSON checkpoints, written atomically."""
from __future__ import annotations

import json
import os
import tempfile

from ..errors import CheckpointMismatchError
from .config import SearchConfig
from .report import SearchReport

VERSION = 1


def write_checkpoint(path: str, config: SearchConfig, report: SearchReport) -> None:
    payload = {
        "version": VERSION,
        "config_hash": config.config_hash(),
        "mode": config.mode,
        "cursor": report.cursor,
        "partial_counters": report.to_dict(),
        "config": config.to_dict(),
    }
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(prefix=".ckpt-", dir=directory)
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, sort_keys=True)
            fh.flush()
            os.fsync(fh.fileno())
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def read_checkpoint(path: str) -> dict:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def validate_checkpoint(token: dict, config: SearchConfig) -> SearchReport:
    """Check ``token`` belongs to ``config`` and return its partial report."""
    if token.get("version") != VERSION:
        raise CheckpointMismatchError(f"unsupported checkpoint version {token.get('version')!r}")
    if token.get("mode") != config.mode or token.get("config_hash") != config.config_hash():
        raise CheckpointMismatchError("checkpoint was written for a different configuration")
    report = SearchReport.from_dict(token["partial_counters"])
    report.cursor = token["cursor"]
    return report
