"""Append-only JSON-lines catalog of decomposition instances.

One record per line: {"key": ..., "instance": {...}, "created_at": ...,
"generator": ...}.  Keys are unique within a file; appends are deduplicated
against existing keys and written as single complete lines, so a torn write
can never be read back as a valid record.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from datetime import datetime, timezone

from .search import DecompInstance, instance_from_json_dict

_RECORD_FIELDS = ("key", "instance", "created_at", "generator")


class CatalogError(Exception):
    def __init__(self, path: str, line_no: int, reason: str):
        super().__init__(f"{path}:{line_no}: {reason}")
        self.path = path
        self.line_no = line_no
        self.reason = reason


@dataclass(frozen=True)
class CatalogRecord:
    key: str
    instance: DecompInstance
    created_at: str
    generator: str

    def to_json_line(self) -> str:
        return json.dumps(
            {
                "key": self.key,
                "instance": self.instance.to_json_dict(),
                "created_at": self.created_at,
                "generator": self.generator,
            },
            separators=(",", ":"),
        )


def read_records(path: str) -> list[CatalogRecord]:
    """Load and validate a catalog; raises CatalogError naming the first bad line."""
    if not os.path.exists(path):
        raise CatalogError(path, 0, "no such file")
    records: list[CatalogRecord] = []
    seen: set[str] = set()
    with open(path, "rb") as fh:
        for line_no, raw in enumerate(fh, start=1):
            text = raw.decode("utf-8", errors="replace").strip()
            if not text:
                continue
            try:
                obj = json.loads(text)
            except json.JSONDecodeError as exc:
                raise CatalogError(path, line_no, f"malformed JSON ({exc.msg})") from exc
            if not isinstance(obj, dict) or set(obj) != set(_RECORD_FIELDS):
                raise CatalogError(path, line_no, "record fields do not match schema")
            try:
                inst = instance_from_json_dict(obj["instance"])
            except (KeyError, ValueError, TypeError) as exc:
                raise CatalogError(path, line_no, f"bad instance: {exc}") from exc
            if obj["key"] != inst.key:
                raise CatalogError(path, line_no, "stored key disagrees with instance")
            if obj["key"] in seen:
                raise CatalogError(path, line_no, f"duplicate key {obj['key']!r}")
            seen.add(obj["key"])
            records.append(CatalogRecord(
                key=obj["key"],
                instance=inst,
                created_at=str(obj["created_at"]),
                generator=str(obj["generator"]),
            ))
    return records


def existing_keys(path: str) -> set[str]:
    if not os.path.exists(path):
        return set()
    return {rec.key for rec in read_records(path)}


def append_instances(path: str, instances, generator: str) -> int:
    """Append records for new keys only; returns how many were added.

    Each record is written with a single os.write of the complete line.
    """
    keys = existing_keys(path)
    added = 0
    fd = os.open(path, os.O_WRONLY | os.O_CREAT | os.O_APPEND, 0o644)
    try:
        for inst in instances:
            if inst.key in keys:
                continue
            keys.add(inst.key)
            record = CatalogRecord(
                key=inst.key,
                instance=inst,
                created_at=datetime.now(timezone.utc).isoformat(timespec="seconds"),
                generator=generator,
            )
            os.write(fd, (record.to_json_line() + "\n").encode("utf-8"))
            added += 1
    finally:
        os.close(fd)
    return added


def export_lines(path: str):
    """Re-emit the catalog as canonical JSON lines (read-only)."""
    for rec in read_records(path):
        yield rec.to_json_line()
