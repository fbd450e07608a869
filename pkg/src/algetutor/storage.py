"""Embedded persistence: an append-only JSONL log plus JSON document files.

The log is the source of truth; document files only hold what cannot be
replayed from it (sessions, which instances exist). No external database.
"""

from __future__ import annotations

import json
import os
import threading
from pathlib import Path

from .records import TransactionRecord, parse_line


class StorageUnavailableError(OSError):
    """Wraps I/O failures so callers can answer 503 with retry advice."""


class LogStore:
    """In-memory log; base class for the file-backed variant."""

    def __init__(self) -> None:
        self._records: list[TransactionRecord] = []
        self._lock = threading.Lock()

    def append(self, record: TransactionRecord) -> None:
        with self._lock:
            self._records.append(record)

    def records(self) -> list[TransactionRecord]:
        with self._lock:
            return list(self._records)

    def count_for_student(self, student_id: str) -> int:
        with self._lock:
            return sum(1 for r in self._records if r.student_id == student_id)


class FileLogStore(LogStore):
    def __init__(self, path: Path):
        super().__init__()
        self.path = path
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            if path.exists():
                with path.open("r", encoding="utf-8") as handle:
                    for i, line in enumerate(handle, start=1):
                        line = line.strip()
                        if line:
                            self._records.append(parse_line(line, i))
        except OSError as exc:
            raise StorageUnavailableError(str(exc)) from exc

    def append(self, record: TransactionRecord) -> None:
        with self._lock:
            try:
                with self.path.open("a", encoding="utf-8") as handle:
                    handle.write(record.to_json() + "\n")
                    handle.flush()
                    os.fsync(handle.fileno())
            except OSError as exc:
                raise StorageUnavailableError(str(exc)) from exc
            self._records.append(record)


class DocumentStore:
    """One JSON object per file, rewritten atomically on each save."""

    def __init__(self, path: Path | None):
        self.path = path
        self._lock = threading.Lock()
        self._data: dict = {}
        if path is not None and path.exists():
            try:
                self._data = json.loads(path.read_text(encoding="utf-8"))
            except OSError as exc:
                raise StorageUnavailableError(str(exc)) from exc

    def load(self) -> dict:
        with self._lock:
            return dict(self._data)

    def save(self, data: dict) -> None:
        with self._lock:
            self._data = dict(data)
            if self.path is None:
                return
            try:
                self.path.parent.mkdir(parents=True, exist_ok=True)
                tmp = self.path.with_suffix(".tmp")
                tmp.write_text(
                    json.dumps(self._data, indent=2, sort_keys=True), encoding="utf-8"
                )
                tmp.replace(self.path)
            except OSError as exc:
                raise StorageUnavailableError(str(exc)) from exc

    def update(self, key: str, value: dict) -> None:
        with self._lock:
            self._data[key] = value
            if self.path is None:
                return
            try:
                self.path.parent.mkdir(parents=True, exist_ok=True)
                tmp = self.path.with_suffix(".tmp")
                tmp.write_text(
                    json.dumps(self._data, indent=2, sort_keys=True), encoding="utf-8"
                )
                tmp.replace(self.path)
            except OSError as exc:
                raise StorageUnavailableError(str(exc)) from exc
