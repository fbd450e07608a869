"""Append-only transaction records and their JSON Lines wire format.

One record per learner event. The log file is the interchange format between
the service, the analytics module, and the admin CLI, and it is the source
of truth for mastery state (which is rebuilt by replay).
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from typing import IO, Iterable, Iterator

ACTIONS = ("access", "attempt", "hint", "done")
OUTCOMES = ("correct", "incorrect", "n/a")


class RecordError(ValueError):
    pass


@dataclass(frozen=True)
class TransactionRecord:
    timestamp: str  # ISO 8601, UTC
    student_id: str
    session_id: str
    tutor_id: str
    problem_type_id: str
    problem_instance_id: str
    step_slot: str | None
    kc_id: str | None
    action: str
    input: str | None = None
    outcome: str = "n/a"
    hint_level: int | None = None

    def __post_init__(self) -> None:
        if self.action not in ACTIONS:
            raise RecordError(f"unknown action {self.action!r}")
        if self.outcome not in OUTCOMES:
            raise RecordError(f"unknown outcome {self.outcome!r}")
        if self.action == "attempt":
            if self.input is None or self.outcome == "n/a":
                raise RecordError("attempt records need input and outcome")
            if self.step_slot is None or self.kc_id is None:
                raise RecordError("attempt records need step_slot and kc_id")
            if self.hint_level is not None:
                raise RecordError("attempt records cannot carry hint_level")
        elif self.action == "hint":
            if self.hint_level not in (1, 2, 3):
                raise RecordError("hint records need hint_level in 1..3")
            if self.step_slot is None or self.kc_id is None:
                raise RecordError("hint records need step_slot and kc_id")
            if self.input is not None or self.outcome != "n/a":
                raise RecordError("hint records cannot carry input or outcome")
        elif self.action == "access":
            if self.input is not None or self.hint_level is not None or self.outcome != "n/a":
                raise RecordError("access records carry no attempt/hint fields")
        elif self.action == "done":
            if self.outcome == "n/a":
                raise RecordError("done records need a correct/incorrect outcome")
            if self.input is not None or self.hint_level is not None:
                raise RecordError("done records cannot carry input or hint_level")

    def to_json(self) -> str:
        return json.dumps(asdict(self), separators=(",", ":"), sort_keys=True)


def record_from_dict(doc: dict) -> TransactionRecord:
    known = set(TransactionRecord.__dataclass_fields__)
    extra = set(doc) - known
    if extra:
        raise RecordError(f"unknown fields {sorted(extra)}")
    required = {
        "timestamp",
        "student_id",
        "session_id",
        "tutor_id",
        "problem_type_id",
        "problem_instance_id",
        "action",
    }
    missing = required - set(doc)
    if missing:
        raise RecordError(f"missing fields {sorted(missing)}")
    kwargs = dict(doc)
    kwargs.setdefault("step_slot", None)
    kwargs.setdefault("kc_id", None)
    kwargs.setdefault("input", None)
    kwargs.setdefault("outcome", "n/a")
    kwargs.setdefault("hint_level", None)
    return TransactionRecord(**kwargs)


def parse_line(line: str, line_number: int = 0) -> TransactionRecord:
    try:
        doc = json.loads(line)
    except json.JSONDecodeError as exc:
        raise RecordError(f"line {line_number}: not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise RecordError(f"line {line_number}: expected an object")
    try:
        return record_from_dict(doc)
    except RecordError as exc:
        raise RecordError(f"line {line_number}: {exc}") from exc


def read_log(stream: IO[str]) -> Iterator[TransactionRecord]:
    for i, line in enumerate(stream, start=1):
        line = line.strip()
        if line:
            yield parse_line(line, i)


def write_log(stream: IO[str], records: Iterable[TransactionRecord]) -> None:
    for record in records:
        stream.write(record.to_json() + "\n")
