"""Adoption/retention funnels and per-term usage tables from transaction logs.

Percentages are 100 * ratio rounded half-up to two decimals. A problem counts
as finished only when every step of its type's schema has a correct attempt
and a done record exists for the instance.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import date, datetime
from decimal import ROUND_HALF_UP, Decimal
from typing import Iterable, Sequence

from .domains import Catalog, default_catalog
from .records import TransactionRecord

HISTOGRAM_BUCKETS = ("0", "1", "2", "3", "4", "5+")


class WindowError(ValueError):
    pass


@dataclass(frozen=True)
class TermWindow:
    cycle: int
    term: str
    start: date
    end: date
    roster: int
    classes_deployed: int | None = None

    def __post_init__(self) -> None:
        if self.start >= self.end:
            raise WindowError(f"cycle {self.cycle}: start must precede end")
        if self.roster < 0:
            raise WindowError(f"cycle {self.cycle}: roster must be >= 0")

    def contains(self, timestamp: str) -> bool:
        day = datetime.fromisoformat(timestamp).date()
        return self.start <= day <= self.end


@dataclass(frozen=True)
class FunnelReport:
    students_with_access: int
    students_with_interaction: int
    pct_used: float
    finished_ge1: int
    pct_finished_ge1: float
    histogram: dict[str, int] = field(compare=False)

    def to_json_dict(self) -> dict:
        return {
            "students_with_access": self.students_with_access,
            "students_with_interaction": self.students_with_interaction,
            "pct_used": self.pct_used,
            "finished_ge1": self.finished_ge1,
            "pct_finished_ge1": self.pct_finished_ge1,
            "histogram": dict(self.histogram),
        }


def percentage(numerator: int, denominator: int) -> float:
    """100 * numerator / denominator, rounded half-up to 2 decimals."""
    if denominator == 0:
        return 0.0
    ratio = Decimal(numerator * 100) / Decimal(denominator)
    return float(ratio.quantize(Decimal("0.01"), rounding=ROUND_HALF_UP))


def _completion_counts(
    records: Sequence[TransactionRecord], catalog: Catalog
) -> dict[str, int]:
    """Finished problems per student under the completion rule."""
    correct_slots: dict[str, set[str]] = {}
    done_instances: set[str] = set()
    instance_meta: dict[str, tuple[str, str]] = {}
    for r in records:
        instance_meta.setdefault(r.problem_instance_id, (r.student_id, r.problem_type_id))
        if r.action == "attempt" and r.outcome == "correct" and r.step_slot:
            correct_slots.setdefault(r.problem_instance_id, set()).add(r.step_slot)
        elif r.action == "done":
            done_instances.add(r.problem_instance_id)
    finished: dict[str, int] = {}
    for instance_id in done_instances:
        student_id, type_id = instance_meta[instance_id]
        try:
            schema_slots = {s.slot for s in catalog.problem_type(type_id).steps}
        except KeyError:
            continue
        if schema_slots <= correct_slots.get(instance_id, set()):
            finished[student_id] = finished.get(student_id, 0) + 1
    return finished


def report_from_counts(
    access: int, interaction: int, finished_per_student: dict[str, int] | None = None,
    finished_ge1: int | None = None,
) -> FunnelReport:
    """Build the report from raw counts (the percentage rules live here)."""
    counts = finished_per_student or {}
    if finished_ge1 is None:
        finished_ge1 = sum(1 for n in counts.values() if n >= 1)
    histogram = {bucket: 0 for bucket in HISTOGRAM_BUCKETS}
    if interaction:
        zero = interaction - len([n for n in counts.values() if n >= 1])
        histogram["0"] = zero
        for n in counts.values():
            if n >= 5:
                histogram["5+"] += 1
            elif n >= 1:
                histogram[str(n)] += 1
    return FunnelReport(
        students_with_access=access,
        students_with_interaction=interaction,
        pct_used=percentage(interaction, access),
        finished_ge1=finished_ge1,
        pct_finished_ge1=percentage(finished_ge1, interaction),
        histogram=histogram,
    )


def funnel(
    records: Sequence[TransactionRecord],
    window: TermWindow,
    catalog: Catalog | None = None,
) -> FunnelReport:
    """Funnel for one term window; roster size comes from the window."""
    catalog = catalog or default_catalog()
    in_window = [r for r in records if window.contains(r.timestamp)]
    students = {r.student_id for r in in_window}
    finished = _completion_counts(in_window, catalog)
    return report_from_counts(window.roster, len(students), finished)


def retention_summary(
    records: Sequence[TransactionRecord], catalog: Catalog | None = None
) -> dict:
    """Problem-completion retention: >=1 of users, >=5 of finishers."""
    catalog = catalog or default_catalog()
    users = {r.student_id for r in records}
    finished = _completion_counts(list(records), catalog)
    finishers = [s for s, n in finished.items() if n >= 1]
    five_plus = [s for s, n in finished.items() if n >= 5]
    return {
        "users": len(users),
        "finished_ge1": {
            "count": len(finishers),
            "pct_of_users": percentage(len(finishers), len(users)),
        },
        "finished_ge5": {
            "count": len(five_plus),
            "pct_of_finishers": percentage(len(five_plus), len(finishers)),
        },
    }


def term_table(
    records: Sequence[TransactionRecord],
    windows: Sequence[TermWindow],
    catalog: Catalog | None = None,
) -> list[dict]:
    """One funnel row per cycle, in cycle order. Windows must not overlap."""
    ordered = sorted(windows, key=lambda w: w.start)
    for earlier, later in zip(ordered, ordered[1:]):
        if later.start <= earlier.end:
            raise WindowError(
                f"cycles {earlier.cycle} and {later.cycle} overlap"
            )
    rows = []
    for window in sorted(windows, key=lambda w: w.cycle):
        report = funnel(records, window, catalog)
        rows.append(
            {
                "cycle": window.cycle,
                "term": window.term,
                "start": window.start.isoformat(),
                "end": window.end.isoformat(),
                "classes_deployed": window.classes_deployed,
                **report.to_json_dict(),
            }
        )
    return rows


def format_term_table(rows: Iterable[dict]) -> str:
    """Aligned plain-text rendering of term_table output."""
    headers = [
        "cycle",
        "term",
        "classes",
        "access",
        "interaction",
        "% used",
        ">=1 done",
        "% of users",
    ]
    body = [
        [
            str(row["cycle"]),
            row["term"],
            "" if row["classes_deployed"] is None else str(row["classes_deployed"]),
            str(row["students_with_access"]),
            str(row["students_with_interaction"]),
            f"{row['pct_used']:.2f}",
            str(row["finished_ge1"]),
            f"{row['pct_finished_ge1']:.2f}",
        ]
        for row in rows
    ]
    widths = [max(len(h), *(len(r[i]) for r in body)) if body else len(h) for i, h in enumerate(headers)]
    lines = ["  ".join(h.ljust(w) for h, w in zip(headers, widths))]
    lines.append("  ".join("-" * w for w in widths))
    for r in body:
        lines.append("  ".join(cell.ljust(w) for cell, w in zip(r, widths)))
    return "\n".join(lines)
