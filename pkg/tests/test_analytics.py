from datetime import date

import pytest

from algetutor.analytics import (
    FunnelReport,
    TermWindow,
    WindowError,
    format_term_table,
    funnel,
    percentage,
    report_from_counts,
    retention_summary,
    term_table,
)
from algetutor.records import TransactionRecord

# Reference deployment counts used as fixtures: (access, interaction,
# finished>=1) per cycle, with the expected two-decimal percentages.
CYCLES = [
    (1, 76, 47, 8, 61.84, 17.02),
    (2, 265, 71, 16, 26.79, 22.54),
    (3, 2054, 229, 30, 11.15, 13.10),
    (4, 1364, 188, 25, 13.78, 13.30),
]


@pytest.mark.parametrize("cycle,access,interaction,finished,pct_used,pct_done", CYCLES)
def test_cycle_percentages(cycle, access, interaction, finished, pct_used, pct_done):
    report = report_from_counts(access, interaction, finished_ge1=finished)
    assert report.pct_used == pct_used
    assert report.pct_finished_ge1 == pct_done


def test_overall_rates():
    assert percentage(520, 3510) == 14.81
    assert percentage(158, 520) == 30.38
    assert percentage(81, 158) == 51.27


def test_percentage_zero_denominator():
    assert percentage(5, 0) == 0.0


def rec(student, action, instance="p1", slot=None, kc=None, outcome="n/a",
        input=None, hint_level=None, day="2022-02-01"):
    return TransactionRecord(
        timestamp=f"{day}T12:00:00+00:00",
        student_id=student,
        session_id=f"sess-{student}",
        tutor_id="exponents",
        problem_type_id="exponent-product",
        problem_instance_id=instance,
        step_slot=slot,
        kc_id=kc,
        action=action,
        input=input,
        outcome=outcome,
        hint_level=hint_level,
    )


def finished_problem(student, instance, day="2022-02-01"):
    """access + correct attempts on both schema steps + done."""
    return [
        rec(student, "access", instance, day=day),
        rec(student, "attempt", instance, "exponent_sum",
            "exponent-product-add-exponents", "correct", "7", day=day),
        rec(student, "attempt", instance, "result",
            "exponent-product-write-result", "correct", "x^7", day=day),
        rec(student, "done", instance, outcome="correct", day=day),
    ]


WINDOW = TermWindow(1, "Spring", date(2022, 1, 3), date(2022, 5, 6), roster=10)


def test_funnel_counts_interaction_and_completion():
    records = []
    records += finished_problem("alice", "p1")
    records += finished_problem("alice", "p2")
    records.append(rec("bob", "access", "p3"))  # interacted, finished nothing
    # carol answered one step but never pressed done
    records.append(rec("carol", "attempt", "p4", "exponent_sum",
                       "exponent-product-add-exponents", "correct", "7"))
    report = funnel(records, WINDOW)
    assert report.students_with_access == 10
    assert report.students_with_interaction == 3
    assert report.finished_ge1 == 1
    assert report.histogram == {"0": 2, "1": 0, "2": 1, "3": 0, "4": 0, "5+": 0}
    assert report.pct_used == percentage(3, 10)


def test_done_without_all_steps_not_finished():
    records = [
        rec("dave", "attempt", "p9", "exponent_sum",
            "exponent-product-add-exponents", "correct", "7"),
        rec("dave", "done", "p9", outcome="incorrect"),
    ]
    report = funnel(records, WINDOW)
    assert report.finished_ge1 == 0


def test_empty_window_zeroed():
    report = funnel([], WINDOW)
    assert report == report_from_counts(10, 0)
    assert report.pct_used == 0.0 and report.pct_finished_ge1 == 0.0


def test_histogram_sums_to_interaction():
    records = []
    for i, count in enumerate([0, 1, 2, 5, 7]):
        student = f"s{i}"
        records.append(rec(student, "access", f"acc-{student}"))
        for k in range(count):
            records += finished_problem(student, f"{student}-p{k}")
    report = funnel(records, WINDOW)
    assert sum(report.histogram.values()) == report.students_with_interaction
    assert report.histogram["5+"] == 2


def test_retention_summary_denominators():
    records = []
    records.append(rec("idle", "access", "idle-p"))
    for k in range(5):
        records += finished_problem("power-user", f"pu-{k}")
    records += finished_problem("casual", "c-1")
    summary = retention_summary(records)
    assert summary["users"] == 3
    assert summary["finished_ge1"]["count"] == 2
    assert summary["finished_ge1"]["pct_of_users"] == percentage(2, 3)
    assert summary["finished_ge5"]["count"] == 1
    assert summary["finished_ge5"]["pct_of_finishers"] == percentage(1, 2)


def test_retention_empty_log():
    summary = retention_summary([])
    assert summary["finished_ge1"] == {"count": 0, "pct_of_users": 0.0}
    assert summary["finished_ge5"] == {"count": 0, "pct_of_finishers": 0.0}


def test_term_table_rows_and_monotonicity():
    windows = [
        TermWindow(1, "Spring", date(2022, 1, 3), date(2022, 5, 6), 10, classes_deployed=4),
        TermWindow(2, "Summer", date(2022, 5, 9), date(2022, 8, 5), 20, classes_deployed=31),
    ]
    records = finished_problem("alice", "p1") + finished_problem("zoe", "p2", day="2022-06-01")
    rows = term_table(records, windows)
    assert [row["cycle"] for row in rows] == [1, 2]
    assert rows[0]["classes_deployed"] == 4
    for row in rows:
        assert row["students_with_access"] >= row["students_with_interaction"]
        assert row["students_with_interaction"] >= row["finished_ge1"]
    text = format_term_table(rows)
    assert "Spring" in text and "Summer" in text


def test_overlapping_windows_rejected():
    windows = [
        TermWindow(1, "A", date(2022, 1, 1), date(2022, 3, 1), 5),
        TermWindow(2, "B", date(2022, 2, 1), date(2022, 4, 1), 5),
    ]
    with pytest.raises(WindowError):
        term_table([], windows)


def test_window_validation():
    with pytest.raises(WindowError):
        TermWindow(1, "bad", date(2022, 5, 1), date(2022, 1, 1), 5)
    with pytest.raises(WindowError):
        TermWindow(1, "bad", date(2022, 1, 1), date(2022, 5, 1), -1)


def test_report_is_replay_stable():
    records = finished_problem("alice", "p1")
    assert funnel(records, WINDOW) == funnel(list(records), WINDOW)
