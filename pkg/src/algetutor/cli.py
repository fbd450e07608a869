"""Operator command line: problem previews, log replay, cohort simulation,
funnel tables, log validation, and serving the API.

Exit codes: 0 success, 1 operational error, 2 validation failure.
"""

from __future__ import annotations

import json
import sys
from datetime import date
from pathlib import Path

import click

from .analytics import TermWindow, format_term_table, funnel, retention_summary, term_table
from .config import load_config
from .domains import default_catalog, display_value, generate, solve_instance
from .records import RecordError, read_log, write_log
from .tracing import BktParams, replay_log

VALIDATION_EXIT = 2


class ValidationFailure(Exception):
    def __init__(self, problems: list[str]):
        super().__init__(f"{len(problems)} violation(s)")
        self.problems = problems


@click.group()
def cli():
    """Step-based college algebra tutoring: operator tools."""


@cli.command()
@click.option("--type", "type_id", required=True, help="Problem type id.")
@click.option("--seed", required=True, type=int)
@click.option("--count", default=1, show_default=True, type=int)
def gen(type_id: str, seed: int, count: int):
    """Print generated instances with their expert solution traces."""
    catalog = default_catalog()
    pt = catalog.problem_type(type_id)
    for offset in range(count):
        instance = generate(pt, seed + offset)
        trace = solve_instance(pt, instance)
        click.echo(f"instance {instance.instance_id}")
        click.echo(f"  statement: {instance.statement_text}")
        for slot in sorted(instance.initial_facts):
            click.echo(f"  fact {slot} = {display_value(instance.initial_facts[slot])}")
        for entry in trace:
            click.echo(
                f"  fire {entry.rule_id} [{entry.kc_id}] "
                f"-> {entry.slot} = {display_value(entry.value)}"
            )


@cli.command()
@click.option("--log", "log_path", required=True, type=click.Path(exists=True, path_type=Path))
def replay(log_path: Path):
    """Rebuild the mastery store from a log and print per-student reports."""
    with log_path.open("r", encoding="utf-8") as handle:
        records = list(read_log(handle))
    store = replay_log(records)
    students = sorted({r.student_id for r in records})
    for student in students:
        click.echo(f"student {student}")
        for row in store.mastery_report(student):
            if row["observations"] == 0:
                continue
            flag = "mastered" if row["mastered"] else ""
            click.echo(
                f"  {row['kc_id']}: {row['p_mastery']:.4f} "
                f"({row['observations']} obs) {flag}".rstrip()
            )


@cli.command()
@click.option("--students", required=True, type=int)
@click.option("--problems", required=True, type=int)
@click.option("--seed", required=True, type=int)
@click.option(
    "--params",
    "params_file",
    type=click.Path(exists=True, path_type=Path),
    help="JSON file with the generative p_init/p_transit/p_slip/p_guess.",
)
def simulate(students: int, problems: int, seed: int, params_file: Path | None):
    """Emit a JSON Lines log for a synthetic cohort (to stdout)."""
    from .simulate import simulate_cohort

    truth = BktParams()
    if params_file is not None:
        doc = json.loads(params_file.read_text(encoding="utf-8"))
        truth = BktParams(
            p_init=doc.get("p_init", truth.p_init),
            p_transit=doc.get("p_transit", truth.p_transit),
            p_slip=doc.get("p_slip", truth.p_slip),
            p_guess=doc.get("p_guess", truth.p_guess),
        )
    platform = simulate_cohort(students, problems, seed, truth)
    write_log(sys.stdout, platform.log.records())


def _load_windows(path: Path) -> list[TermWindow]:
    doc = json.loads(path.read_text(encoding="utf-8"))
    return [
        TermWindow(
            cycle=entry["cycle"],
            term=entry["term"],
            start=date.fromisoformat(entry["start"]),
            end=date.fromisoformat(entry["end"]),
            roster=entry["roster"],
            classes_deployed=entry.get("classes_deployed"),
        )
        for entry in doc
    ]


@cli.command("funnel")
@click.option("--log", "log_file", default="-", type=click.File("r"), show_default=True)
@click.option("--roster", type=int, default=None, help="Roster size (students with access).")
@click.option("--windows", "windows_file", type=click.Path(exists=True, path_type=Path))
@click.option("--format", "fmt", type=click.Choice(["table", "json"]), default="table")
def funnel_command(log_file, roster, windows_file, fmt):
    """Funnel report over a log, optionally split into term windows."""
    records = list(read_log(log_file))
    if windows_file is not None:
        rows = term_table(records, _load_windows(windows_file))
        if fmt == "json":
            click.echo(json.dumps(rows, indent=2))
        else:
            click.echo(format_term_table(rows))
        return
    if roster is None:
        raise click.UsageError("--roster is required without --windows")
    from datetime import timedelta

    stamps = [r.timestamp[:10] for r in records]
    start = date.fromisoformat(min(stamps)) if stamps else date(1970, 1, 1)
    end = date.fromisoformat(max(stamps)) if stamps else date(1970, 1, 1)
    window = TermWindow(0, "all", start, end + timedelta(days=1), roster)
    report = funnel(records, window)
    payload = report.to_json_dict()
    payload["retention"] = retention_summary(records)
    if fmt == "json":
        click.echo(json.dumps(payload, indent=2))
    else:
        click.echo(f"students with access      {report.students_with_access}")
        click.echo(f"students with interaction {report.students_with_interaction}")
        click.echo(f"% used                    {report.pct_used:.2f}")
        click.echo(f"finished >= 1 problem     {report.finished_ge1}")
        click.echo(f"% of users finished >= 1  {report.pct_finished_ge1:.2f}")
        five = payload["retention"]["finished_ge5"]
        click.echo(f"finished >= 5 problems    {five['count']} ({five['pct_of_finishers']:.2f}% of finishers)")
        click.echo("completions histogram     " + json.dumps(report.histogram))


@cli.command()
@click.option("--log", "log_path", required=True, type=click.Path(exists=True, path_type=Path))
def validate(log_path: Path):
    """Schema and invariant checks over a log file; exit 2 on violations."""
    problems: list[str] = []
    records = []
    with log_path.open("r", encoding="utf-8") as handle:
        for i, line in enumerate(handle, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                from .records import parse_line

                records.append(parse_line(line, i))
            except RecordError as exc:
                problems.append(str(exc))
    catalog = default_catalog()
    known_kcs = catalog.all_kc_ids()
    type_ids = {pt.id for pt in catalog.problem_types()}
    last_per_session: dict[str, str] = {}
    for i, record in enumerate(records, start=1):
        if record.kc_id is not None and record.kc_id not in known_kcs:
            problems.append(f"record {i}: unknown kc {record.kc_id!r}")
        if record.problem_type_id not in type_ids:
            problems.append(f"record {i}: unknown problem type {record.problem_type_id!r}")
        previous = last_per_session.get(record.session_id)
        if previous is not None and record.timestamp < previous:
            problems.append(f"record {i}: timestamp regressed within session")
        last_per_session[record.session_id] = record.timestamp
    # completion consistency: a correct done needs every schema step correct
    correct_slots: dict[str, set[str]] = {}
    for record in records:
        if record.action == "attempt" and record.outcome == "correct" and record.step_slot:
            correct_slots.setdefault(record.problem_instance_id, set()).add(record.step_slot)
    for i, record in enumerate(records, start=1):
        if record.action == "done" and record.outcome == "correct":
            schema = {s.slot for s in catalog.problem_type(record.problem_type_id).steps}
            if not schema <= correct_slots.get(record.problem_instance_id, set()):
                problems.append(
                    f"record {i}: done marked correct without all steps correct"
                )
    if problems:
        raise ValidationFailure(problems)
    click.echo(f"ok: {len(records)} records")


@cli.command()
@click.option("--config", "config_path", type=click.Path(exists=True, path_type=Path))
@click.option("--host", default=None)
@click.option("--port", default=None, type=int)
def serve(config_path: Path | None, host: str | None, port: int | None):
    """Run the HTTP service."""
    import uvicorn

    from .service import create_app

    config = load_config(config_path)
    if host:
        config.host = host
    if port:
        config.port = port
    uvicorn.run(create_app(config), host=config.host, port=config.port)


def main() -> None:
    try:
        cli.main(standalone_mode=False)
    except ValidationFailure as exc:
        for problem in exc.problems:
            click.echo(f"violation: {problem}", err=True)
        sys.exit(VALIDATION_EXIT)
    except click.ClickException as exc:
        exc.show()
        sys.exit(1)
    except click.Abort:
        sys.exit(1)
    except (OSError, KeyError, ValueError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)


if __name__ == "__main__":
    main()
