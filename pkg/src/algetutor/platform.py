"""Application core behind the HTTP API: sessions, problem serving, step
checking, hints, completion, mastery, and admin analytics.

All state mutations for one student are serialized behind a per-student lock;
every mutation appends exactly one transaction record before updating any
derived state, so a replay of the log reconstructs the same state.
"""

from __future__ import annotations

import hashlib
import secrets
import threading
from dataclasses import dataclass, field
from datetime import date, datetime, timedelta, timezone
from typing import Callable

from .analytics import FunnelReport, TermWindow, funnel
from .config import AppConfig
from .domains import (
    Catalog,
    HINT_LEVELS,
    ProblemType,
    StepAlreadyCorrectError,
    UnknownProblemTypeError,
    UnknownTutorError,
    default_catalog,
    display_value,
    display_value_latex,
    generate,
    hint as domain_hint,
    list_catalog,
    solve_instance,
)
from .engine import Trace, check_input
from .expr import Const, Expr, ParseError, canonicalize, parse
from .records import TransactionRecord
from .selection import SelectionRequest, derive_seed, select
from .storage import DocumentStore, FileLogStore, LogStore
from .tracing import MasteryStore

Clock = Callable[[], datetime]


def utc_now() -> datetime:
    return datetime.now(timezone.utc)


class ApiError(Exception):
    def __init__(self, status: int, code: str, message: str, detail: dict | None = None):
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message
        self.detail = detail or {}


def _bad_token() -> ApiError:
    return ApiError(401, "bad_token", "missing, unknown, or expired session token")


def _no_consent() -> ApiError:
    return ApiError(403, "no_consent", "consent was not granted for this session")


def _not_found(what: str) -> ApiError:
    return ApiError(404, "not_found", f"unknown {what}")


@dataclass
class Session:
    token: str
    student_id: str
    consent: bool
    created_at: datetime
    expires_at: datetime


@dataclass
class ServedProblem:
    problem_id: str
    student_id: str
    problem_type_id: str
    seed: int
    created_at: str
    trace: Trace = field(repr=False)
    locks: set[str] = field(default_factory=set)
    hint_tiers: dict[tuple[str, str], int] = field(default_factory=dict)
    completed: bool = False


class TutorPlatform:
    def __init__(
        self,
        config: AppConfig | None = None,
        catalog: Catalog | None = None,
        clock: Clock = utc_now,
        persistent: bool = True,
    ):
        self.config = config or AppConfig()
        self.catalog = catalog or default_catalog()
        self.clock = clock
        storage_dir = self.config.storage_dir
        if persistent:
            self.log: LogStore = FileLogStore(storage_dir / "log.jsonl")
            self._session_docs = DocumentStore(storage_dir / "sessions.json")
            self._instance_docs = DocumentStore(storage_dir / "instances.json")
        else:
            self.log = LogStore()
            self._session_docs = DocumentStore(None)
            self._instance_docs = DocumentStore(None)
        self.sessions: dict[str, Session] = {}
        self.problems: dict[str, ServedProblem] = {}
        self._student_locks: dict[str, threading.Lock] = {}
        self._meta_lock = threading.Lock()
        self.store = MasteryStore(
            self.catalog,
            self.config.bkt_defaults,
            self.config.bkt_per_kc,
            self.config.mastery_threshold,
        )
        self._restore()

    # -- restore from durable state ------------------------------------------

    def _restore(self) -> None:
        for token, doc in self._session_docs.load().items():
            self.sessions[token] = Session(
                token=token,
                student_id=doc["student_id"],
                consent=doc["consent"],
                created_at=datetime.fromisoformat(doc["created_at"]),
                expires_at=datetime.fromisoformat(doc["expires_at"]),
            )
        for problem_id, doc in self._instance_docs.load().items():
            pt = self.catalog.problem_type(doc["problem_type_id"])
            instance = generate(pt, doc["seed"])
            self.problems[problem_id] = ServedProblem(
                problem_id=problem_id,
                student_id=doc["student_id"],
                problem_type_id=pt.id,
                seed=doc["seed"],
                created_at=doc["created_at"],
                trace=solve_instance(pt, instance),
            )
        # the log is the source of truth for locks, tiers, completion, mastery
        for record in self.log.records():
            self.store.observe(record)
            served = self.problems.get(record.problem_instance_id)
            if served is None:
                continue
            if record.action == "attempt" and record.outcome == "correct" and record.step_slot:
                served.locks.add(record.step_slot)
            elif record.action == "hint" and record.step_slot:
                key = (record.session_id, record.step_slot)
                served.hint_tiers[key] = max(
                    served.hint_tiers.get(key, 0), record.hint_level or 0
                )
            elif record.action == "done" and record.outcome == "correct":
                served.completed = True

    # -- helpers ---------------------------------------------------------------

    def _student_lock(self, student_id: str) -> threading.Lock:
        with self._meta_lock:
            if student_id not in self._student_locks:
                self._student_locks[student_id] = threading.Lock()
            return self._student_locks[student_id]

    def _authorize(self, token: str | None) -> Session:
        if not token or token not in self.sessions:
            raise _bad_token()
        session = self.sessions[token]
        if self.clock() >= session.expires_at:
            raise _bad_token()
        if not session.consent:
            raise _no_consent()
        return session

    def _timestamp(self) -> str:
        return self.clock().isoformat()

    def _append(self, record: TransactionRecord) -> None:
        self.log.append(record)
        self.store.observe(record)

    def _served(self, session: Session, problem_id: str) -> ServedProblem:
        served = self.problems.get(problem_id)
        if served is None or served.student_id != session.student_id:
            raise _not_found("problem instance")
        return served

    def _problem_type(self, served: ServedProblem) -> ProblemType:
        return self.catalog.problem_type(served.problem_type_id)

    # -- session & catalog -----------------------------------------------------

    def create_session(self, student_id: str, consent: bool) -> dict:
        if not student_id or len(student_id) > 128:
            raise ApiError(400, "bad_request", "student_id must be 1..128 characters")
        token = secrets.token_urlsafe(16)  # 128 bits, URL-safe
        now = self.clock()
        session = Session(
            token=token,
            student_id=student_id,
            consent=consent,
            created_at=now,
            expires_at=now + timedelta(hours=self.config.session_ttl_hours),
        )
        self.sessions[token] = session
        self._session_docs.update(
            token,
            {
                "student_id": student_id,
                "consent": consent,
                "created_at": session.created_at.isoformat(),
                "expires_at": session.expires_at.isoformat(),
            },
        )
        return {"token": token}

    def get_catalog(self, token: str | None) -> list[dict]:
        self._authorize(token)
        return list_catalog(self.catalog)

    # -- problems ---------------------------------------------------------------

    def request_problem(
        self, token: str | None, tutor_id: str, mode: str, problem_type_id: str | None = None
    ) -> dict:
        session = self._authorize(token)
        with self._student_lock(session.student_id):
            transaction_count = self.log.count_for_student(session.student_id)
            seed = derive_seed(session.student_id, transaction_count)
            try:
                request = SelectionRequest(
                    student_id=session.student_id,
                    tutor_id=tutor_id,
                    mode=mode,
                    problem_type_id=problem_type_id,
                    rng_seed=seed,
                )
                selection = select(request, self.store, self.catalog)
            except (UnknownTutorError, UnknownProblemTypeError):
                raise _not_found("tutor or problem type") from None
            except ValueError as exc:
                raise ApiError(400, "bad_request", str(exc)) from None
            pt = self.catalog.problem_type(selection.problem_type_id)
            instance = generate(pt, seed)
            trace = solve_instance(pt, instance)
            problem_id = "i" + hashlib.sha1(
                f"{session.student_id}:{pt.id}:{seed}".encode()
            ).hexdigest()[:20]
            created_at = self._timestamp()
            served = ServedProblem(
                problem_id=problem_id,
                student_id=session.student_id,
                problem_type_id=pt.id,
                seed=seed,
                created_at=created_at,
                trace=trace,
            )
            self.problems[problem_id] = served
            self._instance_docs.update(
                problem_id,
                {
                    "student_id": session.student_id,
                    "problem_type_id": pt.id,
                    "seed": seed,
                    "created_at": created_at,
                },
            )
            self._append(
                TransactionRecord(
                    timestamp=created_at,
                    student_id=session.student_id,
                    session_id=session.token,
                    tutor_id=pt.tutor_id,
                    problem_type_id=pt.id,
                    problem_instance_id=problem_id,
                    step_slot=None,
                    kc_id=None,
                    action="access",
                )
            )
            return self._problem_payload(served, session, instance, selection.rationale)

    def _problem_payload(self, served, session, instance, rationale) -> dict:
        pt = self._problem_type(served)
        return {
            "problem_id": served.problem_id,
            "tutor_id": pt.tutor_id,
            "problem_type_id": pt.id,
            "display_name": pt.display_name,
            "statement": instance.statement_text,
            "statement_latex": instance.statement_latex,
            "rationale": rationale,
            "completed": served.completed,
            "steps": [
                {
                    "slot": s.slot,
                    "prompt": s.prompt,
                    "mode": s.mode,
                    "kc_id": s.kc_id,
                    "index": s.index,
                    "locked": s.slot in served.locks,
                    "hint_tier": served.hint_tiers.get((session.token, s.slot), 0),
                }
                for s in pt.steps
            ],
        }

    # -- attempts ----------------------------------------------------------------

    def _parse_input(self, mode: str, text: str):
        if not isinstance(text, str) or not text.strip():
            raise ApiError(400, "parse_error", "empty input", {"position": 0})
        if mode == "integer-pair":
            body = text.strip()
            if body.startswith("(") and body.endswith(")"):
                body = body[1:-1]
            parts = body.split(",")
            if len(parts) != 2:
                raise ApiError(
                    400, "parse_error", "enter two integers separated by a comma", {"position": 0}
                )
            values = []
            for part in parts:
                expr = self._parse_expression(part)
                folded = canonicalize(expr)
                if not isinstance(folded, Const):
                    return None  # parses but is not an integer pair: incorrect
                values.append(folded.value)
            return (values[0], values[1])
        return self._parse_expression(text)

    def _parse_expression(self, text: str) -> Expr:
        try:
            return parse(text)
        except ParseError as exc:
            raise ApiError(
                400,
                "parse_error",
                exc.message,
                {"position": exc.position, "kind": exc.kind.value},
            ) from None

    def submit_attempt(self, token: str | None, problem_id: str, slot: str, input_text: str) -> dict:
        session = self._authorize(token)
        with self._student_lock(session.student_id):
            served = self._served(session, problem_id)
            pt = self._problem_type(served)
            try:
                step = pt.step(slot)
            except KeyError:
                raise _not_found("step slot") from None
            if slot in served.locks:
                raise ApiError(409, "step_locked", "step already answered correctly")
            student_value = self._parse_input(step.mode, input_text)
            if student_value is None:
                result_correct, matched_kc = False, None
            else:
                result = check_input(served.trace, slot, student_value)
                result_correct, matched_kc = result.correct, result.matched_kc
            kc_id = matched_kc if result_correct and matched_kc else step.kc_id
            self._append(
                TransactionRecord(
                    timestamp=self._timestamp(),
                    student_id=session.student_id,
                    session_id=session.token,
                    tutor_id=pt.tutor_id,
                    problem_type_id=pt.id,
                    problem_instance_id=problem_id,
                    step_slot=slot,
                    kc_id=kc_id,
                    action="attempt",
                    input=input_text,
                    outcome="correct" if result_correct else "incorrect",
                )
            )
            if result_correct:
                served.locks.add(slot)
            state = self.store.state(session.student_id, kc_id)
            return {
                "correct": result_correct,
                "locked": slot in served.locks,
                "kc_id": kc_id,
                "p_mastery_after": state.p_mastery,
            }

    # -- hints ---------------------------------------------------------------------

    def request_hint(self, token: str | None, problem_id: str, slot: str) -> dict:
        session = self._authorize(token)
        with self._student_lock(session.student_id):
            served = self._served(session, problem_id)
            pt = self._problem_type(served)
            try:
                pt.step(slot)
            except KeyError:
                raise _not_found("step slot") from None
            key = (session.token, slot)
            tier = min(served.hint_tiers.get(key, 0) + 1, max(HINT_LEVELS))
            try:
                result = domain_hint(pt, served.trace, slot, tier, frozenset(served.locks))
            except StepAlreadyCorrectError:
                raise ApiError(409, "step_locked", "step already answered correctly") from None
            served.hint_tiers[key] = tier
            step = pt.step(slot)
            self._append(
                TransactionRecord(
                    timestamp=self._timestamp(),
                    student_id=session.student_id,
                    session_id=session.token,
                    tutor_id=pt.tutor_id,
                    problem_type_id=pt.id,
                    problem_instance_id=problem_id,
                    step_slot=slot,
                    kc_id=step.kc_id,
                    action="hint",
                    hint_level=tier,
                )
            )
            bottom = result.bottom_out_value
            return {
                "tier": tier,
                "text": result.text,
                "highlight_slot": result.highlight_slot,
                "bottom_out_value": None if bottom is None else display_value(bottom),
                "bottom_out_latex": None if bottom is None else display_value_latex(bottom),
            }

    # -- completion -------------------------------------------------------------------

    def submit_done(self, token: str | None, problem_id: str) -> dict:
        session = self._authorize(token)
        with self._student_lock(session.student_id):
            served = self._served(session, problem_id)
            if served.completed:
                return {"complete": True}
            pt = self._problem_type(served)
            complete = all(s.slot in served.locks for s in pt.steps)
            self._append(
                TransactionRecord(
                    timestamp=self._timestamp(),
                    student_id=session.student_id,
                    session_id=session.token,
                    tutor_id=pt.tutor_id,
                    problem_type_id=pt.id,
                    problem_instance_id=problem_id,
                    step_slot=None,
                    kc_id=None,
                    action="done",
                    outcome="correct" if complete else "incorrect",
                )
            )
            if complete:
                served.completed = True
            return {"complete": complete}

    # -- profile & admin -----------------------------------------------------------------

    def mastery_profile(self, token: str | None) -> dict:
        session = self._authorize(token)
        return {
            "student_id": session.student_id,
            "mastery_threshold": self.store.mastery_threshold,
            "kcs": self.store.mastery_report(session.student_id),
        }

    def admin_funnel(
        self, admin_token: str | None, start: date, end: date, roster: int
    ) -> FunnelReport:
        if not admin_token or admin_token != self.config.admin_token:
            raise ApiError(401, "bad_admin_token", "admin authentication failed")
        window = TermWindow(cycle=0, term="adhoc", start=start, end=end, roster=roster)
        return funnel(self.log.records(), window, self.catalog)
