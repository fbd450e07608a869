"""Synthetic student cohorts driven through the real platform code paths.

Each simulated student carries a latent per-skill mastery state that evolves
by the knowledge-tracing generative model: initially known with probability
p_init, correct emissions with 1 - p_slip when known and p_guess when not,
and an unknown -> known transition with probability p_transit after each
scored opportunity. The emitted log therefore has an analytic ground truth.
"""

from __future__ import annotations

import random
from datetime import datetime, timedelta, timezone

from .config import AppConfig
from .domains import default_catalog
from .platform import TutorPlatform
from .tracing import BktParams

SIM_EPOCH = datetime(2022, 1, 3, 9, 0, 0, tzinfo=timezone.utc)


class VirtualClock:
    """Deterministic clock: one second per tick from a fixed epoch."""

    def __init__(self, start: datetime = SIM_EPOCH):
        self.now = start

    def __call__(self) -> datetime:
        self.now += timedelta(seconds=1)
        return self.now


class SimulatedStudent:
    def __init__(self, student_id: str, rng: random.Random, truth: BktParams, kc_ids):
        self.student_id = student_id
        self.rng = rng
        self.truth = truth
        # sorted: set iteration order varies per process and would shift draws
        self.known = {kc: rng.random() < truth.p_init for kc in sorted(kc_ids)}

    def emit_correct(self, kc_id: str) -> bool:
        if self.known[kc_id]:
            return self.rng.random() >= self.truth.p_slip
        return self.rng.random() < self.truth.p_guess

    def learn_opportunity(self, kc_id: str) -> None:
        if not self.known[kc_id]:
            self.known[kc_id] = self.rng.random() < self.truth.p_transit


def simulate_cohort(
    students: int,
    problems: int,
    seed: int,
    truth: BktParams | None = None,
    config: AppConfig | None = None,
) -> TutorPlatform:
    """Run the cohort against an in-memory platform; returns it with the log."""
    truth = truth or BktParams()
    catalog = default_catalog()
    platform = TutorPlatform(
        config or AppConfig(), catalog, clock=VirtualClock(), persistent=False
    )
    master = random.Random(seed)
    tutor_ids = [t.id for t in catalog.tutors]
    for index in range(students):
        student_rng = random.Random(master.getrandbits(64))
        student_id = f"s{index:04d}"
        student = SimulatedStudent(student_id, student_rng, truth, catalog.all_kc_ids())
        consent = student_rng.random() >= 0.05
        token = platform.create_session(student_id, consent)["token"]
        if not consent:
            continue
        roll = student_rng.random()
        if roll < 0.15:
            continue  # has access, never opens a tutor
        if roll < 0.35:
            tutor = student_rng.choice(tutor_ids)
            platform.request_problem(token, tutor, "adaptive")
            continue  # browsed one problem, answered nothing
        target = student_rng.randint(1, problems)
        for _ in range(target):
            tutor = student_rng.choice(tutor_ids)
            served = platform.request_problem(token, tutor, "adaptive")
            _work_problem(platform, token, served, student)
    return platform


def _work_problem(platform: TutorPlatform, token: str, served: dict, student: SimulatedStudent) -> None:
    problem_id = served["problem_id"]
    trace = platform.problems[problem_id].trace
    for step in served["steps"]:
        slot, kc_id = step["slot"], step["kc_id"]
        if student.rng.random() < 0.10:
            tiers = student.rng.choice((1, 2, 3))
            for _ in range(tiers):
                platform.request_hint(token, problem_id, slot)
        expected = next(e.value for e in trace if e.slot == slot)
        answer = _display(expected)
        if student.emit_correct(kc_id):
            platform.submit_attempt(token, problem_id, slot, answer)
        else:
            platform.submit_attempt(token, problem_id, slot, _wrong_answer(expected))
            platform.submit_attempt(token, problem_id, slot, answer)
        student.learn_opportunity(kc_id)
    platform.submit_done(token, problem_id)


def _display(value) -> str:
    from .domains import display_value

    return display_value(value)


def _wrong_answer(expected) -> str:
    if isinstance(expected, tuple):
        return f"{expected[0] + 1}, {expected[1]}"
    return f"({_display(expected)})+1"
