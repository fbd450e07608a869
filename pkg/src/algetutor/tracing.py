"""Bayesian Knowledge Tracing over the transaction stream.

Two-state hidden Markov model per (student, knowledge component): a posterior
update from each observed first attempt, then a learning transition. Default
parameters are config-overridable per component.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, replace
from typing import Iterable

from .domains import Catalog, default_catalog
from .records import TransactionRecord

logger = logging.getLogger(__name__)

DEFAULT_PARAMS: "BktParams"
MASTERY_THRESHOLD = 0.95


@dataclass(frozen=True)
class BktParams:
    p_init: float = 0.3
    p_transit: float = 0.2
    p_slip: float = 0.1
    p_guess: float = 0.2

    def __post_init__(self) -> None:
        for name in ("p_init", "p_transit", "p_slip", "p_guess"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must be in [0, 1], got {value}")
        if self.p_slip + self.p_guess >= 1.0:
            raise ValueError("p_slip + p_guess must be below 1")


DEFAULT_PARAMS = BktParams()


@dataclass(frozen=True)
class KcState:
    student_id: str
    kc_id: str
    p_mastery: float
    observations: int = 0
    last_updated: str | None = None
    # 1 - p_mastery carried separately: near saturation a lone float cannot
    # represent the tiny not-yet-mastered mass that later incorrect
    # observations re-amplify
    complement: float | None = None

    def not_mastered(self) -> float:
        return 1.0 - self.p_mastery if self.complement is None else self.complement


def bkt_update(state: KcState, params: BktParams, correct: bool, timestamp: str | None = None) -> KcState:
    """Posterior on the latent mastery state, then the learning transition.

    Evolved on the complement q = 1 - p (algebraically identical, numerically
    stable): the posterior odds update then q_new = q' * (1 - T).
    """
    q = state.not_mastered()
    p = 1.0 - q
    slip, guess, transit = params.p_slip, params.p_guess, params.p_transit
    if correct:
        denominator = p * (1 - slip) + q * guess
        q_numerator = q * guess
    else:
        denominator = p * slip + q * (1 - guess)
        q_numerator = q * (1 - guess)
    if denominator == 0:
        logger.warning(
            "degenerate BKT denominator for %s/%s; observation ignored",
            state.student_id,
            state.kc_id,
        )
        return state
    q_posterior = q_numerator / denominator
    q_new = q_posterior * (1 - transit)
    return replace(
        state,
        p_mastery=1.0 - q_new,
        complement=q_new,
        observations=state.observations + 1,
        last_updated=timestamp or state.last_updated,
    )


def predict_correct(state: KcState, params: BktParams) -> float:
    """Emission probability of a correct answer given current mastery."""
    p = state.p_mastery
    return p * (1 - params.p_slip) + (1 - p) * params.p_guess


class UnknownKcError(KeyError):
    def __init__(self, kc_id: str):
        super().__init__(kc_id)
        self.kc_id = kc_id


class MasteryStore:
    """Per-student, per-component mastery state, built from the log.

    Replaying the same records in the same order always reproduces the same
    store. Scoring policy: the first attempt per (problem instance, step)
    counts; a bottom-out (level 3) hint before any attempt counts as one
    incorrect observation for that step's component.
    """

    def __init__(
        self,
        catalog: Catalog | None = None,
        defaults: BktParams = DEFAULT_PARAMS,
        per_kc: dict[str, BktParams] | None = None,
        mastery_threshold: float = MASTERY_THRESHOLD,
    ):
        self.catalog = catalog or default_catalog()
        self.defaults = defaults
        self.per_kc = dict(per_kc or {})
        self.mastery_threshold = mastery_threshold
        self._known_kcs = self.catalog.all_kc_ids()
        self._states: dict[tuple[str, str], KcState] = {}
        self._scored_steps: set[tuple[str, str, str]] = set()
        self._completed: dict[tuple[str, str], int] = {}

    def params_for(self, kc_id: str) -> BktParams:
        return self.per_kc.get(kc_id, self.defaults)

    def state(self, student_id: str, kc_id: str) -> KcState:
        if kc_id not in self._known_kcs:
            raise UnknownKcError(kc_id)
        key = (student_id, kc_id)
        if key not in self._states:
            return KcState(student_id, kc_id, self.params_for(kc_id).p_init)
        return self._states[key]

    def observe(self, record: TransactionRecord) -> KcState | None:
        """Fold one transaction into the store; returns the updated state."""
        if record.action in ("access", "done"):
            if record.action == "done" and record.outcome == "correct":
                key = (record.student_id, record.problem_type_id)
                self._completed[key] = self._completed.get(key, 0) + 1
            return None
        if record.kc_id is None or record.step_slot is None:
            return None
        if record.kc_id not in self._known_kcs:
            raise UnknownKcError(record.kc_id)
        step_key = (record.student_id, record.problem_instance_id, record.step_slot)
        if record.action == "attempt":
            observation = record.outcome == "correct"
        elif record.action == "hint" and record.hint_level == 3:
            observation = False  # bottom-out before an attempt scores as incorrect
        else:
            return None
        if step_key in self._scored_steps:
            return None
        self._scored_steps.add(step_key)
        state = self.state(record.student_id, record.kc_id)
        updated = bkt_update(state, self.params_for(record.kc_id), observation, record.timestamp)
        self._states[(record.student_id, record.kc_id)] = updated
        return updated

    def replay(self, records: Iterable[TransactionRecord]) -> None:
        for record in records:
            self.observe(record)

    def completed_count(self, student_id: str, problem_type_id: str) -> int:
        return self._completed.get((student_id, problem_type_id), 0)

    def mastery_report(self, student_id: str) -> list[dict]:
        """Every catalog component, untouched ones at their prior."""
        report = []
        for kc_id in sorted(self._known_kcs):
            state = self.state(student_id, kc_id)
            report.append(
                {
                    "kc_id": kc_id,
                    "p_mastery": state.p_mastery,
                    "mastered": state.p_mastery >= self.mastery_threshold,
                    "observations": state.observations,
                    "problem_types": sorted(self.catalog.types_touching(kc_id)),
                }
            )
        return report

    def to_json_dict(self) -> dict:
        """Deterministic serialization, used to compare replayed stores."""
        return {
            f"{student}/{kc}": {
                "p_mastery": repr(state.p_mastery),
                "observations": state.observations,
                "last_updated": state.last_updated,
            }
            for (student, kc), state in sorted(self._states.items())
        }


def replay_log(
    records: Iterable[TransactionRecord],
    catalog: Catalog | None = None,
    defaults: BktParams = DEFAULT_PARAMS,
    per_kc: dict[str, BktParams] | None = None,
    mastery_threshold: float = MASTERY_THRESHOLD,
) -> MasteryStore:
    store = MasteryStore(catalog, defaults, per_kc, mastery_threshold)
    store.replay(records)
    return store
