"""Next-problem selection: adaptive (weakest unmastered skill) or manual."""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass

from .domains import Catalog, ProblemType, UnknownProblemTypeError
from .tracing import MasteryStore


@dataclass(frozen=True)
class SelectionRequest:
    student_id: str
    tutor_id: str
    mode: str  # adaptive | manual
    problem_type_id: str | None = None
    rng_seed: int = 0

    def __post_init__(self) -> None:
        if self.mode not in ("adaptive", "manual"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.mode == "manual" and not self.problem_type_id:
            raise ValueError("manual mode needs a problem type id")


@dataclass(frozen=True)
class Selection:
    problem_type_id: str
    rationale: str


def select(request: SelectionRequest, store: MasteryStore, catalog: Catalog) -> Selection:
    """Pick the problem type whose weakest component needs the most work.

    Ties break on fewest completed problems of that type, then on type id.
    With everything mastered, practice continues on a seeded-uniform pick.
    """
    tutor = catalog.tutor(request.tutor_id)
    if request.mode == "manual":
        pt = catalog.problem_type(request.problem_type_id)
        if pt.tutor_id != tutor.id:
            raise UnknownProblemTypeError(request.problem_type_id)
        return Selection(pt.id, f"manual selection of {pt.id}")

    threshold = store.mastery_threshold
    candidates: list[tuple[float, int, str, str]] = []
    for pt in tutor.problem_types:
        weakest_kc, weakest_p = _weakest_kc(request.student_id, pt, store)
        if weakest_p >= threshold:
            continue  # every component of this type is mastered
        completed = store.completed_count(request.student_id, pt.id)
        candidates.append((weakest_p, completed, pt.id, weakest_kc))
    if candidates:
        weakest_p, _, type_id, kc = min(candidates)
        return Selection(
            type_id,
            f"weakest skill {kc} at mastery {weakest_p:.3f}",
        )
    rng = random.Random(request.rng_seed)
    pick = rng.choice([pt.id for pt in tutor.problem_types])
    return Selection(pick, "all skills mastered; random practice")


def _weakest_kc(student_id: str, pt: ProblemType, store: MasteryStore) -> tuple[str, float]:
    pairs = [
        (store.state(student_id, kc_id).p_mastery, kc_id) for kc_id in sorted(pt.kc_ids)
    ]
    p, kc = min(pairs)
    return kc, p


def derive_seed(student_id: str, transaction_count: int) -> int:
    """Stable per-(student, history-length) seed so retries differ."""
    digest = hashlib.sha256(f"{student_id}:{transaction_count}".encode()).digest()
    return int.from_bytes(digest[:8], "big")
