"""Tutor catalog: problem-type metadata, step schemas, and rule sets.

Domain content is data (JSON files under data/); this module loads and
validates it. A new tutor needs no code as long as its rules reference
actions from the primitive registry and its template name exists.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from ..engine import ProductionRule, load_rules

TUTOR_IDS = ("radicals", "exponents", "factoring", "rational-equations")

INPUT_MODES = ("expression", "integer", "integer-pair")


class CatalogError(ValueError):
    pass


class UnknownProblemTypeError(KeyError):
    def __init__(self, type_id: str):
        super().__init__(type_id)
        self.type_id = type_id


class UnknownTutorError(KeyError):
    def __init__(self, tutor_id: str):
        super().__init__(tutor_id)
        self.tutor_id = tutor_id


@dataclass(frozen=True)
class StepSchema:
    slot: str
    prompt: str
    mode: str
    kc_id: str
    index: int


@dataclass(frozen=True)
class ProblemType:
    id: str
    tutor_id: str
    display_name: str
    template: str
    generator: dict
    steps: tuple[StepSchema, ...]
    rules: tuple[ProductionRule, ...]

    @property
    def kc_ids(self) -> frozenset[str]:
        return frozenset(r.kc_id for r in self.rules) | frozenset(s.kc_id for s in self.steps)

    def step(self, slot: str) -> StepSchema:
        for s in self.steps:
            if s.slot == slot:
                return s
        raise KeyError(slot)


@dataclass(frozen=True)
class Tutor:
    id: str
    display_name: str
    problem_types: tuple[ProblemType, ...]


class Catalog:
    def __init__(self, tutors: list[Tutor]):
        self.tutors = tuple(tutors)
        self._types: dict[str, ProblemType] = {}
        for tutor in tutors:
            for pt in tutor.problem_types:
                if pt.id in self._types:
                    raise CatalogError(f"duplicate problem type id {pt.id!r}")
                self._types[pt.id] = pt

    def tutor(self, tutor_id: str) -> Tutor:
        for t in self.tutors:
            if t.id == tutor_id:
                return t
        raise UnknownTutorError(tutor_id)

    def problem_type(self, type_id: str) -> ProblemType:
        try:
            return self._types[type_id]
        except KeyError:
            raise UnknownProblemTypeError(type_id) from None

    def problem_types(self) -> list[ProblemType]:
        return list(self._types.values())

    def all_kc_ids(self) -> frozenset[str]:
        out: frozenset[str] = frozenset()
        for pt in self._types.values():
            out |= pt.kc_ids
        return out

    def types_touching(self, kc_id: str) -> list[str]:
        return [pt.id for pt in self._types.values() if kc_id in pt.kc_ids]


def _data_dir() -> Path:
    return Path(str(resources.files("algetutor.domains").joinpath("data")))


def _load_problem_type(entry: dict, tutor_id: str, base: Path) -> ProblemType:
    steps = tuple(
        StepSchema(
            slot=s["slot"],
            prompt=s["prompt"],
            mode=s["mode"],
            kc_id=s["kc"],
            index=i,
        )
        for i, s in enumerate(entry["steps"])
    )
    rules = tuple(load_rules(base / entry["rules_file"]))
    pt = ProblemType(
        id=entry["id"],
        tutor_id=tutor_id,
        display_name=entry["display_name"],
        template=entry["template"],
        generator=dict(entry["generator"]),
        steps=steps,
        rules=rules,
    )
    _validate_problem_type(pt)
    return pt


def _validate_problem_type(pt: ProblemType) -> None:
    if pt.tutor_id not in TUTOR_IDS:
        raise CatalogError(f"{pt.id}: unknown tutor {pt.tutor_id!r}")
    if not pt.steps:
        raise CatalogError(f"{pt.id}: needs at least one step")
    slots = [s.slot for s in pt.steps]
    if len(set(slots)) != len(slots):
        raise CatalogError(f"{pt.id}: duplicate step slots")
    rule_kcs = {r.kc_id for r in pt.rules}
    for s in pt.steps:
        if s.mode not in INPUT_MODES:
            raise CatalogError(f"{pt.id}: step {s.slot!r} has unknown mode {s.mode!r}")
        if s.kc_id not in rule_kcs:
            raise CatalogError(f"{pt.id}: step {s.slot!r} declares kc {s.kc_id!r} not in rule set")
    derived = {r.action.target for r in pt.rules}
    for s in pt.steps:
        if s.slot not in derived:
            raise CatalogError(f"{pt.id}: no rule derives step slot {s.slot!r}")


def load_catalog(data_dir: Path | None = None) -> Catalog:
    base = data_dir or _data_dir()
    tutors = []
    for path in sorted(base.glob("*.json")):
        doc = json.loads(path.read_text(encoding="utf-8"))
        problem_types = tuple(
            _load_problem_type(entry, doc["tutor_id"], base) for entry in doc["problem_types"]
        )
        tutors.append(
            Tutor(id=doc["tutor_id"], display_name=doc["display_name"], problem_types=problem_types)
        )
    if len(tutors) != len(TUTOR_IDS):
        raise CatalogError(f"expected {len(TUTOR_IDS)} tutors, found {len(tutors)}")
    return Catalog(tutors)


_default: Catalog | None = None


def default_catalog() -> Catalog:
    global _default
    if _default is None:
        _default = load_catalog()
    return _default
