"""Solving, answer checking, and tiered hints over generated problems."""

from __future__ import annotations

from dataclasses import dataclass

from ..engine import (
    FactValue,
    REGISTRY,
    Trace,
    check_input,
    expected_values_for_step,
    solve,
)
from ..expr import Expr, render
from .catalog import Catalog, ProblemType, default_catalog
from .generators import ProblemInstance, generate

HINT_LEVELS = (1, 2, 3)


class InvalidHintLevelError(ValueError):
    pass


class StepAlreadyCorrectError(ValueError):
    def __init__(self, slot: str):
        super().__init__(f"step {slot!r} is already correct")
        self.slot = slot


@dataclass(frozen=True)
class Hint:
    level: int
    text: str
    highlight_slot: str
    bottom_out_value: FactValue | None

    @property
    def bottom_out_text(self) -> str | None:
        return None if self.bottom_out_value is None else display_value(self.bottom_out_value)


def display_value(value: FactValue) -> str:
    if isinstance(value, Expr):
        return render(value, "plain")
    if isinstance(value, tuple):
        return ", ".join(str(x) for x in value)
    return str(value)


def display_value_latex(value: FactValue) -> str:
    if isinstance(value, Expr):
        return render(value, "latex")
    if isinstance(value, tuple):
        return ", ".join(str(x) for x in value)
    return str(value)


def solve_instance(pt: ProblemType, instance: ProblemInstance) -> Trace:
    return solve(list(pt.rules), REGISTRY, instance.initial_facts)


def hint(
    pt: ProblemType,
    trace: Trace,
    step_slot: str,
    level: int,
    correct_slots: frozenset[str] = frozenset(),
) -> Hint:
    """Tiered assistance for one step.

    Level 1 highlights the step with an encouraging message, level 2 explains
    the strategy, level 3 reveals the step's answer. When several strategies
    derive the slot, the first by (rule id, bindings) is the one hinted.
    """
    if level not in HINT_LEVELS:
        raise InvalidHintLevelError(f"hint level must be 1, 2, or 3, got {level}")
    if step_slot in correct_slots:
        raise StepAlreadyCorrectError(step_slot)
    entries = [e for e in trace if e.slot == step_slot]
    if not entries:
        from ..engine import UnknownSlotError

        raise UnknownSlotError(step_slot)
    entry = min(entries, key=lambda e: (e.rule_id, e.bindings))
    rule = next(r for r in pt.rules if r.id == entry.rule_id)
    template = rule.hint_templates[level - 1]
    substitutions = {name: display_value(value) for name, value in entry.bindings}
    substitutions["value"] = display_value(entry.value)
    text = template.format(**substitutions)
    bottom_out = entry.value if level == 3 else None
    return Hint(level=level, text=text, highlight_slot=step_slot, bottom_out_value=bottom_out)


def list_catalog(catalog: Catalog | None = None) -> list[dict]:
    """Tutor -> problem type summary used by the API and the CLI."""
    catalog = catalog or default_catalog()
    return [
        {
            "id": tutor.id,
            "display_name": tutor.display_name,
            "problem_types": [
                {
                    "id": pt.id,
                    "display_name": pt.display_name,
                    "kc_ids": sorted(pt.kc_ids),
                }
                for pt in tutor.problem_types
            ],
        }
        for tutor in catalog.tutors
    ]


__all__ = [
    "Hint",
    "HINT_LEVELS",
    "InvalidHintLevelError",
    "ProblemInstance",
    "StepAlreadyCorrectError",
    "check_input",
    "display_value",
    "display_value_latex",
    "expected_values_for_step",
    "generate",
    "hint",
    "list_catalog",
    "solve_instance",
]
