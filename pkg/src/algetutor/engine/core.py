"""Forward-chaining production engine with an alpha-indexed match network.

Facts are slot -> value pairs; each rule carries the knowledge component it
represents plus three hint templates. Rules fire in deterministic order
(rule id, then binding signature), assert derived facts, and never retract,
so a fixpoint is always reached. The ordered firing trace is the expert's
solution path for the problem.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from ..expr import Const, Expr, canonicalize, equivalent, to_sexpr
from ..expr.evaluate import UndecidableEquivalenceError

FactValue = Expr | int | str | tuple[int, int]

MAX_FIRINGS = 10_000


class EngineError(Exception):
    pass


class DuplicateSlotError(EngineError):
    def __init__(self, slot: str):
        super().__init__(f"slot {slot!r} already asserted")
        self.slot = slot


class UnknownSlotError(EngineError):
    def __init__(self, slot: str):
        super().__init__(f"no derived value targets slot {slot!r}")
        self.slot = slot


class CycleLimitError(EngineError):
    pass


@dataclass(frozen=True)
class Fact:
    slot: str
    value: FactValue


@dataclass(frozen=True)
class Condition:
    slot: str
    bind: str


@dataclass(frozen=True)
class ActionSpec:
    name: str
    args: dict[str, str]  # action parameter -> binding variable
    target: str

    def __hash__(self):  # dict field excludes the default hash
        return hash((self.name, self.target, tuple(sorted(self.args.items()))))


@dataclass(frozen=True)
class ProductionRule:
    id: str
    kc_id: str
    conditions: tuple[Condition, ...]
    action: ActionSpec
    hint_templates: tuple[str, str, str]

    def __post_init__(self) -> None:
        if not self.kc_id:
            raise ValueError(f"rule {self.id!r} needs a knowledge component")
        if len(self.hint_templates) != 3:
            raise ValueError(f"rule {self.id!r} needs exactly 3 hint templates")
        if not self.conditions:
            raise ValueError(f"rule {self.id!r} needs at least one condition")


@dataclass(frozen=True)
class TraceEntry:
    rule_id: str
    kc_id: str
    bindings: tuple[tuple[str, FactValue], ...]
    slot: str
    value: FactValue


Trace = list[TraceEntry]


def value_fingerprint(v: FactValue) -> str:
    """Deterministic key for refraction signatures and value sets."""
    if isinstance(v, Expr):
        return "e:" + to_sexpr(v)
    if isinstance(v, bool):
        raise TypeError("boolean fact values are not supported")
    if isinstance(v, int):
        return f"i:{v}"
    if isinstance(v, tuple):
        return "p:" + ",".join(str(x) for x in v)
    return "s:" + v


def _binding_signature(bindings: dict[str, FactValue]) -> str:
    return ";".join(f"{k}={value_fingerprint(v)}" for k, v in sorted(bindings.items()))


class RuleEngine:
    """Single-problem working memory plus rule set. Not thread-safe; use one
    instance per solve."""

    def __init__(self, rules: list[ProductionRule], actions: dict[str, Callable]):
        self.rules = {r.id: r for r in rules}
        if len(self.rules) != len(rules):
            raise ValueError("duplicate rule ids")
        self.actions = actions
        self.memory: dict[str, Fact] = {}
        self.fired: set[tuple[str, str]] = set()
        # alpha network: slot name -> rules with a condition on that slot
        self.alpha: dict[str, list[str]] = {}
        self._unmet: dict[str, set[str]] = {}
        for rule in rules:
            self._unmet[rule.id] = {c.slot for c in rule.conditions}
            for cond in rule.conditions:
                self.alpha.setdefault(cond.slot, []).append(rule.id)
        self._agenda: list[tuple[str, str, dict[str, FactValue]]] = []

    def assert_fact(self, fact: Fact) -> None:
        if fact.slot in self.memory:
            raise DuplicateSlotError(fact.slot)
        self.memory[fact.slot] = fact
        for rule_id in self.alpha.get(fact.slot, ()):
            unmet = self._unmet[rule_id]
            unmet.discard(fact.slot)
            if not unmet:
                self._activate(self.rules[rule_id])

    def _activate(self, rule: ProductionRule) -> None:
        bindings = {c.bind: self.memory[c.slot].value for c in rule.conditions}
        sig = _binding_signature(bindings)
        if (rule.id, sig) not in self.fired:
            self._agenda.append((rule.id, sig, bindings))

    def run_to_fixpoint(self) -> Trace:
        trace: Trace = []
        while self._agenda:
            self._agenda.sort(key=lambda item: (item[0], item[1]))
            rule_id, sig, bindings = self._agenda.pop(0)
            if (rule_id, sig) in self.fired:
                continue
            self.fired.add((rule_id, sig))
            if len(trace) >= MAX_FIRINGS:
                raise CycleLimitError(f"exceeded {MAX_FIRINGS} firings; rule set looks cyclic")
            rule = self.rules[rule_id]
            spec = rule.action
            kwargs = {param: bindings[var] for param, var in spec.args.items()}
            value = self.actions[spec.name](**kwargs)
            trace.append(
                TraceEntry(rule_id, rule.kc_id, tuple(sorted(bindings.items())), spec.target, value)
            )
            if spec.target not in self.memory:
                self.assert_fact(Fact(spec.target, value))
            # else: an alternate derivation for an occupied slot; it lives in
            # the trace as an accepted answer but does not change memory
        return trace


def solve(
    rules: list[ProductionRule],
    actions: dict[str, Callable],
    initial_facts: dict[str, FactValue],
) -> Trace:
    """Assert the problem facts (sorted for determinism) and run to fixpoint."""
    engine = RuleEngine(rules, actions)
    for slot in sorted(initial_facts):
        engine.assert_fact(Fact(slot, initial_facts[slot]))
    return engine.run_to_fixpoint()


def expected_values_for_step(trace: Trace, step_slot: str) -> list[FactValue]:
    """All derived values targeting the slot, deduplicated, in firing order."""
    seen: dict[str, FactValue] = {}
    for entry in trace:
        if entry.slot == step_slot:
            key = value_fingerprint(
                canonicalize(entry.value) if isinstance(entry.value, Expr) else entry.value
            )
            seen.setdefault(key, entry.value)
    if not seen:
        raise UnknownSlotError(step_slot)
    return list(seen.values())


def _values_match(expected: FactValue, given: FactValue) -> bool:
    if isinstance(expected, int) and not isinstance(expected, bool):
        expected = Const(expected)
    if isinstance(given, int) and not isinstance(given, bool):
        given = Const(given)
    if isinstance(expected, Expr) and isinstance(given, Expr):
        try:
            return equivalent(expected, given)
        except UndecidableEquivalenceError:
            return False
    if isinstance(expected, tuple) and isinstance(given, tuple):
        return expected == given
    return expected == given


@dataclass(frozen=True)
class CheckResult:
    correct: bool
    matched_kc: str | None


def check_input(trace: Trace, step_slot: str, student_input: FactValue) -> CheckResult:
    """Correct iff the input is equivalent to any value derived for the slot.

    matched_kc is the knowledge component of the rule that derived the
    matched value; None on incorrect (callers attribute those to the step's
    declared component).
    """
    matched_any_slot = False
    for entry in trace:
        if entry.slot != step_slot:
            continue
        matched_any_slot = True
        if _values_match(entry.value, student_input):
            return CheckResult(True, entry.kc_id)
    if not matched_any_slot:
        raise UnknownSlotError(step_slot)
    return CheckResult(False, None)
