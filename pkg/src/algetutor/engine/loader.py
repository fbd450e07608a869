"""Load declarative rule-set files (JSON) into ProductionRule objects."""

from __future__ import annotations

import inspect
import json
from pathlib import Path

from .actions import REGISTRY
from .core import ActionSpec, Condition, ProductionRule


class RuleFileError(ValueError):
    pass


def load_rules(path: Path | str) -> list[ProductionRule]:
    raw = json.loads(Path(path).read_text(encoding="utf-8"))
    if not isinstance(raw, list):
        raise RuleFileError(f"{path}: expected a list of rules")
    return [parse_rule(entry, source=str(path)) for entry in raw]


def parse_rule(entry: dict, source: str = "<memory>") -> ProductionRule:
    try:
        conditions = tuple(
            Condition(slot=c["slot"], bind=c["bind"]) for c in entry["conditions"]
        )
        action = entry["action"]
        spec = ActionSpec(
            name=action["name"],
            args=dict(action.get("args", {})),
            target=action["target"],
        )
        rule = ProductionRule(
            id=entry["id"],
            kc_id=entry["kc"],
            conditions=conditions,
            action=spec,
            hint_templates=tuple(entry["hints"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise RuleFileError(f"{source}: bad rule {entry.get('id', '?')!r}: {exc}") from exc
    _check_action(rule, source)
    return rule


def _check_action(rule: ProductionRule, source: str) -> None:
    fn = REGISTRY.get(rule.action.name)
    if fn is None:
        raise RuleFileError(f"{source}: rule {rule.id!r} uses unknown action {rule.action.name!r}")
    params = set(inspect.signature(fn).parameters)
    if set(rule.action.args) != params:
        raise RuleFileError(
            f"{source}: rule {rule.id!r} action args {sorted(rule.action.args)} "
            f"do not match {rule.action.name}({sorted(params)})"
        )
    bound = {c.bind for c in rule.conditions}
    missing = set(rule.action.args.values()) - bound
    if missing:
        raise RuleFileError(f"{source}: rule {rule.id!r} references unbound vars {sorted(missing)}")
