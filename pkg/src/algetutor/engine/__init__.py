"""Production-rule expert models: matching, firing, step checking."""

from .actions import REGISTRY
from .core import (
    ActionSpec,
    CheckResult,
    Condition,
    CycleLimitError,
    DuplicateSlotError,
    EngineError,
    Fact,
    FactValue,
    ProductionRule,
    RuleEngine,
    Trace,
    TraceEntry,
    UnknownSlotError,
    check_input,
    expected_values_for_step,
    solve,
    value_fingerprint,
)
from .loader import RuleFileError, load_rules, parse_rule

__all__ = [
    "REGISTRY",
    "ActionSpec",
    "CheckResult",
    "Condition",
    "CycleLimitError",
    "DuplicateSlotError",
    "EngineError",
    "Fact",
    "FactValue",
    "ProductionRule",
    "RuleEngine",
    "RuleFileError",
    "Trace",
    "TraceEntry",
    "UnknownSlotError",
    "check_input",
    "expected_values_for_step",
    "load_rules",
    "parse_rule",
    "solve",
    "value_fingerprint",
]
