"""The four tutors: schemas, generators, rule sets, and hint content."""

from .catalog import (
    Catalog,
    CatalogError,
    ProblemType,
    StepSchema,
    TUTOR_IDS,
    Tutor,
    UnknownProblemTypeError,
    UnknownTutorError,
    default_catalog,
    load_catalog,
)
from .generators import ProblemInstance, generate
from .problems import (
    HINT_LEVELS,
    Hint,
    InvalidHintLevelError,
    StepAlreadyCorrectError,
    display_value,
    display_value_latex,
    hint,
    list_catalog,
    solve_instance,
)

__all__ = [
    "Catalog",
    "CatalogError",
    "HINT_LEVELS",
    "Hint",
    "InvalidHintLevelError",
    "ProblemInstance",
    "ProblemType",
    "StepAlreadyCorrectError",
    "StepSchema",
    "TUTOR_IDS",
    "Tutor",
    "UnknownProblemTypeError",
    "UnknownTutorError",
    "default_catalog",
    "display_value",
    "display_value_latex",
    "generate",
    "hint",
    "list_catalog",
    "load_catalog",
    "solve_instance",
]
