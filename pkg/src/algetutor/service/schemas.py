"""Pydantic request/response models for the HTTP API."""

from __future__ import annotations

from pydantic import BaseModel, Field


class SessionRequest(BaseModel):
    student_id: str = Field(min_length=1, max_length=128)
    consent: bool


class SessionResponse(BaseModel):
    token: str


class ProblemRequest(BaseModel):
    mode: str = Field(pattern="^(adaptive|manual)$")
    problem_type: str | None = None


class StepView(BaseModel):
    slot: str
    prompt: str
    mode: str
    kc_id: str
    index: int
    locked: bool
    hint_tier: int


class ProblemResponse(BaseModel):
    problem_id: str
    tutor_id: str
    problem_type_id: str
    display_name: str
    statement: str
    statement_latex: str
    rationale: str
    completed: bool
    steps: list[StepView]


class AttemptRequest(BaseModel):
    input: str


class AttemptResponse(BaseModel):
    correct: bool
    locked: bool
    kc_id: str
    p_mastery_after: float


class HintResponse(BaseModel):
    tier: int
    text: str
    highlight_slot: str
    bottom_out_value: str | None
    bottom_out_latex: str | None


class DoneResponse(BaseModel):
    complete: bool


class KcMastery(BaseModel):
    kc_id: str
    p_mastery: float
    mastered: bool
    observations: int
    problem_types: list[str]


class MasteryResponse(BaseModel):
    student_id: str
    mastery_threshold: float
    kcs: list[KcMastery]


class ProblemTypeView(BaseModel):
    id: str
    display_name: str
    kc_ids: list[str]


class TutorView(BaseModel):
    id: str
    display_name: str
    problem_types: list[ProblemTypeView]


class FunnelResponse(BaseModel):
    students_with_access: int
    students_with_interaction: int
    pct_used: float
    finished_ge1: int
    pct_finished_ge1: float
    histogram: dict[str, int]


class ErrorBody(BaseModel):
    code: str
    message: str
    detail: dict = Field(default_factory=dict)


class ErrorEnvelope(BaseModel):
    error: ErrorBody
