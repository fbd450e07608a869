// View state derivation. Everything here is a pure function of API
// responses: the client never decides correctness on its own, and the hint
// tier shown is always the tier the server returned.

import type { AttemptResult, HintResult, Problem } from './api.js';

export type StepStatus = 'untouched' | 'incorrect' | 'correct-locked';

export type StepView = {
  slot: string;
  prompt: string;
  mode: string;
  kcId: string;
  status: StepStatus;
  hintTier: number;
  lastInput: string;
};

export type HintPanel = {
  tier: number;
  text: string;
  highlightSlot: string;
  bottomOut: string | null;
};

export type ProblemView = {
  problemId: string;
  tutorId: string;
  displayName: string;
  statement: string;
  rationale: string;
  complete: boolean;
  steps: StepView[];
  hint: HintPanel | null;
  error: string | null;
};

export function problemViewFrom(problem: Problem): ProblemView {
  return {
    problemId: problem.problem_id,
    tutorId: problem.tutor_id,
    displayName: problem.display_name,
    statement: problem.statement,
    rationale: problem.rationale,
    complete: problem.completed,
    steps: problem.steps
      .slice()
      .sort((a, b) => a.index - b.index)
      .map((step) => ({
        slot: step.slot,
        prompt: step.prompt,
        mode: step.mode,
        kcId: step.kc_id,
        status: step.locked ? 'correct-locked' : 'untouched',
        hintTier: step.hint_tier,
        lastInput: '',
      })),
    hint: null,
    error: null,
  };
}

function withStep(view: ProblemView, slot: string, patch: Partial<StepView>): ProblemView {
  return {
    ...view,
    steps: view.steps.map((s) => (s.slot === slot ? { ...s, ...patch } : s)),
  };
}

export function applyAttempt(
  view: ProblemView,
  slot: string,
  input: string,
  result: AttemptResult,
): ProblemView {
  const status: StepStatus = result.locked ? 'correct-locked' : 'incorrect';
  return { ...withStep(view, slot, { status, lastInput: input }), error: null };
}

export function applyHint(view: ProblemView, result: HintResult): ProblemView {
  const next = withStep(view, result.highlight_slot, { hintTier: result.tier });
  return {
    ...next,
    hint: {
      tier: result.tier,
      text: result.text,
      highlightSlot: result.highlight_slot,
      bottomOut: result.bottom_out_value,
    },
    error: null,
  };
}

export function applyDone(view: ProblemView, complete: boolean): ProblemView {
  return { ...view, complete, error: null };
}

// A failed request is an error state, never a verdict: step statuses are
// left exactly as they were.
export function applyError(view: ProblemView, message: string): ProblemView {
  return { ...view, error: message };
}

export function barWidth(pMastery: number): number {
  return Math.round(100 * pMastery);
}
