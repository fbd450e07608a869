// Typed client for the tutoring service HTTP API. The UI talks to the
// backend exclusively through this module; no correctness logic lives here.

export type ApiErrorBody = {
  code: string;
  message: string;
  detail?: Record<string, unknown>;
};

export class ApiFailure extends Error {
  constructor(public status: number, public body: ApiErrorBody) {
    super(`${body.code}: ${body.message}`);
  }
}

export type ProblemTypeSummary = {
  id: string;
  display_name: string;
  kc_ids: string[];
};

export type Tutor = {
  id: string;
  display_name: string;
  problem_types: ProblemTypeSummary[];
};

export type Step = {
  slot: string;
  prompt: string;
  mode: 'expression' | 'integer' | 'integer-pair';
  kc_id: string;
  index: number;
  locked: boolean;
  hint_tier: number;
};

export type Problem = {
  problem_id: string;
  tutor_id: string;
  problem_type_id: string;
  display_name: string;
  statement: string;
  statement_latex: string;
  rationale: string;
  completed: boolean;
  steps: Step[];
};

export type AttemptResult = {
  correct: boolean;
  locked: boolean;
  kc_id: string;
  p_mastery_after: number;
};

export type HintResult = {
  tier: number;
  text: string;
  highlight_slot: string;
  bottom_out_value: string | null;
  bottom_out_latex: string | null;
};

export type MasteryRow = {
  kc_id: string;
  p_mastery: number;
  mastered: boolean;
  observations: number;
  problem_types: string[];
};

export type Profile = {
  student_id: string;
  mastery_threshold: number;
  kcs: MasteryRow[];
};

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  token: string | null = null;

  constructor(
    private base: string = '',
    private fetchFn: FetchLike = (input, init) => globalThis.fetch(input, init),
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const headers: Record<string, string> = { 'content-type': 'application/json' };
    if (this.token) headers['authorization'] = `Bearer ${this.token}`;
    const response = await this.fetchFn(this.base + path, {
      method,
      headers,
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    const text = await response.text();
    const payload = text ? JSON.parse(text) : {};
    if (!response.ok) {
      const error: ApiErrorBody = payload.error ?? {
        code: 'unknown',
        message: `HTTP ${response.status}`,
      };
      throw new ApiFailure(response.status, error);
    }
    return payload as T;
  }

  async createSession(studentId: string, consent: boolean): Promise<string> {
    const out = await this.request<{ token: string }>('POST', '/api/sessions', {
      student_id: studentId,
      consent,
    });
    this.token = out.token;
    return out.token;
  }

  tutors(): Promise<Tutor[]> {
    return this.request('GET', '/api/tutors');
  }

  requestProblem(tutorId: string, mode: 'adaptive' | 'manual', problemType?: string): Promise<Problem> {
    return this.request('POST', `/api/tutors/${tutorId}/problems`, {
      mode,
      problem_type: problemType ?? null,
    });
  }

  attempt(problemId: string, slot: string, input: string): Promise<AttemptResult> {
    return this.request('POST', `/api/problems/${problemId}/steps/${slot}/attempts`, { input });
  }

  hint(problemId: string, slot: string): Promise<HintResult> {
    return this.request('POST', `/api/problems/${problemId}/steps/${slot}/hints`);
  }

  done(problemId: string): Promise<{ complete: boolean }> {
    return this.request('POST', `/api/problems/${problemId}/done`);
  }

  mastery(): Promise<Profile> {
    return this.request('GET', '/api/profile/mastery');
  }
}
