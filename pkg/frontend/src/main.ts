// Application shell: a small screen router over the API client. Every
// verdict shown comes from a server response; request failures render an
// error banner (or route back to consent on 403).

import { ApiClient, ApiFailure } from './api.js';
import {
  ProblemView,
  applyAttempt,
  applyDone,
  applyError,
  applyHint,
  problemViewFrom,
} from './state.js';
import { renderConsent, renderProblem, renderProfile, renderTutors } from './ui.js';

export class App {
  private view: ProblemView | null = null;
  private lastRequest: { tutorId: string; mode: 'adaptive' | 'manual'; problemType?: string } | null =
    null;

  constructor(private root: HTMLElement, private api: ApiClient) {}

  start(): void {
    this.showConsent();
  }

  showConsent(notice?: string): void {
    renderConsent(this.root, (studentId, consent) => {
      void this.openSession(studentId, consent);
    });
    if (notice) {
      const banner = this.root.ownerDocument.createElement('div');
      banner.className = 'error-banner';
      banner.textContent = notice;
      this.root.prepend(banner);
    }
  }

  private async openSession(studentId: string, consent: boolean): Promise<void> {
    try {
      await this.api.createSession(studentId, consent);
      await this.showTutors();
    } catch (error) {
      this.handleTopLevel(error);
    }
  }

  async showTutors(): Promise<void> {
    try {
      const tutors = await this.api.tutors();
      renderTutors(
        this.root,
        tutors,
        (tutorId, mode, problemType) => void this.openProblem(tutorId, mode, problemType),
        () => void this.showProfile(),
      );
    } catch (error) {
      this.handleTopLevel(error);
    }
  }

  async openProblem(
    tutorId: string,
    mode: 'adaptive' | 'manual',
    problemType?: string,
  ): Promise<void> {
    try {
      const problem = await this.api.requestProblem(tutorId, mode, problemType);
      this.lastRequest = { tutorId, mode, problemType };
      this.view = problemViewFrom(problem);
      this.renderCurrent();
    } catch (error) {
      this.handleTopLevel(error);
    }
  }

  async showProfile(): Promise<void> {
    try {
      const profile = await this.api.mastery();
      renderProfile(this.root, profile, () => void this.showTutors());
    } catch (error) {
      this.handleTopLevel(error);
    }
  }

  renderCurrent(): void {
    if (!this.view) return;
    renderProblem(this.root, this.view, {
      onAttempt: (slot, value) => void this.attempt(slot, value),
      onHint: (slot) => void this.hint(slot),
      onDone: () => void this.done(),
      onNext: () => {
        const last = this.lastRequest;
        if (last) void this.openProblem(last.tutorId, last.mode, last.problemType);
      },
    });
  }

  private async attempt(slot: string, value: string): Promise<void> {
    if (!this.view) return;
    try {
      const result = await this.api.attempt(this.view.problemId, slot, value);
      this.view = applyAttempt(this.view, slot, value, result);
    } catch (error) {
      this.view = applyError(this.view, this.describe(error));
      if (error instanceof ApiFailure && error.status === 403) {
        this.showConsent('This session has no consent on record.');
        return;
      }
    }
    this.renderCurrent();
  }

  private async hint(slot: string): Promise<void> {
    if (!this.view) return;
    try {
      const result = await this.api.hint(this.view.problemId, slot);
      this.view = applyHint(this.view, result);
    } catch (error) {
      this.view = applyError(this.view, this.describe(error));
    }
    this.renderCurrent();
  }

  private async done(): Promise<void> {
    if (!this.view) return;
    try {
      const result = await this.api.done(this.view.problemId);
      this.view = applyDone(this.view, result.complete);
      if (!result.complete) {
        this.view = applyError(this.view, 'Not finished yet: every step needs a correct answer.');
      }
    } catch (error) {
      this.view = applyError(this.view, this.describe(error));
    }
    this.renderCurrent();
  }

  private describe(error: unknown): string {
    if (error instanceof ApiFailure) {
      if (error.body.code === 'parse_error') {
        return `Could not read that input: ${error.body.message}`;
      }
      return error.body.message;
    }
    return 'Network problem: the answer was not checked. Try again.';
  }

  private handleTopLevel(error: unknown): void {
    if (error instanceof ApiFailure && error.status === 403) {
      this.showConsent('This session has no consent on record.');
      return;
    }
    this.showConsent(this.describe(error));
  }
}

export function mount(root: HTMLElement, baseUrl = ''): App {
  const app = new App(root, new ApiClient(baseUrl));
  app.start();
  return app;
}

declare global {
  interface Window {
    algetutorMount?: typeof mount;
  }
}

if (typeof window !== 'undefined' && typeof document !== 'undefined') {
  window.algetutorMount = mount;
  const root = document.getElementById('app');
  if (root) mount(root);
}
