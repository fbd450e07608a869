// DOM rendering for the five surfaces: consent, tutor catalog, problem view
// (steps + hint box + adaptive tab), and the mastery profile page.

import type { Profile, Tutor } from './api.js';
import type { ProblemView } from './state.js';
import { barWidth } from './state.js';
import { previewHtml } from './preview.js';

export type ProblemHandlers = {
  onAttempt: (slot: string, value: string) => void;
  onHint: (slot: string) => void;
  onDone: () => void;
  onNext: () => void;
};

function el<K extends keyof HTMLElementTagNameMap>(
  doc: Document,
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = doc.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

export function renderConsent(
  root: HTMLElement,
  onSubmit: (studentId: string, consent: boolean) => void,
): void {
  const doc = root.ownerDocument;
  root.replaceChildren();
  const panel = el(doc, 'section', 'consent-panel');
  panel.append(el(doc, 'h1', undefined, 'Algebra practice'));
  panel.append(
    el(
      doc,
      'p',
      'consent-text',
      'Interaction data (attempts, hints, timing) is recorded to adapt your practice. Without consent the tutors stay unavailable.',
    ),
  );
  const input = el(doc, 'input', 'student-id');
  input.placeholder = 'your student id';
  const agree = el(doc, 'button', 'consent-yes', 'I consent, start practicing');
  agree.addEventListener('click', () => {
    if (input.value.trim()) onSubmit(input.value.trim(), true);
  });
  const decline = el(doc, 'button', 'consent-no', 'No thanks');
  decline.addEventListener('click', () => {
    if (input.value.trim()) onSubmit(input.value.trim(), false);
  });
  panel.append(input, agree, decline);
  root.append(panel);
}

export function renderTutors(
  root: HTMLElement,
  tutors: Tutor[],
  onPick: (tutorId: string, mode: 'adaptive' | 'manual', problemType?: string) => void,
  onProfile: () => void,
): void {
  const doc = root.ownerDocument;
  root.replaceChildren();
  const header = el(doc, 'header', 'top-bar');
  header.append(el(doc, 'h1', undefined, 'Tutors'));
  const profileLink = el(doc, 'button', 'nav-profile', 'My progress');
  profileLink.addEventListener('click', onProfile);
  header.append(profileLink);
  root.append(header);
  const list = el(doc, 'div', 'tutor-list');
  for (const tutor of tutors) {
    const card = el(doc, 'section', 'tutor-card');
    card.dataset.tutor = tutor.id;
    card.append(el(doc, 'h2', undefined, tutor.display_name));
    const adaptive = el(doc, 'button', 'adaptive-tab', 'Adaptive practice');
    adaptive.addEventListener('click', () => onPick(tutor.id, 'adaptive'));
    card.append(adaptive);
    const types = el(doc, 'div', 'type-list');
    for (const pt of tutor.problem_types) {
      const button = el(doc, 'button', 'type-pick', pt.display_name);
      button.dataset.type = pt.id;
      button.addEventListener('click', () => onPick(tutor.id, 'manual', pt.id));
      types.append(button);
    }
    card.append(types);
    list.append(card);
  }
  root.append(list);
}

export function renderProblem(root: HTMLElement, view: ProblemView, handlers: ProblemHandlers): void {
  const doc = root.ownerDocument;
  root.replaceChildren();
  const panel = el(doc, 'section', 'problem-panel');
  panel.append(el(doc, 'h2', 'problem-title', view.displayName));
  panel.append(el(doc, 'div', 'rationale', view.rationale));
  const statement = el(doc, 'div', 'statement');
  statement.innerHTML = previewHtml(view.statement);
  panel.append(statement);

  const steps = el(doc, 'ol', 'steps');
  for (const step of view.steps) {
    const item = el(doc, 'li', 'step');
    item.dataset.slot = step.slot;
    if (view.hint && view.hint.highlightSlot === step.slot) item.classList.add('highlight');
    item.append(el(doc, 'label', 'prompt', step.prompt));
    const input = el(doc, 'input', 'step-input');
    input.dataset.slot = step.slot;
    input.value = step.lastInput;
    if (step.status === 'correct-locked') {
      input.classList.add('correct');
      input.disabled = true;
    } else if (step.status === 'incorrect') {
      input.classList.add('incorrect');
      input.disabled = false;
    }
    const preview = el(doc, 'span', 'entry-preview');
    preview.innerHTML = previewHtml(step.lastInput);
    input.addEventListener('input', () => {
      preview.innerHTML = previewHtml(input.value);
    });
    const check = el(doc, 'button', 'check', 'Check');
    check.disabled = step.status === 'correct-locked';
    check.addEventListener('click', () => handlers.onAttempt(step.slot, input.value));
    input.addEventListener('keydown', (event) => {
      if ((event as KeyboardEvent).key === 'Enter' && !input.disabled) {
        handlers.onAttempt(step.slot, input.value);
      }
    });
    const hintButton = el(doc, 'button', 'hint-request', 'Hint');
    hintButton.disabled = step.status === 'correct-locked';
    hintButton.addEventListener('click', () => handlers.onHint(step.slot));
    item.append(input, preview, check, hintButton);
    steps.append(item);
  }
  panel.append(steps);

  const hintBox = el(doc, 'div', 'hint-box');
  if (view.hint) {
    hintBox.append(el(doc, 'span', 'hint-tier', `Hint ${view.hint.tier} of 3`));
    hintBox.append(el(doc, 'p', 'hint-text', view.hint.text));
    if (view.hint.bottomOut !== null) {
      const bottom = el(doc, 'div', 'hint-bottom-out');
      bottom.innerHTML = previewHtml(view.hint.bottomOut);
      bottom.dataset.value = view.hint.bottomOut; // raw text, typeable as-is
      hintBox.append(bottom);
    }
  } else {
    hintBox.append(el(doc, 'p', 'hint-text hint-empty', 'Stuck? Ask for a hint on any step.'));
  }
  panel.append(hintBox);

  if (view.error) {
    panel.append(el(doc, 'div', 'error-banner', view.error));
  }
  const controls = el(doc, 'div', 'controls');
  const done = el(doc, 'button', 'done', view.complete ? 'Completed!' : 'Done');
  done.disabled = view.complete;
  done.addEventListener('click', handlers.onDone);
  const next = el(doc, 'button', 'next', 'Next problem');
  next.addEventListener('click', handlers.onNext);
  controls.append(done, next);
  panel.append(controls);
  root.append(panel);
}

export function renderProfile(root: HTMLElement, profile: Profile, onBack: () => void): void {
  const doc = root.ownerDocument;
  root.replaceChildren();
  const panel = el(doc, 'section', 'profile-panel');
  panel.append(el(doc, 'h2', undefined, `Progress for ${profile.student_id}`));
  const back = el(doc, 'button', 'nav-back', 'Back to tutors');
  back.addEventListener('click', onBack);
  panel.append(back);
  const groups = new Map<string, typeof profile.kcs>();
  for (const row of profile.kcs) {
    const key = row.problem_types.join(', ') || 'other';
    const bucket = groups.get(key) ?? [];
    bucket.push(row);
    groups.set(key, bucket);
  }
  for (const [group, rows] of groups) {
    const section = el(doc, 'div', 'kc-group');
    section.append(el(doc, 'h3', undefined, group));
    for (const row of rows) {
      const line = el(doc, 'div', 'kc-row');
      line.dataset.kc = row.kc_id;
      line.append(el(doc, 'span', 'kc-name', row.kc_id));
      const track = el(doc, 'div', 'bar-track');
      const fill = el(doc, 'div', 'bar-fill');
      fill.style.width = `${barWidth(row.p_mastery)}%`;
      if (row.mastered) fill.classList.add('mastered');
      track.append(fill);
      line.append(track);
      line.append(el(doc, 'span', 'kc-pct', `${barWidth(row.p_mastery)}%`));
      section.append(line);
    }
    panel.append(section);
  }
  root.append(panel);
}
