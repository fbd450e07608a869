// UI smoke suite against the live service: server-confirmed verdicts drive
// the rendering, the third hint reveals the answer, and profile bars mirror
// the mastery report.

import { beforeEach, describe, expect, it } from 'vitest';

import { ApiClient } from '../src/api.js';
import { App } from '../src/main.js';
import { barWidth } from '../src/state.js';
import { SERVER_URL } from './server.setup.js';

function flush(times = 12): Promise<void> {
  let chain = Promise.resolve();
  for (let i = 0; i < times; i++) chain = chain.then(() => undefined);
  return chain;
}

async function until(check: () => boolean, label: string, attempts = 100): Promise<void> {
  for (let i = 0; i < attempts; i++) {
    if (check()) return;
    await flush();
    await new Promise((resolve) => setTimeout(resolve, 20));
  }
  throw new Error(`timed out waiting for ${label}`);
}

let root: HTMLElement;
let api: ApiClient;
let app: App;
let student = 0;

beforeEach(async () => {
  document.body.innerHTML = '<div id="app"></div>';
  root = document.getElementById('app') as HTMLElement;
  api = new ApiClient(SERVER_URL, (input, init) => fetch(input, init));
  student += 1;
  await api.createSession(`ui-student-${Date.now()}-${student}`, true);
  app = new App(root, api);
});

async function openManualProblem(): Promise<void> {
  await app.openProblem('exponents', 'manual', 'exponent-product');
  await until(() => root.querySelector('.step-input') !== null, 'problem view');
}

function stepInput(slot: string): HTMLInputElement {
  const node = root.querySelector(`.step-input[data-slot="${slot}"]`);
  if (!node) throw new Error(`no input for ${slot}`);
  return node as HTMLInputElement;
}

function clickHint(slot: string): void {
  const step = root.querySelector(`.step[data-slot="${slot}"]`);
  (step?.querySelector('.hint-request') as HTMLButtonElement).click();
}

function submit(slot: string, value: string): void {
  const input = stepInput(slot);
  input.value = value;
  const step = root.querySelector(`.step[data-slot="${slot}"]`);
  (step?.querySelector('.check') as HTMLButtonElement).click();
}

describe('problem interaction', () => {
  it('renders an incorrect attempt red and editable', async () => {
    await openManualProblem();
    submit('exponent_sum', '99999');
    await until(() => stepInput('exponent_sum').classList.contains('incorrect'), 'red step');
    const input = stepInput('exponent_sum');
    expect(input.classList.contains('incorrect')).toBe(true);
    expect(input.disabled).toBe(false);
  });

  it('escalates hints to tier 3 which reveals the answer, then locks green', async () => {
    await openManualProblem();
    clickHint('exponent_sum');
    await until(() => root.querySelector('.hint-tier')?.textContent === 'Hint 1 of 3', 'tier 1');
    expect(root.querySelector('.hint-bottom-out')).toBeNull();
    clickHint('exponent_sum');
    await until(() => root.querySelector('.hint-tier')?.textContent === 'Hint 2 of 3', 'tier 2');
    clickHint('exponent_sum');
    await until(() => root.querySelector('.hint-tier')?.textContent === 'Hint 3 of 3', 'tier 3');
    const bottom = root.querySelector('.hint-bottom-out');
    expect(bottom).not.toBeNull();
    const answer = (bottom as HTMLElement).dataset.value ?? '';
    expect(answer.length).toBeGreaterThan(0);

    submit('exponent_sum', answer);
    await until(
      () => stepInput('exponent_sum').classList.contains('correct'),
      'green locked step',
    );
    const input = stepInput('exponent_sum');
    expect(input.classList.contains('correct')).toBe(true);
    expect(input.disabled).toBe(true);
  });

  it('completes a problem only after every step and reports it', async () => {
    await openManualProblem();
    for (const slot of ['exponent_sum', 'result']) {
      for (let i = 0; i < 3; i++) {
        clickHint(slot);
        await until(
          () => root.querySelector('.hint-tier')?.textContent === `Hint ${i + 1} of 3`,
          `tier ${i + 1} for ${slot}`,
        );
      }
      const answer = (root.querySelector('.hint-bottom-out') as HTMLElement).dataset.value ?? '';
      submit(slot, answer);
      await until(() => stepInput(slot).disabled, `locked ${slot}`);
    }
    (root.querySelector('.done') as HTMLButtonElement).click();
    await until(
      () => (root.querySelector('.done') as HTMLButtonElement).textContent === 'Completed!',
      'completion',
    );
  });

  it('renders the error banner without a verdict when the network fails', async () => {
    await openManualProblem();
    const offline = new ApiClient(SERVER_URL, () => Promise.reject(new Error('offline')));
    offline.token = api.token;
    const offlineApp = new App(root, offline);
    // seed the offline app with the live problem, then cut the network
    const seeded = await api.requestProblem('exponents', 'manual', 'exponent-product');
    await offlineApp.openProblem('exponents', 'manual', 'exponent-product').catch(() => undefined);
    void seeded;
    await until(() => root.querySelector('.consent-panel, .error-banner') !== null, 'error surface');
    expect(root.querySelector('.step-input.correct, .step-input.incorrect')).toBeNull();
  });
});

describe('profile page', () => {
  it('draws bars that match the mastery report', async () => {
    await openManualProblem();
    submit('exponent_sum', '99999'); // one incorrect attempt moves one skill
    await until(() => stepInput('exponent_sum').classList.contains('incorrect'), 'attempt logged');

    const profile = await api.mastery();
    await app.showProfile();
    await until(() => root.querySelector('.kc-row') !== null, 'profile view');

    for (const row of profile.kcs) {
      const line = root.querySelector(`.kc-row[data-kc="${row.kc_id}"]`);
      expect(line, row.kc_id).not.toBeNull();
      const fill = line?.querySelector('.bar-fill') as HTMLElement;
      expect(fill.style.width).toBe(`${barWidth(row.p_mastery)}%`);
    }
    const touched = profile.kcs.find((row) => row.observations > 0);
    expect(touched).toBeDefined();
  });
});

describe('consent routing', () => {
  it('routes a consent-less session to the consent screen on 403', async () => {
    const denied = new ApiClient(SERVER_URL, (input, init) => fetch(input, init));
    await denied.createSession(`ui-noconsent-${Date.now()}`, false);
    const deniedApp = new App(root, denied);
    await deniedApp.showTutors();
    await until(() => root.querySelector('.consent-panel') !== null, 'consent screen');
    expect(root.querySelector('.consent-panel')).not.toBeNull();
  });
});
