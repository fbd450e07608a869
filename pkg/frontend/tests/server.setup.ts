// Spawns the real tutoring service for the smoke suite and tears it down.

import { spawn, ChildProcess } from 'node:child_process';
import { mkdtempSync, rmSync } from 'node:fs';
import { tmpdir } from 'node:os';
import { join } from 'node:path';

export const SERVER_PORT = 8976;
export const SERVER_URL = `http://127.0.0.1:${SERVER_PORT}`;

let child: ChildProcess | null = null;
let storageDir: string | null = null;

async function waitForReady(url: string, attempts = 60): Promise<void> {
  for (let i = 0; i < attempts; i++) {
    try {
      const response = await fetch(`${url}/api/tutors`);
      if (response.status === 401) return; // up, demanding auth as expected
    } catch {
      // not listening yet
    }
    await new Promise((resolve) => setTimeout(resolve, 500));
  }
  throw new Error('tutoring service did not come up');
}

export async function setup(): Promise<void> {
  storageDir = mkdtempSync(join(tmpdir(), 'algetutor-ui-'));
  child = spawn('python3', ['-m', 'algetutor.cli', 'serve'], {
    env: {
      ...process.env,
      ALGETUTOR_PORT: String(SERVER_PORT),
      ALGETUTOR_HOST: '127.0.0.1',
      ALGETUTOR_STORAGE_DIR: storageDir,
      ALGETUTOR_ADMIN_TOKEN: 'ui-smoke',
    },
    stdio: 'ignore',
  });
  await waitForReady(SERVER_URL);
}

export async function teardown(): Promise<void> {
  if (child) child.kill('SIGTERM');
  if (storageDir) rmSync(storageDir, { recursive: true, force: true });
}
