import { defineConfig } from 'vitest/config';

export default defineConfig({
  test: {
    environment: 'happy-dom',
    // same origin as the spawned service so fetch is not CORS-blocked
    environmentOptions: { happyDOM: { url: 'http://127.0.0.1:8976' } },
    globalSetup: './tests/server.setup.ts',
    testTimeout: 30000,
    hookTimeout: 60000,
  },
});
