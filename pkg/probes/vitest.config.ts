import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    // The equivalence suite trains a model and replays scenarios through
    // the Python CLI; well beyond the default 5s budget.
    testTimeout: 120_000,
    hookTimeout: 180_000,
  },
});
