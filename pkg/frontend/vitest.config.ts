import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    include: ["tests/**/*.test.ts"],
    // the end-to-end suite spawns service processes and loads a 160k
    // point dataset, so give it room
    testTimeout: 120_000,
    hookTimeout: 60_000,
  },
});
