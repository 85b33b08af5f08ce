import { dirname, join, resolve } from "node:path";
import { fileURLToPath } from "node:url";

/** Repository root, two levels above the compiled dist/tests directory. */
export function repoRoot(): string {
  // compiled location: <root>/frontend/dist/tests/helpers.js
  return resolve(dirname(fileURLToPath(import.meta.url)), "..", "..", "..");
}

/** Environment for spawning the primary pipeline's CLI. */
export function pythonEnv(): NodeJS.ProcessEnv {
  return {
    ...process.env,
    PYTHONPATH: join(repoRoot(), "src"),
    ATDE_NO_COLOR: "1",
  };
}
