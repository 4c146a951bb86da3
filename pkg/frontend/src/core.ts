import { spawnSync } from "node:child_process";

import { FormulaError } from "./types.js";
import type { FormulaInfo } from "./types.js";

export function pythonInterpreter(override?: string): string {
  return override ?? process.env.STLMON_PYTHON ?? "python3";
}

export function coreArgs(sub: string[]): string[] {
  return ["-m", "stlmon", ...sub];
}

/**
 * Parse a formula through the core's `check --json` interface.
 *
 * Returns the canonical text, temporal depth and free variables; throws
 * {@link FormulaError} carrying line/column on bad syntax.
 */
export function parseFormula(text: string, python?: string): FormulaInfo {
  const proc = spawnSync(
    pythonInterpreter(python),
    coreArgs(["check", "--formula", text, "--json"]),
    { encoding: "utf-8" },
  );
  if (proc.error) {
    throw new FormulaError(`failed to invoke the stlmon core: ${proc.error.message}`);
  }
  let payload: any;
  try {
    payload = JSON.parse(proc.stdout);
  } catch {
    throw new FormulaError(
      `unexpected core output (exit ${proc.status}): ${proc.stderr || proc.stdout}`,
    );
  }
  if (proc.status !== 0 || payload.error) {
    const err = payload.error ?? { message: "unknown parse error" };
    throw new FormulaError(err.message, err.line, err.column, err.expected);
  }
  return {
    canonical: payload.canonical,
    temporalDepth: payload.temporal_depth,
    freeVariables: payload.free_variables,
  };
}
