import { spawnSync } from "node:child_process";
import { mkdtempSync, rmSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import { afterAll, describe, expect, it } from "vitest";

import { Monitor } from "../src/index.js";
import { pythonInterpreter } from "../src/core.js";

const here = dirname(fileURLToPath(import.meta.url));
const DRIVER = join(here, "helpers", "core_driver.py");

const SAMPLES = 10000;

/** Chirp rows shared byte-for-byte by both measurement paths. */
function chirpRows(count: number): string[] {
  const f0 = 0.1;
  const f1 = 1e-4;
  const T = count;
  const rows: string[] = [];
  for (let k = 0; k < count; k++) {
    const t = k;
    const phase = 2 * Math.PI * (f0 * t + ((f1 - f0) * t * t) / (2 * T));
    rows.push(`${t},x,${Math.sin(phase)}`);
  }
  return rows;
}

function corePerSample(rowsPath: string, formula: string, semantics: string): number {
  const proc = spawnSync(pythonInterpreter(), [DRIVER, rowsPath, formula, semantics], {
    encoding: "utf-8",
  });
  expect(proc.status, proc.stderr).toBe(0);
  return Number(proc.stdout.trim());
}

async function bindingPerSample(
  rows: string[],
  formula: string,
  semantics: string,
): Promise<number> {
  const m = new Monitor(formula, { semantics });
  const steps: Array<[string, number, number]> = rows.map((row) => {
    const [t, signal, value] = row.split(",");
    return [signal, Number(value), Number(t)];
  });
  // one small batch to absorb session warm-up before the timed run
  await m.updateBatch(steps.slice(0, 2).map(([s, v, t], i) => [s, v, t] as [string, number, number]));
  const started = process.hrtime.bigint();
  await m.updateBatch(steps.slice(2));
  const elapsed = Number(process.hrtime.bigint() - started) / 1e3; // microseconds
  await m.close();
  return elapsed / (steps.length - 2);
}

const tmp = mkdtempSync(join(tmpdir(), "stlmon-overhead-"));
afterAll(() => rmSync(tmp, { recursive: true, force: true }));

describe("binding overhead (criterion 9)", () => {
  it(
    "per-sample mean through the bindings stays within 2x of the core session",
    async () => {
      const rows = chirpRows(SAMPLES);
      const rowsPath = join(tmp, "chirp.csv");
      writeFileSync(rowsPath, rows.join("\n") + "\n");
      const cells: Array<[string, string]> = [
        ["(x < 0.5) && (x > -0.5)", "delayed-qualitative"],
        ["G[0, 1000] (x > 0.5 -> F[0, 100] (x < 0))", "delayed-qualitative"],
        ["(x < 0.5) U[0, 1000] (x < 0)", "eager-qualitative"],
      ];
      for (const [formula, semantics] of cells) {
        const core = corePerSample(rowsPath, formula, semantics);
        const viaBinding = await bindingPerSample(rows, formula, semantics);
        const ratio = viaBinding / core;
        console.log(
          `${formula} [${semantics}]: core ${core.toFixed(2)} us, ` +
            `binding ${viaBinding.toFixed(2)} us, ratio ${ratio.toFixed(2)}`,
        );
        expect(ratio, `${formula}: ${viaBinding} vs ${core}`).toBeLessThanOrEqual(2.0);
      }
    },
    { timeout: 300_000 },
  );
});
