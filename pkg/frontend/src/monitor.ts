import { spawn } from "node:child_process";
import type { ChildProcessWithoutNullStreams } from "node:child_process";

import { coreArgs, parseFormula, pythonInterpreter } from "./core.js";
import { MonitorError } from "./types.js";
import type {
  FormulaInfo,
  MonitorOptions,
  ThreeValued,
  VerdictEvent,
  VerdictKind,
} from "./types.js";

function parseNumber(text: string): number {
  if (text === "inf") return Infinity;
  if (text === "-inf") return -Infinity;
  return Number(text);
}

function parseVerdictRow(line: string): VerdictEvent {
  const [time, kind, loOrValue, hi, final] = line.split(",");
  const base = { time: parseNumber(time), final: final === "true" };
  switch (kind as VerdictKind) {
    case "boolean":
      return { ...base, kind: "boolean", value: loOrValue === "true" };
    case "robustness":
      return { ...base, kind: "robustness", value: parseNumber(loOrValue) };
    case "three-valued": {
      const word = (loOrValue[0].toUpperCase() + loOrValue.slice(1)) as ThreeValued;
      return { ...base, kind: "three-valued", value: word };
    }
    case "rosi":
      return { ...base, kind: "rosi", value: [parseNumber(loOrValue), parseNumber(hi)] };
    default:
      throw new MonitorError(`unknown verdict kind in core output: ${line}`);
  }
}

interface PendingRow {
  row: number;
  events: VerdictEvent[];
  resolve: (events: VerdictEvent[]) => void;
  reject: (err: Error) => void;
}

/**
 * Online STL monitor backed by a long-lived core session.
 *
 * All monitoring state lives in the core process; this class only frames
 * rows over the session protocol and converts verdicts to native values.
 * One Monitor must not be driven from concurrent async contexts; awaiting
 * each call keeps the stream well-ordered.
 */
export class Monitor {
  readonly formula: FormulaInfo;
  private proc: ChildProcessWithoutNullStreams;
  private queue: PendingRow[] = [];
  private rowNo = 1; // the input header is row 1
  private residual = "";
  private sawHeader = false;
  private stderrText = "";
  private dead: Error | null = null;
  private closed = false;

  constructor(formula: string | FormulaInfo, options: MonitorOptions = {}) {
    this.formula =
      typeof formula === "string" ? parseFormula(formula, options.python) : formula;
    const args = coreArgs([
      "run",
      "--input",
      "-",
      "--output",
      "-",
      "--ack",
      "--formula",
      this.formula.canonical,
      "--semantics",
      normalizeSemantics(options.semantics ?? "delayed-quantitative"),
      "--algorithm",
      (options.algorithm ?? "incremental").toLowerCase(),
    ]);
    for (const [name, value] of Object.entries(options.variables ?? {})) {
      args.push("--var", `${name}=${value}`);
    }
    this.proc = spawn(pythonInterpreter(options.python), args, {
      stdio: ["pipe", "pipe", "pipe"],
    });
    this.proc.stdout.setEncoding("utf-8");
    this.proc.stderr.setEncoding("utf-8");
    this.proc.stdout.on("data", (chunk: string) => this.onData(chunk));
    this.proc.stderr.on("data", (chunk: string) => {
      this.stderrText += chunk;
    });
    this.proc.on("close", (code) => {
      if (code !== 0 && !this.dead) {
        this.fail(new MonitorError(`core session exited with ${code}: ${this.stderrText.trim()}`));
      }
    });
    this.proc.on("error", (err) => this.fail(new MonitorError(err.message)));
    this.proc.stdin.on("error", () => {
      /* surfaced through the close handler */
    });
    this.proc.stdin.write("time,signal,value\n");
  }

  private fail(err: Error): void {
    this.dead = err;
    for (const pending of this.queue.splice(0)) {
      pending.reject(err);
    }
  }

  private onData(chunk: string): void {
    this.residual += chunk;
    const lines = this.residual.split("\n");
    this.residual = lines.pop() ?? "";
    for (const line of lines) {
      if (!line) continue;
      if (!this.sawHeader) {
        this.sawHeader = true; // output CSV header
        continue;
      }
      if (line.startsWith("#error:")) {
        const rest = line.slice("#error:".length);
        const colon = rest.indexOf(":");
        const pending = this.queue.shift();
        pending?.reject(new MonitorError(rest.slice(colon + 1)));
        continue;
      }
      if (line.startsWith("#")) {
        const pending = this.queue.shift();
        pending?.resolve(pending.events);
        continue;
      }
      const pending = this.queue[0];
      if (pending) {
        pending.events.push(parseVerdictRow(line));
      }
    }
  }

  private writeRow(signal: string, value: number, timestamp: number): Promise<VerdictEvent[]> {
    if (this.dead) return Promise.reject(this.dead);
    if (this.closed) return Promise.reject(new MonitorError("monitor session is closed"));
    this.rowNo += 1;
    const promise = new Promise<VerdictEvent[]>((resolve, reject) => {
      this.queue.push({ row: this.rowNo, events: [], resolve, reject });
    });
    this.proc.stdin.write(`${timestamp},${signal},${value}\n`);
    return promise;
  }

  /**
   * Feed one (signal, value, timestamp) sample; resolves with the verdict
   * events it produced, each carrying its evaluation time and value.
   */
  update(signal: string, value: number, timestamp: number): Promise<VerdictEvent[]> {
    return this.writeRow(signal, value, timestamp);
  }

  /** Feed many samples pipelined; resolves with all events concatenated. */
  async updateBatch(steps: Array<[string, number, number]>): Promise<VerdictEvent[]> {
    const promises = steps.map(([signal, value, timestamp]) =>
      this.writeRow(signal, value, timestamp),
    );
    const chunks = await Promise.all(promises);
    return chunks.flat();
  }

  /** End the session and wait for the core to exit. */
  close(): Promise<void> {
    this.closed = true;
    return new Promise((resolve) => {
      if (this.proc.exitCode !== null) {
        resolve();
        return;
      }
      this.proc.on("close", () => resolve());
      this.proc.stdin.end();
    });
  }
}

function normalizeSemantics(tag: string): string {
  const key = tag.toLowerCase().replace(/[-_]/g, "");
  const map: Record<string, string> = {
    delayedquantitative: "delayed-quantitative",
    delayedqualitative: "delayed-qualitative",
    eagerqualitative: "eager-qualitative",
    rosi: "rosi",
  };
  const normalized = map[key];
  if (!normalized) throw new MonitorError(`unknown semantics tag ${tag}`);
  return normalized;
}
