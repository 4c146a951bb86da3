/** Verdict domains mirrored as native values. */

export type SemanticsTag =
  | "delayed-quantitative"
  | "delayed-qualitative"
  | "eager-qualitative"
  | "rosi";

export type AlgorithmTag = "incremental" | "naive";

export type ThreeValued = "True" | "False" | "Unknown";

/** [lo, hi] robustness enclosure; infinities are native Infinity values. */
export type RobustnessInterval = [number, number];

export type VerdictKind = "boolean" | "robustness" | "three-valued" | "rosi";

export type VerdictValue = boolean | number | ThreeValued | RobustnessInterval;

export interface VerdictEvent {
  /** Evaluation time the verdict speaks about. */
  time: number;
  kind: VerdictKind;
  value: VerdictValue;
  /** Final verdicts are never refined; only RoSI emits non-final ones. */
  final: boolean;
}

export interface FormulaInfo {
  /** Canonical DSL text; re-parses to the same tree. */
  canonical: string;
  /** Temporal depth H in seconds: the future horizon verdicts wait for. */
  temporalDepth: number;
  /** Names of $-variables that must be bound when building a monitor. */
  freeVariables: string[];
}

export interface MonitorOptions {
  semantics?: SemanticsTag | string;
  algorithm?: AlgorithmTag | string;
  variables?: Record<string, number>;
  /** Python interpreter running the core; default env STLMON_PYTHON or python3. */
  python?: string;
}

export class FormulaError extends Error {
  constructor(
    message: string,
    readonly line?: number,
    readonly column?: number,
    readonly expected?: string,
  ) {
    super(message);
    this.name = "FormulaError";
  }
}

export class MonitorError extends Error {
  constructor(message: string) {
    super(message);
    this.name = "MonitorError";
  }
}
