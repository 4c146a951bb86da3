export { parseFormula } from "./core.js";
export { Monitor } from "./monitor.js";
export { formatNumber, renderEvent, renderVerdict } from "./render.js";
export { FormulaError, MonitorError } from "./types.js";
export type {
  AlgorithmTag,
  FormulaInfo,
  MonitorOptions,
  RobustnessInterval,
  SemanticsTag,
  ThreeValued,
  VerdictEvent,
  VerdictKind,
  VerdictValue,
} from "./types.js";
