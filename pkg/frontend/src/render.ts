import type { VerdictEvent } from "./types.js";

/** Minimal numeric display matching the core: 0 not 0.0, -inf/inf. */
export function formatNumber(x: number): string {
  if (x === Infinity) return "inf";
  if (x === -Infinity) return "-inf";
  if (Number.isInteger(x)) return String(x);
  return String(x);
}

/** Core display format, e.g. `t=0s: RobustnessInterval(-inf, -5.5)`. */
export function renderEvent(event: VerdictEvent): string {
  return `t=${formatNumber(event.time)}s: ${renderVerdict(event)}`;
}

export function renderVerdict(event: VerdictEvent): string {
  switch (event.kind) {
    case "boolean":
      return `Boolean(${event.value ? "true" : "false"})`;
    case "robustness":
      return `Robustness(${formatNumber(event.value as number)})`;
    case "three-valued":
      return `ThreeValued(${event.value})`;
    case "rosi": {
      const [lo, hi] = event.value as [number, number];
      return `RobustnessInterval(${formatNumber(lo)}, ${formatNumber(hi)})`;
    }
  }
}
