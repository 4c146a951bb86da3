import { describe, expect, it } from "vitest";

import { FormulaError, parseFormula } from "../src/index.js";

describe("parseFormula", () => {
  it("reports the temporal depth of a bounded always", () => {
    const info = parseFormula("G[0, 10](x > 5)");
    expect(info.temporalDepth).toBe(10);
    expect(info.canonical).toBe("G[0, 10] (x > 5)");
    expect(info.freeVariables).toEqual([]);
  });

  it("exposes free variables", () => {
    const info = parseFormula("G[0, 5] (temp < $MAX_TEMP)");
    expect(info.freeVariables).toEqual(["MAX_TEMP"]);
  });

  it("throws a positioned error on bad syntax", () => {
    try {
      parseFormula("G[0,");
      expect.unreachable("should have thrown");
    } catch (err) {
      expect(err).toBeInstanceOf(FormulaError);
      expect((err as FormulaError).line).toBe(1);
      expect((err as FormulaError).column).toBeGreaterThanOrEqual(4);
    }
  });

  it("round-trips its own canonical output", () => {
    const first = parseFormula("pressure > 10.0 -> F[0, 2] valve_open == 1.0");
    const second = parseFormula(first.canonical);
    expect(second.canonical).toBe(first.canonical);
    expect(second.temporalDepth).toBe(first.temporalDepth);
  });
});
