import { afterEach, describe, expect, it } from "vitest";

import { Monitor, MonitorError, parseFormula, renderEvent } from "../src/index.js";

const PLANT_FORMULA =
  "(G[0, 5] (temp < $MAX_TEMP)) && (pressure > 10.0 -> F[0, 2] valve_open == 1.0)";

const monitors: Monitor[] = [];

function monitor(...args: ConstructorParameters<typeof Monitor>): Monitor {
  const m = new Monitor(...args);
  monitors.push(m);
  return m;
}

afterEach(async () => {
  await Promise.all(monitors.splice(0).map((m) => m.close()));
});

describe("golden scenario through the bindings (criterion 1)", () => {
  it("prints exactly t=0s: RobustnessInterval(-inf, -5.5)", async () => {
    const m = monitor(PLANT_FORMULA, {
      semantics: "Rosi",
      variables: { MAX_TEMP: 120.0 },
    });
    expect(await m.update("temp", 125.5, 0)).toEqual([]);
    expect(await m.update("pressure", 15.0, 0)).toEqual([]);
    const events = await m.update("valve_open", 1.0, 0);
    expect(events).toHaveLength(1);
    expect(events[0].time).toBe(0);
    expect(events[0].final).toBe(false);
    expect(events[0].value).toEqual([-Infinity, -5.5]);
    expect(renderEvent(events[0])).toBe("t=0s: RobustnessInterval(-inf, -5.5)");
  });
});

describe("monitor surface", () => {
  it("converts a partial always window to a native interval pair", async () => {
    const m = monitor("G[0, 10](x > 5)", { semantics: "Rosi" });
    const events = await m.update("x", 6.0, 0.5);
    expect(events).toEqual([
      { time: 0.5, kind: "rosi", value: [-Infinity, 1.0], final: false },
    ]);
  });

  it("rejects a non-increasing timestamp with a native error", async () => {
    const m = monitor("x > 0");
    await m.update("x", 1.0, 1.0);
    await expect(m.update("x", 2.0, 0.5)).rejects.toBeInstanceOf(MonitorError);
    // the session survives a row-level error
    const events = await m.update("x", 3.0, 2.0);
    expect(events).toEqual([
      { time: 2, kind: "robustness", value: 3, final: true },
    ]);
  });

  it("accepts a pre-parsed formula handle", async () => {
    const info = parseFormula("F[0, 2] (x > 0)");
    const m = monitor(info, { semantics: "eager-qualitative" });
    const events = await m.update("x", 4.0, 0);
    expect(events).toEqual([
      { time: 0, kind: "three-valued", value: "True", final: true },
    ]);
  });

  it("batch updates equal sequential updates", async () => {
    const steps: Array<[string, number, number]> = [
      ["x", 0.8, 0],
      ["x", -0.4, 1],
      ["x", 0.2, 2],
      ["x", 0.9, 3],
    ];
    const seq = monitor("G[0, 1] (x > 0)", { semantics: "delayed-quantitative" });
    const sequential = [];
    for (const [signal, value, t] of steps) {
      sequential.push(...(await seq.update(signal, value, t)));
    }
    const bat = monitor("G[0, 1] (x > 0)", { semantics: "delayed-quantitative" });
    const batched = await bat.updateBatch(steps);
    expect(batched).toEqual(sequential);
  });

  it("surfaces unbound variables as a session failure", async () => {
    const m = monitor("temp < $LIMIT");
    await expect(m.update("temp", 1.0, 0)).rejects.toBeInstanceOf(MonitorError);
  });
});
