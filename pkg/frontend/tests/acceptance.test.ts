// End-to-end checks against a real service process. The explorer is
// exercised exactly the way the page drives it: control actions in,
// panel models out.

import { afterEach, describe, expect, it } from "vitest";

import { ExplorerController } from "../src/controller.js";
import type { ControlAction } from "../src/controller.js";
import {
  fixturePath,
  generateParcel,
  histogramVariance,
  startService,
} from "./helpers.js";
import type { LiveService } from "./helpers.js";

const SCENE_ARGS = ["--width", "40", "--height", "40", "--sa-side", "4"];
const REFERENCE = fixturePath("reference_scene.csv");

let services: LiveService[] = [];

async function spawnService(args: string[] = []): Promise<LiveService> {
  const service = await startService(args);
  services.push(service);
  return service;
}

afterEach(async () => {
  await Promise.all(services.map((s) => s.stop()));
  services = [];
});

describe("non-uniform sampling on the reference scene", () => {
  it("strictly flattens the represented-density histogram", async () => {
    const service = await spawnService(SCENE_ARGS);
    const controller = new ExplorerController(service.base);

    expect(await controller.load({ path: REFERENCE })).toBe(true);
    const before = controller.getPanels().histRepresented;
    expect(before).not.toBeNull();
    const varianceBefore = histogramVariance(before!.bars);

    expect(
      await controller.sample({ method: "nonuniform", levels: "auto", seed: 7 })
    ).toBe(true);
    const after = controller.getPanels().histRepresented;
    expect(after).not.toBeNull();
    const varianceAfter = histogramVariance(after!.bars);

    expect(varianceAfter).toBeLessThan(varianceBefore);
  });

  it("shows the dense corner's data density on hover", async () => {
    const service = await spawnService(SCENE_ARGS);
    const controller = new ExplorerController(service.base);
    await controller.load({ path: REFERENCE });

    controller.setHover(2, 6);
    const tip = controller.getTooltip();
    expect(tip).not.toBeNull();
    expect(tip!.data).toBe(49);
    expect(tip!.represented).toBe(12);
  });
});

describe("density filter on the clustered preset", () => {
  it("keeps exactly the sample areas at or above the cutoff", async () => {
    const parcel = await generateParcel();
    const service = await spawnService();
    const controller = new ExplorerController(service.base);

    await controller.load({ path: parcel });
    const beforeGrid = controller.getPanels().heatData;
    expect(beforeGrid).not.toBeNull();
    const before = beforeGrid!.values;

    await controller.applyFilter({ kind: "data", min: 810 });
    const panels = controller.getPanels();
    const after = panels.heatData!.values;

    let keptSas = 0;
    let keptPoints = 0;
    for (let r = 0; r < before.length; r++) {
      for (let c = 0; c < before[r].length; c++) {
        if (before[r][c] >= 810) {
          expect(after[r][c]).toBe(before[r][c]);
          keptSas++;
          keptPoints += before[r][c];
        } else {
          expect(after[r][c]).toBe(0);
        }
      }
    }
    expect(keptSas).toBeGreaterThan(0);
    expect(panels.counts!.working).toBe(keptPoints);
    expect(panels.counts!.working).toBeLessThan(panels.counts!.loaded);
  }, 180_000);
});

describe("scripted replay", () => {
  it("yields identical panel states across two runs with equal seeds", async () => {
    const script: ControlAction[] = [
      { action: "load", body: { path: REFERENCE } },
      { action: "sample", body: { method: "uniform", ratio: 0.5, seed: 3 } },
      { action: "sample", body: { method: "nonuniform", levels: "auto", seed: 7 } },
      { action: "filter", body: { kind: "represented", min: 2 } },
    ];

    const first = await spawnService(SCENE_ARGS);
    const second = await spawnService(SCENE_ARGS);

    const a = await new ExplorerController(first.base).replay(script);
    const b = await new ExplorerController(second.base).replay(script);

    expect(a).toBe(b);
    expect(a).toContain('"loaded":true');
  });

  it("keeps the scene reproducible after a reset in the middle", async () => {
    const service = await spawnService(SCENE_ARGS);
    const controller = new ExplorerController(service.base);

    const run = async () =>
      controller.replay([
        { action: "load", body: { path: REFERENCE } },
        { action: "sample", body: { method: "nonuniform", levels: 12, seed: 11 } },
        { action: "reset" },
        { action: "sample", body: { method: "uniform", ratio: 0.25, seed: 4 } },
      ]);

    const a = await run();
    const b = await run();
    expect(a).toBe(b);
  });
});
