import { afterEach, describe, expect, it, vi } from "vitest";

import { ExplorerController, ValidationError } from "../src/controller.js";
import type { StateDoc } from "../src/types.js";

const PGM = (() => {
  const head = new TextEncoder().encode("P5\n2 2\n255\n");
  const out = new Uint8Array(head.length + 4);
  out.set(head);
  out.set([0, 255, 255, 0], head.length);
  return out;
})();

function docWithWorking(working: number): StateDoc {
  return {
    loaded: true,
    config: { screen_width: 8, screen_height: 8, sa_side: 4 },
    settings: { method: "none", ratio: null, levels: null, seed: 0, filter: null },
    meta: null,
    viewport: null,
    counts: { loaded: 100, working },
    plan: null,
    grids: {
      data: {
        config: { screen_width: 8, screen_height: 8, sa_side: 4 },
        kind: "data",
        values: [[working, 0], [0, 0]],
      },
      represented: {
        config: { screen_width: 8, screen_height: 8, sa_side: 4 },
        kind: "represented",
        values: [[1, 0], [0, 0]],
      },
    },
    histograms: {
      data: { entries: [{ density: working, sa_count: 1 }] },
      represented: { entries: [{ density: 1, sa_count: 1 }] },
    },
  };
}

interface MockService {
  log: string[];
  maxInFlight: number;
  failNetwork: boolean;
  reject400: boolean;
}

function installMockService(): MockService {
  const state: MockService = {
    log: [],
    maxInFlight: 0,
    failNetwork: false,
    reject400: false,
  };
  let inFlight = 0;
  let mutations = 0;

  vi.stubGlobal("fetch", async (url: string, init?: RequestInit) => {
    if (state.failNetwork) {
      throw new TypeError("fetch failed");
    }
    inFlight++;
    state.maxInFlight = Math.max(state.maxInFlight, inFlight);
    await new Promise((r) => setTimeout(r, 2));
    inFlight--;

    const path = new URL(url).pathname + new URL(url).search;
    state.log.push(`${init?.method ?? "GET"} ${path}`);

    if (state.reject400 && init?.method === "POST") {
      return new Response(
        JSON.stringify({ error: "ratio must be within [0, 1]", field: "ratio" }),
        { status: 400 }
      );
    }
    if (path === "/raster") {
      return new Response(PGM, { status: 200 });
    }
    if (init?.method === "POST") {
      mutations++;
      return new Response(JSON.stringify(docWithWorking(mutations)), {
        status: 200,
      });
    }
    return new Response(JSON.stringify(docWithWorking(mutations)), {
      status: 200,
    });
  });
  return state;
}

afterEach(() => {
  vi.unstubAllGlobals();
});

describe("request discipline", () => {
  it("issues exactly one request for a repeated identical action", async () => {
    const service = installMockService();
    const controller = new ExplorerController("http://service.test");

    await controller.sample({ method: "uniform", ratio: 0.2, seed: 1 });
    await controller.sample({ method: "uniform", ratio: 0.2, seed: 1 });
    await controller.sample({ method: "uniform", ratio: 0.2, seed: 1 });

    const posts = service.log.filter((l) => l === "POST /sample");
    expect(posts).toHaveLength(1);
  });

  it("re-issues the request when the action actually changed", async () => {
    const service = installMockService();
    const controller = new ExplorerController("http://service.test");

    await controller.sample({ method: "uniform", ratio: 0.2, seed: 1 });
    await controller.sample({ method: "uniform", ratio: 0.4, seed: 1 });
    await controller.sample({ method: "uniform", ratio: 0.2, seed: 1 });

    expect(service.log.filter((l) => l === "POST /sample")).toHaveLength(3);
  });

  it("queues overlapping actions instead of racing them", async () => {
    const service = installMockService();
    const controller = new ExplorerController("http://service.test");

    await Promise.all([
      controller.load({ path: "/tmp/points.csv" }),
      controller.sample({ method: "uniform", ratio: 0.5, seed: 0 }),
      controller.applyFilter({ min: 3 }),
    ]);

    expect(service.maxInFlight).toBe(1);
    const posts = service.log.filter((l) => l.startsWith("POST"));
    expect(posts).toEqual(["POST /load", "POST /sample", "POST /filter"]);
  });

  it("fetches the raster exactly once per applied mutation", async () => {
    const service = installMockService();
    const controller = new ExplorerController("http://service.test");

    await controller.load({ path: "/tmp/points.csv" });
    await controller.sample({ method: "nonuniform", levels: "auto", seed: 7 });
    await controller.sample({ method: "nonuniform", levels: "auto", seed: 7 });

    expect(service.log.filter((l) => l === "GET /raster")).toHaveLength(2);
  });
});

describe("client-side validation", () => {
  it("rejects an out-of-range ratio before any request", () => {
    const service = installMockService();
    const controller = new ExplorerController("http://service.test");

    expect(() => controller.sample({ method: "uniform", ratio: 1.5 })).toThrow(
      ValidationError
    );
    expect(() => controller.sample({ method: "uniform" })).toThrow(
      ValidationError
    );
    expect(service.log).toHaveLength(0);
  });

  it("rejects bad levels, seeds and filter ranges locally", () => {
    const service = installMockService();
    const controller = new ExplorerController("http://service.test");

    expect(() =>
      controller.sample({ method: "nonuniform", levels: 2.5 })
    ).toThrow(ValidationError);
    expect(() =>
      controller.sample({ method: "none", seed: -1 })
    ).toThrow(ValidationError);
    expect(() => controller.applyFilter({ min: -2 })).toThrow(ValidationError);
    expect(() => controller.applyFilter({ min: 5, max: 4 })).toThrow(
      ValidationError
    );
    expect(() => controller.load({ path: "  " })).toThrow(ValidationError);
    expect(service.log).toHaveLength(0);
  });
});

describe("failure handling", () => {
  it("raises the banner and drops stale panels when the service is down", async () => {
    const service = installMockService();
    const controller = new ExplorerController("http://service.test");

    await controller.load({ path: "/tmp/points.csv" });
    expect(controller.getPanels().loaded).toBe(true);

    service.failNetwork = true;
    const ok = await controller.sample({ method: "uniform", ratio: 0.5, seed: 0 });

    expect(ok).toBe(false);
    const panels = controller.getPanels();
    expect(panels.banner).toBe("service unreachable");
    expect(panels.loaded).toBe(false);
    expect(panels.heatData).toBeNull();
    expect(controller.getDoc()).toBeNull();
  });

  it("recovers once the service answers again", async () => {
    const service = installMockService();
    const controller = new ExplorerController("http://service.test");

    service.failNetwork = true;
    await controller.load({ path: "/tmp/points.csv" });
    expect(controller.getBanner()).not.toBeNull();

    service.failNetwork = false;
    await controller.load({ path: "/tmp/points.csv" });
    expect(controller.getBanner()).toBeNull();
    expect(controller.getPanels().loaded).toBe(true);
  });

  it("keeps the scene and surfaces a notice on a rejected request", async () => {
    const service = installMockService();
    const controller = new ExplorerController("http://service.test");

    await controller.load({ path: "/tmp/points.csv" });
    const before = controller.fingerprint();

    service.reject400 = true;
    const ok = await controller.sample({ method: "uniform", ratio: 0.9, seed: 0 });

    expect(ok).toBe(false);
    expect(controller.getNotice()).toMatch(/ratio/);
    expect(controller.getBanner()).toBeNull();
    expect(controller.fingerprint()).toBe(before);
  });
});

describe("hover", () => {
  it("exposes both densities of the hovered sample area", async () => {
    installMockService();
    const controller = new ExplorerController("http://service.test");
    await controller.load({ path: "/tmp/points.csv" });

    controller.setHover(0, 0);
    expect(controller.getTooltip()).toEqual({
      row: 0,
      col: 0,
      data: 1,
      represented: 1,
    });

    controller.clearHover();
    expect(controller.getTooltip()).toBeNull();
  });
});
