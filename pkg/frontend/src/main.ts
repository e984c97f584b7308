// Page bootstrap: builds the control strip and the five linked panels,
// and forwards every control change to the controller as one action.

import { ExplorerController } from "./controller.js";
import { ValidationError } from "./controller.js";
import {
  clearCanvas,
  drawEmptyState,
  drawHeatmap,
  drawHistogram,
  drawRaster,
} from "./draw.js";
import type { SampleRequest } from "./types.js";

const serviceUrl =
  new URLSearchParams(location.search).get("service") ??
  "http://127.0.0.1:8765";

const controller = new ExplorerController(serviceUrl);

const app = document.getElementById("app");
if (!app) throw new Error("missing #app mount point");

app.innerHTML = `
  <div id="banner" class="banner" hidden></div>
  <div id="notice" class="notice" hidden></div>
  <header class="controls">
    <fieldset>
      <legend>dataset</legend>
      <input id="path" type="text" placeholder="server-local path to a point file" size="34">
      <button id="load">load</button>
      <button id="reset">reset</button>
      <span id="counts" class="counts"></span>
    </fieldset>
    <fieldset>
      <legend>sampling</legend>
      <label>method
        <select id="method">
          <option value="none">none</option>
          <option value="uniform">uniform</option>
          <option value="nonuniform">non-uniform</option>
        </select>
      </label>
      <label id="ratio-box" hidden>ratio
        <input id="ratio" type="range" min="0" max="100" value="100" step="1">
        <span id="ratio-value">100%</span>
      </label>
      <label id="levels-box" hidden>levels
        <select id="levels-mode">
          <option value="auto">auto</option>
          <option value="manual">manual</option>
        </select>
        <input id="levels" type="number" min="1" value="8" hidden>
      </label>
      <label>seed <input id="seed" type="number" min="0" value="0"></label>
    </fieldset>
    <fieldset>
      <legend>density filter</legend>
      <label>kind
        <select id="filter-kind">
          <option value="data">data</option>
          <option value="represented">represented</option>
        </select>
      </label>
      <label>min <input id="filter-min" type="number" min="0" placeholder="0"></label>
      <label>max <input id="filter-max" type="number" min="0" placeholder="none"></label>
      <button id="filter-apply">apply</button>
    </fieldset>
  </header>
  <main class="panels">
    <section><h2>raster</h2><canvas id="raster"></canvas></section>
    <section><h2>data density</h2><canvas id="heat-data"></canvas></section>
    <section><h2>represented density</h2><canvas id="heat-represented"></canvas></section>
    <section><h2>data histogram</h2><canvas id="hist-data" width="360" height="160"></canvas></section>
    <section><h2>represented histogram</h2><canvas id="hist-represented" width="360" height="160"></canvas></section>
  </main>
  <footer>
    <span id="tooltip" class="tooltip"></span>
    <span id="plan" class="plan"></span>
  </footer>
`;

const el = <T extends HTMLElement>(id: string): T =>
  document.getElementById(id) as T;

const banner = el<HTMLDivElement>("banner");
const notice = el<HTMLDivElement>("notice");
const methodSel = el<HTMLSelectElement>("method");
const ratioBox = el<HTMLLabelElement>("ratio-box");
const ratioInput = el<HTMLInputElement>("ratio");
const ratioValue = el<HTMLSpanElement>("ratio-value");
const levelsBox = el<HTMLLabelElement>("levels-box");
const levelsMode = el<HTMLSelectElement>("levels-mode");
const levelsInput = el<HTMLInputElement>("levels");
const seedInput = el<HTMLInputElement>("seed");

function currentSampleRequest(): SampleRequest {
  const method = methodSel.value as SampleRequest["method"];
  const seed = Number(seedInput.value || "0");
  if (method === "uniform") {
    return { method, ratio: Number(ratioInput.value) / 100, seed };
  }
  if (method === "nonuniform") {
    const levels =
      levelsMode.value === "auto" ? ("auto" as const) : Number(levelsInput.value);
    return { method, levels, seed };
  }
  return { method, seed };
}

function showValidation(message: string): void {
  notice.textContent = message;
  notice.hidden = false;
}

function act(run: () => Promise<boolean>): void {
  try {
    notice.hidden = true;
    void run();
  } catch (error) {
    if (error instanceof ValidationError) {
      showValidation(error.message); // rejected before any request
      return;
    }
    throw error;
  }
}

function syncControlVisibility(): void {
  ratioBox.hidden = methodSel.value !== "uniform";
  levelsBox.hidden = methodSel.value !== "nonuniform";
  levelsInput.hidden = levelsMode.value !== "manual";
}

const resample = (): void => act(() => controller.sample(currentSampleRequest()));

methodSel.addEventListener("change", () => {
  syncControlVisibility();
  resample();
});
ratioInput.addEventListener("input", () => {
  ratioValue.textContent = `${ratioInput.value}%`;
});
ratioInput.addEventListener("change", resample);
levelsMode.addEventListener("change", () => {
  syncControlVisibility();
  resample();
});
levelsInput.addEventListener("change", resample);
seedInput.addEventListener("change", resample);

el<HTMLButtonElement>("load").addEventListener("click", () =>
  act(() => controller.load({ path: el<HTMLInputElement>("path").value }))
);
el<HTMLButtonElement>("reset").addEventListener("click", () =>
  act(() => controller.reset())
);
el<HTMLButtonElement>("filter-apply").addEventListener("click", () => {
  const minRaw = el<HTMLInputElement>("filter-min").value;
  const maxRaw = el<HTMLInputElement>("filter-max").value;
  act(() =>
    controller.applyFilter({
      kind: el<HTMLSelectElement>("filter-kind").value as "data" | "represented",
      min: minRaw === "" ? 0 : Number(minRaw),
      max: maxRaw === "" ? null : Number(maxRaw),
    })
  );
});

function hookHover(canvas: HTMLCanvasElement, cellPx: () => number): void {
  canvas.addEventListener("mousemove", (event) => {
    const rect = canvas.getBoundingClientRect();
    const size = cellPx();
    if (size <= 0) return;
    controller.setHover(
      Math.floor((event.clientY - rect.top) / size),
      Math.floor((event.clientX - rect.left) / size)
    );
  });
  canvas.addEventListener("mouseleave", () => controller.clearHover());
}

let heatCellPx = 8;
hookHover(el<HTMLCanvasElement>("heat-data"), () => heatCellPx);
hookHover(el<HTMLCanvasElement>("heat-represented"), () => heatCellPx);

function render(): void {
  const panels = controller.getPanels(720, 720);

  banner.hidden = panels.banner === null;
  if (panels.banner !== null) banner.textContent = panels.banner;
  const noticeText = controller.getNotice();
  notice.hidden = noticeText === null;
  if (noticeText !== null) notice.textContent = noticeText;

  const rasterCanvas = el<HTMLCanvasElement>("raster");
  const heatDataCanvas = el<HTMLCanvasElement>("heat-data");
  const heatReprCanvas = el<HTMLCanvasElement>("heat-represented");
  const histDataCanvas = el<HTMLCanvasElement>("hist-data");
  const histReprCanvas = el<HTMLCanvasElement>("hist-represented");

  if (!panels.loaded) {
    const text = panels.banner !== null ? "" : "no dataset loaded";
    for (const canvas of [rasterCanvas, heatDataCanvas, heatReprCanvas]) {
      canvas.width = 360;
      canvas.height = 160;
      if (text) drawEmptyState(canvas, text);
      else clearCanvas(canvas);
    }
    drawEmptyState(histDataCanvas, text);
    drawEmptyState(histReprCanvas, text);
    el<HTMLSpanElement>("counts").textContent = "";
    el<HTMLSpanElement>("plan").textContent = "";
    el<HTMLSpanElement>("tooltip").textContent = "";
    return;
  }

  if (panels.raster) {
    if (panels.empty) drawEmptyState(rasterCanvas, "no points in range");
    else drawRaster(rasterCanvas, panels.raster);
  }
  if (panels.heatData && panels.heatRepresented) {
    heatCellPx = Math.max(
      3,
      Math.floor(360 / Math.max(panels.heatData.rows, panels.heatData.cols))
    );
    drawHeatmap(heatDataCanvas, panels.heatData, heatCellPx, tooltipCell());
    drawHeatmap(heatReprCanvas, panels.heatRepresented, heatCellPx, tooltipCell());
  }
  if (panels.histData) drawHistogram(histDataCanvas, panels.histData);
  if (panels.histRepresented) drawHistogram(histReprCanvas, panels.histRepresented);

  const counts = panels.counts;
  el<HTMLSpanElement>("counts").textContent = counts
    ? `${counts.working.toLocaleString()} of ${counts.loaded.toLocaleString()} points`
    : "";

  const levels = panels.planLevels;
  el<HTMLSpanElement>("plan").textContent = levels
    ? `plan: ${levels.length} levels, targets ${levels
        .map((l) => l.target_rd)
        .join(", ")}`
    : "";

  const tip = controller.getTooltip();
  el<HTMLSpanElement>("tooltip").textContent = tip
    ? `SA (${tip.row}, ${tip.col}): data ${tip.data}, represented ${tip.represented}`
    : "";
}

function tooltipCell(): { row: number; col: number } | null {
  const tip = controller.getTooltip();
  return tip ? { row: tip.row, col: tip.col } : null;
}

controller.subscribe(render);
syncControlVisibility();
render();
void controller.sync();
