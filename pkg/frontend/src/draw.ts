// Canvas painting. This is the only module that touches a 2D context;
// it consumes the pure panel models and draws them, nothing else.

import type { HeatmapPanel, HistogramPanel, RasterPanel } from "./panels.js";

const PANEL_BG = "#0d1117";
const BAR_FILL = "#4c9aff";
const AXIS_TEXT = "#8b949e";
const HIGHLIGHT = "#e6edf3";

export function clearCanvas(canvas: HTMLCanvasElement): void {
  const ctx = canvas.getContext("2d");
  if (!ctx) return;
  ctx.fillStyle = PANEL_BG;
  ctx.fillRect(0, 0, canvas.width, canvas.height);
}

export function drawEmptyState(canvas: HTMLCanvasElement, text: string): void {
  const ctx = canvas.getContext("2d");
  if (!ctx) return;
  ctx.fillStyle = PANEL_BG;
  ctx.fillRect(0, 0, canvas.width, canvas.height);
  ctx.fillStyle = AXIS_TEXT;
  ctx.font = "13px system-ui, sans-serif";
  ctx.textAlign = "center";
  ctx.textBaseline = "middle";
  ctx.fillText(text, canvas.width / 2, canvas.height / 2);
}

/** Active pixels white on dark, shown 1:1 or integer-zoomed. */
export function drawRaster(
  canvas: HTMLCanvasElement,
  panel: RasterPanel
): void {
  canvas.width = panel.width * panel.zoom;
  canvas.height = panel.height * panel.zoom;
  const ctx = canvas.getContext("2d");
  if (!ctx) return;

  const image = new ImageData(panel.width, panel.height);
  for (let i = 0; i < panel.pixels.length; i++) {
    const v = panel.pixels[i];
    const o = i * 4;
    image.data[o] = v;
    image.data[o + 1] = v;
    image.data[o + 2] = v;
    image.data[o + 3] = 255;
  }

  if (panel.zoom === 1) {
    ctx.putImageData(image, 0, 0);
    return;
  }
  // integer upscale with hard pixel edges
  const offscreen = document.createElement("canvas");
  offscreen.width = panel.width;
  offscreen.height = panel.height;
  offscreen.getContext("2d")?.putImageData(image, 0, 0);
  ctx.imageSmoothingEnabled = false;
  ctx.drawImage(offscreen, 0, 0, canvas.width, canvas.height);
}

export function drawHeatmap(
  canvas: HTMLCanvasElement,
  panel: HeatmapPanel,
  cellPx: number,
  hovered: { row: number; col: number } | null
): void {
  canvas.width = panel.cols * cellPx;
  canvas.height = panel.rows * cellPx;
  const ctx = canvas.getContext("2d");
  if (!ctx) return;

  for (let r = 0; r < panel.rows; r++) {
    for (let c = 0; c < panel.cols; c++) {
      ctx.fillStyle = panel.colors[r][c];
      ctx.fillRect(c * cellPx, r * cellPx, cellPx, cellPx);
    }
  }
  if (hovered && hovered.row < panel.rows && hovered.col < panel.cols) {
    ctx.strokeStyle = HIGHLIGHT;
    ctx.lineWidth = 1;
    ctx.strokeRect(
      hovered.col * cellPx + 0.5,
      hovered.row * cellPx + 0.5,
      cellPx - 1,
      cellPx - 1
    );
  }
}

export function drawHistogram(
  canvas: HTMLCanvasElement,
  panel: HistogramPanel
): void {
  const ctx = canvas.getContext("2d");
  if (!ctx) return;
  const w = canvas.width;
  const h = canvas.height;
  ctx.fillStyle = PANEL_BG;
  ctx.fillRect(0, 0, w, h);

  const bars = panel.bars;
  if (bars.length === 0) {
    drawEmptyState(canvas, "no occupied sample areas");
    return;
  }

  const labelSpace = 16;
  const chartH = h - labelSpace;
  const gap = 1;
  const barW = Math.max(1, (w - (bars.length - 1) * gap) / bars.length);

  ctx.fillStyle = BAR_FILL;
  for (let i = 0; i < bars.length; i++) {
    const barH = Math.max(bars[i].saCount > 0 ? 1 : 0, bars[i].fraction * chartH);
    ctx.fillRect(i * (barW + gap), chartH - barH, barW, barH);
  }

  ctx.fillStyle = AXIS_TEXT;
  ctx.font = "10px system-ui, sans-serif";
  ctx.textBaseline = "bottom";
  ctx.textAlign = "left";
  ctx.fillText(String(bars[0].density), 0, h - 2);
  ctx.textAlign = "right";
  ctx.fillText(String(bars[bars.length - 1].density), w, h - 2);
}
