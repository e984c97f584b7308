// Pure view models for the five panels. Everything here is derived
// from service documents with no DOM or canvas involved, so the same
// code is exercised by the browser renderer and by the tests.

import { EMPTY_CELL, rankColors } from "./color.js";
import type { Graymap } from "./pgm.js";
import type {
  GridDoc,
  GridKind,
  HistogramDoc,
  PlanLevelDoc,
  SettingsDoc,
  StateDoc,
} from "./types.js";

export interface RasterPanel {
  width: number;
  height: number;
  /** Integer scale factor; the image is shown 1:1 or integer-zoomed. */
  zoom: number;
  pixels: Uint8Array;
}

export interface HeatmapPanel {
  kind: GridKind;
  rows: number;
  cols: number;
  values: number[][];
  /** Cell fill colors, assigned by density rank. */
  colors: string[][];
  distinct: number[];
}

export interface HistogramBar {
  density: number;
  saCount: number;
  /** Bar height as a fraction of the tallest bar. */
  fraction: number;
}

export interface HistogramPanel {
  kind: GridKind;
  bars: HistogramBar[];
  maxCount: number;
}

export interface SaTooltip {
  row: number;
  col: number;
  data: number;
  represented: number;
}

export interface PanelSet {
  /** Non-null when the service is unreachable; no stale panels then. */
  banner: string | null;
  loaded: boolean;
  /** Loaded, but the working set is empty. */
  empty: boolean;
  counts: { loaded: number; working: number } | null;
  settings: SettingsDoc | null;
  planLevels: PlanLevelDoc[] | null;
  raster: RasterPanel | null;
  heatData: HeatmapPanel | null;
  heatRepresented: HeatmapPanel | null;
  histData: HistogramPanel | null;
  histRepresented: HistogramPanel | null;
}

/** Largest integer zoom that fits the panel, never below 1:1. */
export function chooseZoom(
  availWidth: number,
  availHeight: number,
  imageWidth: number,
  imageHeight: number
): number {
  if (imageWidth <= 0 || imageHeight <= 0) return 1;
  const fit = Math.min(
    Math.floor(availWidth / imageWidth),
    Math.floor(availHeight / imageHeight)
  );
  return Math.max(1, fit);
}

export function buildRasterPanel(
  image: Graymap,
  availWidth: number,
  availHeight: number
): RasterPanel {
  return {
    width: image.width,
    height: image.height,
    zoom: chooseZoom(availWidth, availHeight, image.width, image.height),
    pixels: image.pixels,
  };
}

export function buildHeatmapPanel(grid: GridDoc): HeatmapPanel {
  const values = grid.values;
  const flat: number[] = [];
  for (const row of values) flat.push(...row);
  const byDensity = rankColors(flat);
  const colors = values.map((row) =>
    row.map((v) => byDensity.get(v) ?? EMPTY_CELL)
  );
  return {
    kind: grid.kind,
    rows: values.length,
    cols: values[0]?.length ?? 0,
    values,
    colors,
    distinct: [...byDensity.keys()],
  };
}

export function buildHistogramPanel(
  hist: HistogramDoc,
  kind: GridKind
): HistogramPanel {
  const maxCount = hist.entries.reduce((m, e) => Math.max(m, e.sa_count), 0);
  const bars = hist.entries.map((e) => ({
    density: e.density,
    saCount: e.sa_count,
    fraction: maxCount === 0 ? 0 : e.sa_count / maxCount,
  }));
  return { kind, bars, maxCount };
}

/** Both densities of one sample area, for the hover tooltip. */
export function tooltipAt(
  doc: StateDoc | null,
  row: number,
  col: number
): SaTooltip | null {
  if (!doc?.grids) return null;
  const data = doc.grids.data.values[row]?.[col];
  const represented = doc.grids.represented.values[row]?.[col];
  if (data === undefined || represented === undefined) return null;
  return { row, col, data, represented };
}

export function buildPanels(
  doc: StateDoc | null,
  raster: Graymap | null,
  banner: string | null,
  availWidth = 640,
  availHeight = 640
): PanelSet {
  const blank: PanelSet = {
    banner,
    loaded: false,
    empty: false,
    counts: null,
    settings: null,
    planLevels: null,
    raster: null,
    heatData: null,
    heatRepresented: null,
    histData: null,
    histRepresented: null,
  };
  if (banner !== null || doc === null) return blank;

  blank.settings = doc.settings;
  if (!doc.loaded || !doc.grids || !doc.histograms) return blank;

  return {
    banner: null,
    loaded: true,
    empty: (doc.counts?.working ?? 0) === 0,
    counts: doc.counts,
    settings: doc.settings,
    planLevels: doc.plan?.levels ?? null,
    raster: raster ? buildRasterPanel(raster, availWidth, availHeight) : null,
    heatData: buildHeatmapPanel(doc.grids.data),
    heatRepresented: buildHeatmapPanel(doc.grids.represented),
    histData: buildHistogramPanel(doc.histograms.data, "data"),
    histRepresented: buildHistogramPanel(
      doc.histograms.represented,
      "represented"
    ),
  };
}

function fnv1a(bytes: Uint8Array): string {
  let hash = 0x811c9dc5;
  for (let i = 0; i < bytes.length; i++) {
    hash ^= bytes[i];
    hash = Math.imul(hash, 0x01000193) >>> 0;
  }
  return hash.toString(16).padStart(8, "0");
}

/**
 * Stable serialization of everything the panels display, raster bytes
 * included. Two runs of the same scripted actions with equal seeds
 * must produce equal fingerprints.
 */
export function panelFingerprint(
  set: PanelSet,
  rasterBytes: Uint8Array | null
): string {
  return JSON.stringify({
    banner: set.banner,
    loaded: set.loaded,
    empty: set.empty,
    counts: set.counts,
    settings: set.settings,
    planLevels: set.planLevels,
    heatData: set.heatData && {
      values: set.heatData.values,
      colors: set.heatData.colors,
    },
    heatRepresented: set.heatRepresented && {
      values: set.heatRepresented.values,
      colors: set.heatRepresented.colors,
    },
    histData: set.histData?.bars,
    histRepresented: set.histRepresented?.bars,
    raster: rasterBytes ? fnv1a(rasterBytes) : null,
  });
}
