// Shapes of the documents the densify service returns. The UI never
// computes densities itself; everything displayed comes from these.

export type GridKind = "data" | "represented";

export type SamplingMethod = "none" | "uniform" | "nonuniform";

export interface GridConfigDoc {
  screen_width: number;
  screen_height: number;
  sa_side: number;
}

export interface GridDoc {
  config: GridConfigDoc;
  kind: GridKind;
  values: number[][];
}

export interface HistogramEntry {
  density: number;
  sa_count: number;
}

export interface HistogramDoc {
  entries: HistogramEntry[];
}

export interface PlanLevelDoc {
  density_lo: number;
  density_hi: number;
  sa_count: number;
  target_rd: number;
}

export interface PlanDoc {
  seed: number;
  levels: PlanLevelDoc[];
  entries: { row: number; col: number; count: number; retain: number }[];
}

export interface MetaDoc {
  source: string;
  point_count: number;
  x_column: string;
  y_column: string;
  x_min: number;
  x_max: number;
  y_min: number;
  y_max: number;
  skipped_rows: number;
}

export interface FilterDoc {
  kind: GridKind;
  min: number;
  max: number | null;
}

export interface SettingsDoc {
  method: SamplingMethod;
  ratio: number | null;
  levels: number | "auto" | null;
  seed: number;
  filter: FilterDoc | null;
}

export interface StateDoc {
  loaded: boolean;
  config: GridConfigDoc;
  settings: SettingsDoc;
  meta: MetaDoc | null;
  viewport: { x_min: number; x_max: number; y_min: number; y_max: number } | null;
  counts: { loaded: number; working: number } | null;
  plan: PlanDoc | null;
  grids?: { data: GridDoc; represented: GridDoc };
  histograms?: { data: HistogramDoc; represented: HistogramDoc };
}

export interface LoadRequest {
  path: string;
  x_column?: string;
  y_column?: string;
  delimiter?: string;
}

export interface SampleRequest {
  method: SamplingMethod;
  ratio?: number;
  levels?: number | "auto";
  seed?: number;
}

export interface FilterRequest {
  kind?: GridKind;
  min: number;
  max?: number | null;
}
