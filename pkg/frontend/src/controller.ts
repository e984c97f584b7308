// Single-session control flow. Every control action issues exactly one
// mutating request; repeating the identical action is a no-op, and
// actions arriving while one is in flight are queued, never raced.

import { ServiceClient, ServiceError, isUnreachable } from "./api.js";
import { parsePgm } from "./pgm.js";
import type { Graymap } from "./pgm.js";
import { buildPanels, panelFingerprint, tooltipAt } from "./panels.js";
import type { PanelSet, SaTooltip } from "./panels.js";
import type {
  FilterRequest,
  LoadRequest,
  SampleRequest,
  StateDoc,
} from "./types.js";

export class ValidationError extends Error {
  constructor(message: string) {
    super(message);
    this.name = "ValidationError";
  }
}

export type ControlAction =
  | { action: "load"; body: LoadRequest }
  | { action: "sample"; body: SampleRequest }
  | { action: "filter"; body: FilterRequest }
  | { action: "reset" };

type Listener = () => void;

function checkSample(body: SampleRequest): void {
  if (!["none", "uniform", "nonuniform"].includes(body.method)) {
    throw new ValidationError(`unknown sampling method: ${body.method}`);
  }
  if (body.method === "uniform") {
    const ratio = body.ratio;
    if (typeof ratio !== "number" || !(ratio >= 0 && ratio <= 1)) {
      throw new ValidationError("ratio must be between 0 and 1");
    }
  }
  if (body.method === "nonuniform" && body.levels !== undefined) {
    const levels = body.levels;
    if (levels !== "auto" && (!Number.isInteger(levels) || levels < 1)) {
      throw new ValidationError('levels must be a positive integer or "auto"');
    }
  }
  if (body.seed !== undefined && (!Number.isInteger(body.seed) || body.seed < 0)) {
    throw new ValidationError("seed must be a non-negative integer");
  }
}

function checkFilter(body: FilterRequest): void {
  if (!Number.isInteger(body.min) || body.min < 0) {
    throw new ValidationError("min must be a non-negative integer");
  }
  if (body.max !== undefined && body.max !== null) {
    if (!Number.isInteger(body.max) || body.max < body.min) {
      throw new ValidationError("max must be an integer >= min");
    }
  }
  if (body.kind !== undefined && !["data", "represented"].includes(body.kind)) {
    throw new ValidationError(`unknown grid kind: ${body.kind}`);
  }
}

function checkLoad(body: LoadRequest): void {
  if (typeof body.path !== "string" || body.path.trim() === "") {
    throw new ValidationError("a dataset path is required");
  }
}

export class ExplorerController {
  readonly client: ServiceClient;

  private doc: StateDoc | null = null;
  private rasterBytes: Uint8Array | null = null;
  private graymap: Graymap | null = null;
  /** Fatal: service unreachable. Panels are cleared while set. */
  private banner: string | null = null;
  /** Non-fatal: the service rejected a request; the scene stays. */
  private notice: string | null = null;
  private hovered: { row: number; col: number } | null = null;

  private tail: Promise<unknown> = Promise.resolve();
  private lastSignature: string | null = null;
  private listeners: Listener[] = [];

  constructor(baseUrl: string) {
    this.client = new ServiceClient(baseUrl);
  }

  subscribe(listener: Listener): () => void {
    this.listeners.push(listener);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }

  private emit(): void {
    for (const listener of this.listeners) listener();
  }

  getBanner(): string | null {
    return this.banner;
  }

  getNotice(): string | null {
    return this.notice;
  }

  getDoc(): StateDoc | null {
    return this.doc;
  }

  getPanels(availWidth = 640, availHeight = 640): PanelSet {
    return buildPanels(
      this.doc,
      this.graymap,
      this.banner,
      availWidth,
      availHeight
    );
  }

  /** Everything the panels show, for replay comparison. */
  fingerprint(): string {
    return panelFingerprint(this.getPanels(), this.rasterBytes);
  }

  setHover(row: number, col: number): void {
    this.hovered = { row, col };
    this.emit();
  }

  clearHover(): void {
    if (this.hovered === null) return;
    this.hovered = null;
    this.emit();
  }

  getTooltip(): SaTooltip | null {
    if (this.hovered === null) return null;
    return tooltipAt(this.doc, this.hovered.row, this.hovered.col);
  }

  /**
   * Rebuild panels from a service whose session may already hold state,
   * e.g. after a page reload. Read-only; does not touch the guard.
   */
  async sync(): Promise<boolean> {
    try {
      const meta = await this.client.meta();
      if (!meta.loaded) {
        this.doc = meta;
        this.rasterBytes = null;
        this.graymap = null;
        this.banner = null;
        this.emit();
        return true;
      }
      const [data, represented, histData, histRepresented, bytes] =
        await Promise.all([
          this.client.grid("data"),
          this.client.grid("represented"),
          this.client.histogram("data"),
          this.client.histogram("represented"),
          this.client.raster(),
        ]);
      this.doc = {
        ...meta,
        grids: { data, represented },
        histograms: { data: histData, represented: histRepresented },
      };
      this.applyRaster(bytes);
      this.banner = null;
      this.emit();
      return true;
    } catch (error) {
      this.handleFailure(error);
      return false;
    }
  }

  load(body: LoadRequest): Promise<boolean> {
    checkLoad(body);
    return this.mutate("load", body, () => this.client.load(body));
  }

  sample(body: SampleRequest): Promise<boolean> {
    checkSample(body);
    return this.mutate("sample", body, () => this.client.sample(body));
  }

  applyFilter(body: FilterRequest): Promise<boolean> {
    checkFilter(body);
    return this.mutate("filter", body, () => this.client.filter(body));
  }

  reset(): Promise<boolean> {
    return this.mutate("reset", {}, () => this.client.reset());
  }

  /** Run a scripted action sequence through the normal queue. */
  async replay(actions: ControlAction[]): Promise<string> {
    for (const step of actions) {
      if (step.action === "load") await this.load(step.body);
      else if (step.action === "sample") await this.sample(step.body);
      else if (step.action === "filter") await this.applyFilter(step.body);
      else await this.reset();
    }
    return this.fingerprint();
  }

  private mutate(
    route: string,
    body: unknown,
    exec: () => Promise<StateDoc>
  ): Promise<boolean> {
    const signature = `${route} ${JSON.stringify(body)}`;
    const run = this.tail.then(
      () => this.runMutation(signature, exec),
      () => this.runMutation(signature, exec)
    );
    this.tail = run;
    return run;
  }

  private async runMutation(
    signature: string,
    exec: () => Promise<StateDoc>
  ): Promise<boolean> {
    if (signature === this.lastSignature && this.banner === null) {
      return true; // identical to the action already applied
    }
    try {
      const doc = await exec();
      const bytes = doc.loaded ? await this.client.raster() : null;
      // apply the response atomically: document and raster swap together
      this.doc = doc;
      this.applyRaster(bytes);
      this.banner = null;
      this.notice = null;
      this.lastSignature = signature;
      this.emit();
      return true;
    } catch (error) {
      this.handleFailure(error);
      return false;
    }
  }

  private applyRaster(bytes: Uint8Array | null): void {
    this.rasterBytes = bytes;
    this.graymap = bytes ? parsePgm(bytes) : null;
  }

  private handleFailure(error: unknown): void {
    if (isUnreachable(error)) {
      // no stale data behind the banner
      this.doc = null;
      this.rasterBytes = null;
      this.graymap = null;
      this.banner = "service unreachable";
      this.lastSignature = null;
    } else if (error instanceof ServiceError) {
      this.notice = error.message;
    } else {
      this.notice = error instanceof Error ? error.message : String(error);
    }
    this.emit();
  }
}
