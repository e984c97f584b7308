// Thin typed client for the densify service. Every mutation returns the
// full refreshed state document; the raster image is the one thing
// fetched separately because it is binary.

import type {
  FilterRequest,
  GridDoc,
  GridKind,
  HistogramDoc,
  LoadRequest,
  SampleRequest,
  StateDoc,
} from "./types.js";

export class ServiceError extends Error {
  /** HTTP status, or 0 when the service could not be reached at all. */
  readonly status: number;
  /** Name of the offending request field, when the service says. */
  readonly field: string | null;

  constructor(status: number, message: string, field: string | null = null) {
    super(message);
    this.name = "ServiceError";
    this.status = status;
    this.field = field;
  }
}

export function isUnreachable(error: unknown): boolean {
  return error instanceof ServiceError && error.status === 0;
}

async function errorFrom(response: Response): Promise<ServiceError> {
  let message = `service error (${response.status})`;
  let field: string | null = null;
  try {
    const body = await response.json();
    if (typeof body.error === "string") message = body.error;
    if (typeof body.field === "string") field = body.field;
  } catch {
    // non-JSON error body, keep the status line
  }
  return new ServiceError(response.status, message, field);
}

export class ServiceClient {
  readonly baseUrl: string;

  constructor(baseUrl: string) {
    this.baseUrl = baseUrl.replace(/\/+$/, "");
  }

  private async request(path: string, init?: RequestInit): Promise<Response> {
    let response: Response;
    try {
      response = await fetch(this.baseUrl + path, init);
    } catch {
      throw new ServiceError(0, "service unreachable");
    }
    if (!response.ok) {
      throw await errorFrom(response);
    }
    return response;
  }

  private async getJson<T>(path: string): Promise<T> {
    const response = await this.request(path);
    return (await response.json()) as T;
  }

  private async postJson<T>(path: string, body: unknown): Promise<T> {
    const response = await this.request(path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
    return (await response.json()) as T;
  }

  meta(): Promise<StateDoc> {
    return this.getJson<StateDoc>("/meta");
  }

  grid(kind: GridKind): Promise<GridDoc> {
    return this.getJson<GridDoc>(`/grid?kind=${kind}`);
  }

  histogram(kind: GridKind): Promise<HistogramDoc> {
    return this.getJson<HistogramDoc>(`/histogram?kind=${kind}`);
  }

  async raster(): Promise<Uint8Array> {
    const response = await this.request("/raster");
    return new Uint8Array(await response.arrayBuffer());
  }

  load(body: LoadRequest): Promise<StateDoc> {
    return this.postJson<StateDoc>("/load", body);
  }

  sample(body: SampleRequest): Promise<StateDoc> {
    return this.postJson<StateDoc>("/sample", body);
  }

  filter(body: FilterRequest): Promise<StateDoc> {
    return this.postJson<StateDoc>("/filter", body);
  }

  reset(): Promise<StateDoc> {
    return this.postJson<StateDoc>("/reset", {});
  }
}
