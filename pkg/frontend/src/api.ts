/** Typed client for the aivi service; all errors surface as ApiError. */

import type {
  ComputeResult,
  ModelSummary,
  ScenarioRequest,
  SensitivityPayload,
  SensitivityRequest,
  ServiceError,
} from "./types.js";

export class ApiError extends Error {
  readonly status: number;
  readonly code: string;
  readonly path?: string;
  readonly missing?: string[];

  constructor(status: number, err: ServiceError) {
    super(err.message);
    this.name = "ApiError";
    this.status = status;
    this.code = err.code;
    this.path = err.path;
    this.missing = err.missing;
  }
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ExplorerApi {
  private readonly base: string;
  private readonly fetchFn: FetchLike;

  constructor(base = "", fetchFn: FetchLike = (...args) => fetch(...args)) {
    this.base = base.replace(/\/$/, "");
    this.fetchFn = fetchFn;
  }

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const res = await this.fetchFn(`${this.base}${path}`, init);
    const text = await res.text();
    let body: unknown = null;
    try {
      body = text ? JSON.parse(text) : null;
    } catch {
      body = null;
    }
    if (!res.ok) {
      const err = (body as { error?: ServiceError } | null)?.error;
      throw new ApiError(
        res.status,
        err ?? { code: "http_error", message: `request failed with status ${res.status}` },
      );
    }
    return body as T;
  }

  getModel(): Promise<ModelSummary> {
    return this.request<ModelSummary>("/api/v1/model");
  }

  compute(scenario: ScenarioRequest = {}): Promise<ComputeResult> {
    return this.request<ComputeResult>("/api/v1/compute", {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(scenario),
    });
  }

  sensitivity(request: SensitivityRequest = {}): Promise<SensitivityPayload> {
    return this.request<SensitivityPayload>("/api/v1/sensitivity", {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(request),
    });
  }
}
