// Typed client for the phraselette service. Every engine interaction in the
// UI goes through here; there are no other write paths.

import type { DocumentJson, InletJson, JobJson, PresetsJson, WellJson } from "./types";

export class ApiError extends Error {
  constructor(
    public status: number,
    public code: string,
    message: string,
  ) {
    super(message);
  }
}

export class Api {
  constructor(private baseUrl: string = "") {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await fetch(this.baseUrl + path, {
      headers: { "content-type": "application/json" },
      ...init,
    });
    const body = await response.json().catch(() => ({}));
    if (!response.ok) {
      const error = (body as { error?: { code?: string; message?: string } }).error;
      throw new ApiError(
        response.status,
        error?.code ?? "Error",
        error?.message ?? `request failed: ${response.status}`,
      );
    }
    return body as T;
  }

  createDocument(text: string): Promise<DocumentJson> {
    return this.request("/documents", { method: "POST", body: JSON.stringify({ text }) });
  }

  getDocument(id: string): Promise<DocumentJson> {
    return this.request(`/documents/${encodeURIComponent(id)}`);
  }

  createInlet(documentId: string, start: number, end: number): Promise<InletJson> {
    return this.request(`/documents/${encodeURIComponent(documentId)}/inlets`, {
      method: "POST",
      body: JSON.stringify({ start, end }),
    });
  }

  deleteInlet(inletId: string): Promise<{ deleted: string; revision: number }> {
    return this.request(`/inlets/${encodeURIComponent(inletId)}`, { method: "DELETE" });
  }

  presets(): Promise<PresetsJson> {
    return this.request("/wells/presets");
  }

  addWell(
    documentId: string,
    kind: string,
    promptDescription?: string,
    parameters?: Record<string, unknown>,
  ): Promise<WellJson> {
    return this.request(`/documents/${encodeURIComponent(documentId)}/wells`, {
      method: "POST",
      body: JSON.stringify({ kind, promptDescription, parameters: parameters ?? {} }),
    });
  }

  patchWell(
    wellId: string,
    patch: { promptDescription?: string; parameters?: Record<string, unknown> },
  ): Promise<WellJson> {
    return this.request(`/wells/${encodeURIComponent(wellId)}`, {
      method: "PATCH",
      body: JSON.stringify(patch),
    });
  }

  run(documentId: string, inletId: string, wellIds?: string[]): Promise<JobJson> {
    return this.request(
      `/documents/${encodeURIComponent(documentId)}/inlets/${encodeURIComponent(inletId)}/run`,
      { method: "POST", body: JSON.stringify(wellIds ? { wellIds } : {}) },
    );
  }

  job(jobId: string, cursor = 0): Promise<JobJson> {
    return this.request(`/jobs/${encodeURIComponent(jobId)}?cursor=${cursor}`);
  }

  accept(inletId: string, rephrasingId: string): Promise<DocumentJson> {
    return this.request(`/inlets/${encodeURIComponent(inletId)}/accept`, {
      method: "POST",
      body: JSON.stringify({ rephrasingId }),
    });
  }
}
