// Test doubles around fetch: a scripted route table replaying recorded
// service responses, with every call captured for request-shape assertions.

import { vi } from "vitest";
import recordedJson from "./fixtures/recorded.json";
import type { DocumentJson, InletJson, JobJson, WellJson } from "../src/types";

export interface RecordedSteps {
  createDocument: DocumentJson;
  addThesaurus: WellJson;
  addReader: WellJson;
  addContext: WellJson;
  createInlet: InletJson;
  patchWordsVerbAdv: WellJson;
  presets: Record<string, string[]>;
  documentConfigured: DocumentJson;
  runJob: JobJson;
  jobDone: JobJson;
  patchContextBand: WellJson;
  acceptTarget: JobJson["rephrasings"][number];
  acceptResponse: DocumentJson;
  staleAccept: { status: number; body: unknown };
  overlapError: { status: number; body: unknown };
}

export const recorded = recordedJson as unknown as {
  poem: string;
  inletRange: [number, number];
  steps: RecordedSteps;
};

export interface CapturedCall {
  method: string;
  path: string;
  body: unknown;
}

export class FakeService {
  calls: CapturedCall[] = [];
  private wellsAdded = 0;
  private inletCreated = false;
  private accepted = false;
  private jobPolls = 0;

  private get steps(): RecordedSteps {
    return recorded.steps;
  }

  private documentNow(): DocumentJson {
    if (this.accepted) return this.steps.acceptResponse;
    if (this.inletCreated) return this.steps.documentConfigured;
    const added = [this.steps.addThesaurus, this.steps.addReader, this.steps.addContext];
    return {
      ...this.steps.createDocument,
      wells: [...this.steps.createDocument.wells, ...added.slice(0, this.wellsAdded)],
    };
  }

  handle(method: string, path: string, body: unknown): { status: number; body: unknown } {
    const steps = this.steps;
    if (method === "POST" && path === "/documents") {
      return { status: 200, body: steps.createDocument };
    }
    if (method === "POST" && /\/documents\/[^/]+\/wells$/.test(path)) {
      const responses = [steps.addThesaurus, steps.addReader, steps.addContext];
      return { status: 200, body: responses[this.wellsAdded++] };
    }
    if (method === "POST" && /\/documents\/[^/]+\/inlets$/.test(path)) {
      if (this.inletCreated) return this.steps.overlapError
        ? { status: 400, body: steps.overlapError.body }
        : { status: 400, body: {} };
      this.inletCreated = true;
      return { status: 200, body: steps.createInlet };
    }
    if (method === "GET" && /\/documents\/[^/]+$/.test(path)) {
      return { status: 200, body: this.documentNow() };
    }
    if (method === "GET" && path === "/wells/presets") {
      return { status: 200, body: steps.presets };
    }
    if (method === "PATCH" && path.startsWith("/wells/")) {
      const wellId = path.slice("/wells/".length);
      if (wellId === steps.patchContextBand.wellId &&
          (body as { parameters?: { band_min?: number } })?.parameters?.band_min !== undefined) {
        return { status: 200, body: steps.patchContextBand };
      }
      return { status: 200, body: steps.patchWordsVerbAdv };
    }
    if (method === "POST" && /\/run$/.test(path)) {
      return { status: 200, body: steps.runJob };
    }
    if (method === "GET" && path.startsWith("/jobs/")) {
      this.jobPolls += 1;
      return { status: 200, body: this.jobPolls === 1 ? steps.runJob : steps.jobDone };
    }
    if (method === "POST" && /\/accept$/.test(path)) {
      if (this.accepted) return { status: 409, body: steps.staleAccept.body };
      this.accepted = true;
      return { status: 200, body: steps.acceptResponse };
    }
    return { status: 404, body: { error: { code: "NotFound", message: path } } };
  }

  install(): void {
    vi.stubGlobal("fetch", async (url: string, init?: RequestInit) => {
      const method = init?.method ?? "GET";
      const [path] = url.split("?");
      const body = init?.body ? JSON.parse(init.body as string) : undefined;
      this.calls.push({ method, path, body });
      const result = this.handle(method, path, body);
      return new Response(JSON.stringify(result.body), {
        status: result.status,
        headers: { "content-type": "application/json" },
      });
    });
  }
}

/** A fetch stub answering from an ordered queue of [matcher, response]. */
export function queueFetch(
  queue: Array<{ match: RegExp; status?: number; body: unknown }>,
): CapturedCall[] {
  const calls: CapturedCall[] = [];
  vi.stubGlobal("fetch", async (url: string, init?: RequestInit) => {
    const method = init?.method ?? "GET";
    calls.push({
      method,
      path: url,
      body: init?.body ? JSON.parse(init.body as string) : undefined,
    });
    const index = queue.findIndex((entry) => entry.match.test(`${method} ${url}`));
    if (index < 0) throw new Error(`unexpected fetch: ${method} ${url}`);
    const [entry] = queue.splice(index, 1);
    return new Response(JSON.stringify(entry.body), {
      status: entry.status ?? 200,
      headers: { "content-type": "application/json" },
    });
  });
  return calls;
}
