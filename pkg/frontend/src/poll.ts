// Job polling. The server re-sorts the pool as wells complete, so each poll
// fetches the full ordered view (cursor 0) and replaces the previous one;
// incrementality shows up across polls as wells finish.

import type { Api } from "./api";
import type { JobJson } from "./types";

const sleep = (ms: number) => new Promise((resolve) => setTimeout(resolve, ms));

export async function* pollJob(
  api: Api,
  jobId: string,
  intervalMs = 150,
  maxPolls = 400,
): AsyncGenerator<JobJson> {
  for (let i = 0; i < maxPolls; i++) {
    const snapshot = await api.job(jobId, 0);
    yield snapshot;
    if (snapshot.done) return;
    await sleep(intervalMs);
  }
  throw new Error(`job ${jobId} did not finish within ${maxPolls} polls`);
}

export function pendingWells(job: JobJson): string[] {
  return Object.entries(job.wells)
    .filter(([, status]) => status === "pending")
    .map(([wellId]) => wellId)
    .sort();
}

export function failedWells(job: JobJson): Array<{ wellId: string; reason: string }> {
  return Object.entries(job.wells)
    .filter(([, status]) => status.startsWith("failed"))
    .map(([wellId, status]) => ({ wellId, reason: status.replace(/^failed:\s*/, "") }))
    .sort((a, b) => a.wellId.localeCompare(b.wellId));
}
