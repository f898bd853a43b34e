// UI state: a thin store over API payloads. Nothing here recomputes scores,
// ordering, or colors; reducers only swap in what the service returned.

import type { DocumentJson, JobJson, WellJson } from "./types";

export interface UiState {
  document: DocumentJson | null;
  activeInletId: string | null;
  job: JobJson | null;
  selectedRephrasingId: string | null;
  banner: string | null;
}

export type Listener = (state: UiState) => void;

export class Store {
  private state: UiState = {
    document: null,
    activeInletId: null,
    job: null,
    selectedRephrasingId: null,
    banner: null,
  };
  private listeners: Listener[] = [];

  get(): UiState {
    return this.state;
  }

  subscribe(listener: Listener): () => void {
    this.listeners.push(listener);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }

  private commit(patch: Partial<UiState>): void {
    this.state = { ...this.state, ...patch };
    for (const listener of this.listeners) listener(this.state);
  }

  setDocument(document: DocumentJson): void {
    const inletStillThere = document.inlets.some(
      (inlet) => inlet.id === this.state.activeInletId,
    );
    this.commit({
      document,
      activeInletId: inletStillThere ? this.state.activeInletId : null,
    });
  }

  setActiveInlet(inletId: string | null): void {
    this.commit({ activeInletId: inletId });
  }

  setJob(job: JobJson): void {
    // Stale guard: ignore snapshots for an inlet generation the document has
    // since moved past (the engine enforces this too; the UI just avoids
    // flashing outdated pools).
    const inlet = this.state.document?.inlets.find((i) => i.id === job.inletId);
    if (inlet && job.generation < inlet.generation) return;
    this.commit({ job });
  }

  selectRephrasing(id: string | null): void {
    this.commit({ selectedRephrasingId: id });
  }

  showBanner(message: string | null): void {
    this.commit({ banner: message });
  }

  wellById(wellId: string): WellJson | undefined {
    return this.state.document?.wells.find((w) => w.wellId === wellId);
  }

  colorOf(wellId: string): string {
    // Colors are assigned engine-side; unknown wells fall back to neutral.
    return this.wellById(wellId)?.color ?? "#999999";
  }
}
