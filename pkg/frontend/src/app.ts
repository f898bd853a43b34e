// Application wiring: one store, one API client, four panes.

import { Api } from "./api";
import { createEditor, type Editor } from "./editor";
import { createPalette, type Palette } from "./palette";
import { pollJob } from "./poll";
import { createResults, type Results } from "./results";
import { Store } from "./state";

export interface App {
  element: HTMLElement;
  store: Store;
  editor: Editor;
  palette: Palette;
  results: Results;
  loadDocument(text: string): Promise<void>;
  runWells(wellIds?: string[]): Promise<void>;
  refreshDocument(): Promise<void>;
}

export function createApp(api: Api): App {
  const store = new Store();
  const root = document.createElement("div");
  root.className = "app";

  const banner = document.createElement("div");
  banner.className = "banner";
  banner.setAttribute("data-role", "banner");
  banner.style.display = "none";

  const editor = createEditor(api, store);
  const results = createResults(api, store);
  const palette = createPalette(api, store, () => refreshDocument());

  const runButton = document.createElement("button");
  runButton.textContent = "Run Wells";
  runButton.setAttribute("data-role", "run-wells");
  runButton.addEventListener("click", () => void runWells());

  async function refreshDocument(): Promise<void> {
    const current = store.get().document;
    if (!current) return;
    store.setDocument(await api.getDocument(current.id));
  }

  async function loadDocument(text: string): Promise<void> {
    store.setDocument(await api.createDocument(text));
  }

  async function runWells(wellIds?: string[]): Promise<void> {
    const state = store.get();
    if (!state.document || !state.activeInletId) {
      store.showBanner("Highlight a span and create an inlet first.");
      return;
    }
    const job = await api.run(state.document.id, state.activeInletId, wellIds);
    store.setJob(job);
    await refreshDocument(); // the run bumps the inlet generation
    for await (const snapshot of pollJob(api, job.jobId)) {
      store.setJob(snapshot);
    }
  }

  store.subscribe((state) => {
    banner.style.display = state.banner ? "" : "none";
    banner.textContent = state.banner ?? "";
    editor.render();
    palette.render();
    results.render();
  });

  root.append(banner, editor.element, runButton, palette.element, results.element);
  return { element: root, store, editor, palette, results, loadDocument, runWells, refreshDocument };
}
