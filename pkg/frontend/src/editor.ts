// The editor pane: document text with persistent inlet highlights. Selecting
// a span and choosing "Create Inlet" posts the character range; the engine
// owns all bounds/overlap validation. Text changes arrive only through API
// responses (accepting a rephrasing re-renders from the returned document).

import type { Api } from "./api";
import { ApiError } from "./api";
import type { Store } from "./state";

export interface Editor {
  element: HTMLElement;
  render(): void;
  /** Character-offset path used by the selection handler and by tests. */
  createInletFromOffsets(start: number, end: number): Promise<void>;
}

export function createEditor(api: Api, store: Store): Editor {
  const root = document.createElement("div");
  root.className = "editor";

  const textPane = document.createElement("pre");
  textPane.className = "editor-text";
  textPane.setAttribute("data-role", "editor-text");

  const button = document.createElement("button");
  button.textContent = "Create Inlet";
  button.setAttribute("data-role", "create-inlet");
  button.disabled = true;

  let pendingRange: [number, number] | null = null;

  function render(): void {
    const state = store.get();
    textPane.textContent = "";
    if (!state.document) return;
    const { text, inlets } = state.document;
    const sorted = [...inlets].sort((a, b) => a.start - b.start);
    let cursor = 0;
    for (const inlet of sorted) {
      if (inlet.start > cursor) {
        textPane.appendChild(document.createTextNode(text.slice(cursor, inlet.start)));
      }
      const mark = document.createElement("mark");
      mark.className = "inlet" + (inlet.id === state.activeInletId ? " inlet-active" : "");
      mark.dataset.inletId = inlet.id;
      mark.dataset.generation = String(inlet.generation);
      mark.textContent = text.slice(inlet.start, inlet.end);
      mark.addEventListener("click", () => store.setActiveInlet(inlet.id));
      textPane.appendChild(mark);
      cursor = inlet.end;
    }
    if (cursor < text.length) {
      textPane.appendChild(document.createTextNode(text.slice(cursor)));
    }
  }

  async function createInletFromOffsets(start: number, end: number): Promise<void> {
    const state = store.get();
    if (!state.document) return;
    try {
      const inlet = await api.createInlet(state.document.id, start, end);
      const document_ = await api.getDocument(state.document.id);
      store.setDocument(document_);
      store.setActiveInlet(inlet.id);
      store.showBanner(null);
    } catch (error) {
      if (error instanceof ApiError) {
        store.showBanner(`${error.code}: ${error.message}`);
        return;
      }
      throw error;
    }
  }

  function selectionOffsets(): [number, number] | null {
    const selection = window.getSelection?.();
    if (!selection || selection.isCollapsed || !store.get().document) return null;
    const chosen = selection.toString();
    if (!chosen) return null;
    const text = store.get().document!.text;
    const start = text.indexOf(chosen);
    if (start < 0) return null;
    return [start, start + chosen.length];
  }

  textPane.addEventListener("mouseup", () => {
    pendingRange = selectionOffsets();
    button.disabled = pendingRange === null;
  });

  button.addEventListener("click", () => {
    if (!pendingRange) return;
    const [start, end] = pendingRange;
    pendingRange = null;
    button.disabled = true;
    void createInletFromOffsets(start, end);
  });

  root.append(textPane, button);
  return { element: root, render, createInletFromOffsets };
}
