// The pooled rephrasing list. Entries arrive ordered and scored; the UI
// renders them verbatim: border color is the engine-assigned well color,
// partial matches are muted via the fullyMatched flag, hover expands the
// token views (POS tags, log probabilities, phrase total, well name), and a
// click accepts through the API. A 409 on accept means the pool is stale.

import type { Api } from "./api";
import { ApiError } from "./api";
import type { Store } from "./state";
import type { RephrasingJson } from "./types";

export interface Results {
  element: HTMLElement;
  render(): void;
}

function formatLogProb(value: number | undefined): string {
  return value === undefined ? "" : value.toFixed(2);
}

export function hoverCard(entry: RephrasingJson, wellLabel: string): HTMLElement {
  const card = document.createElement("div");
  card.className = "hover-card";
  card.setAttribute("data-role", "hover-card");
  const tokens = document.createElement("div");
  tokens.className = "hover-tokens";
  for (const token of entry.tokens) {
    const cell = document.createElement("span");
    cell.className = "hover-token";
    const surface = document.createElement("span");
    surface.className = "hover-surface";
    surface.textContent = token.surface;
    cell.appendChild(surface);
    if (token.pos) {
      const pos = document.createElement("span");
      pos.className = "hover-pos";
      pos.textContent = token.pos;
      cell.appendChild(pos);
    }
    if (token.logProb !== undefined) {
      const lp = document.createElement("span");
      lp.className = "hover-logprob";
      lp.textContent = formatLogProb(token.logProb);
      cell.appendChild(lp);
    }
    tokens.appendChild(cell);
  }
  card.appendChild(tokens);
  const footer = document.createElement("div");
  footer.className = "hover-footer";
  const total =
    entry.totalLogProb === undefined ? "" : `total ${formatLogProb(entry.totalLogProb)} · `;
  footer.textContent = `${total}${wellLabel}`;
  card.appendChild(footer);
  return card;
}

export function createResults(api: Api, store: Store): Results {
  const root = document.createElement("div");
  root.className = "results";
  root.setAttribute("data-role", "results");

  async function accept(entry: RephrasingJson): Promise<void> {
    const state = store.get();
    const inletId = state.job?.inletId;
    if (!inletId) return;
    try {
      const updated = await api.accept(inletId, entry.id);
      store.setDocument(updated);
      store.showBanner(null);
    } catch (error) {
      if (error instanceof ApiError && error.status === 409) {
        store.showBanner("These suggestions are stale; run the wells again.");
        return;
      }
      throw error;
    }
  }

  function render(): void {
    root.textContent = "";
    const state = store.get();
    const job = state.job;
    if (!job) return;

    for (const [wellId, status] of Object.entries(job.wells).sort()) {
      if (status === "pending") {
        const spinner = document.createElement("div");
        spinner.className = "well-spinner";
        spinner.setAttribute("data-role", "spinner");
        spinner.textContent = `${wellId} …`;
        root.appendChild(spinner);
      } else if (status.startsWith("failed")) {
        const failure = document.createElement("div");
        failure.className = "well-failure";
        failure.setAttribute("data-role", "failure");
        failure.textContent = `${wellId} ${status}`;
        root.appendChild(failure);
      }
    }

    const list = document.createElement("ul");
    list.className = "rephrasing-list";
    for (const entry of job.rephrasings) {
      const item = document.createElement("li");
      item.className = "rephrasing" + (entry.fullyMatched ? "" : " rephrasing-muted");
      item.dataset.rephrasingId = entry.id;
      item.dataset.wellId = entry.wellId;
      item.style.borderLeftColor = store.colorOf(entry.wellId);

      const text = document.createElement("span");
      text.className = "rephrasing-text";
      text.textContent = entry.text;
      item.appendChild(text);

      const score = document.createElement("span");
      score.className = "rephrasing-score";
      score.textContent = entry.overallScore.toFixed(2);
      item.appendChild(score);

      item.addEventListener("mouseenter", () => {
        const wellKind = store.wellById(entry.wellId)?.kind ?? entry.wellId;
        item.appendChild(hoverCard(entry, wellKind));
      });
      item.addEventListener("mouseleave", () => {
        item.querySelector('[data-role="hover-card"]')?.remove();
      });
      item.addEventListener("click", () => void accept(entry));
      list.appendChild(item);
    }
    root.appendChild(list);
  }

  return { element: root, render };
}
