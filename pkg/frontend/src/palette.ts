// The side-scrolling well palette. Each configured well renders as a card
// with its engine-assigned color; prompted kinds get a description box and a
// die button cycling the built-in presets; the lockbox section opens the
// constraint editors (POS pattern + word counts on the words well, sound
// reference on the sound well, the histogram band brush on the context
// well). Every control maps 1:1 onto a PATCH /wells payload.

import type { Api } from "./api";
import type { Store } from "./state";
import type { HistogramJson, WellJson } from "./types";
import { renderHistogram } from "./histogram";

const ADDABLE = ["thesaurus", "reader", "context", "sound", "dictionary"];
const PROMPTED = new Set(["thesaurus", "reader", "dictionary"]);
const POS_MODES = ["exact", "startsWith", "endsWith", "contains", "inOrder"];
const SOUND_MODES = ["startsWith", "endsWith", "contains", "rhymesWith"];

export interface Palette {
  element: HTMLElement;
  render(): void;
}

export function createPalette(
  api: Api,
  store: Store,
  onMutated: () => Promise<void>,
): Palette {
  const root = document.createElement("div");
  root.className = "palette";
  root.setAttribute("data-role", "palette");
  const presetCursor = new Map<string, number>();

  async function patch(
    wellId: string,
    body: { promptDescription?: string; parameters?: Record<string, unknown> },
  ): Promise<void> {
    await api.patchWell(wellId, body);
    await onMutated();
  }

  function descriptionControls(well: WellJson): HTMLElement {
    const row = document.createElement("div");
    row.className = "well-description";
    const input = document.createElement("input");
    input.value = well.promptDescription ?? "";
    input.setAttribute("data-role", `description-${well.wellId}`);
    input.addEventListener("change", () => {
      void patch(well.wellId, { promptDescription: input.value });
    });
    const die = document.createElement("button");
    die.textContent = "🎲";
    die.title = "cycle presets";
    die.setAttribute("data-role", `die-${well.wellId}`);
    die.addEventListener("click", async () => {
      const presets = (await api.presets())[well.kind] ?? [];
      if (!presets.length) return;
      const next = (presetCursor.get(well.wellId) ?? 0) % presets.length;
      presetCursor.set(well.wellId, next + 1);
      await patch(well.wellId, { promptDescription: presets[next] });
    });
    row.append(input, die);
    return row;
  }

  function wordsLockbox(well: WellJson): HTMLElement {
    const box = document.createElement("div");
    box.className = "lockbox";
    const pos = document.createElement("input");
    pos.placeholder = "POS pattern, e.g. VERB ADV";
    pos.setAttribute("data-role", `pos-${well.wellId}`);
    pos.value = ((well.parameters.pos as string[]) ?? []).join(" ");
    const mode = document.createElement("select");
    mode.setAttribute("data-role", `pos-mode-${well.wellId}`);
    for (const value of POS_MODES) {
      const option = document.createElement("option");
      option.value = value;
      option.textContent = value;
      mode.appendChild(option);
    }
    mode.value = (well.parameters.mode as string) ?? "contains";
    const min = document.createElement("input");
    min.type = "number";
    min.setAttribute("data-role", `words-min-${well.wellId}`);
    const max = document.createElement("input");
    max.type = "number";
    max.setAttribute("data-role", `words-max-${well.wellId}`);
    const range = well.parameters.words as [number, number] | undefined;
    if (range) {
      min.value = String(range[0]);
      max.value = String(range[1]);
    }
    const apply = document.createElement("button");
    apply.textContent = "apply";
    apply.setAttribute("data-role", `apply-${well.wellId}`);
    apply.addEventListener("click", () => {
      const parameters: Record<string, unknown> = { ...well.parameters };
      const tags = pos.value.trim().split(/\s+/).filter(Boolean);
      if (tags.length) {
        parameters.pos = tags;
        parameters.mode = mode.value;
      } else {
        delete parameters.pos;
        delete parameters.mode;
      }
      if (min.value !== "" && max.value !== "") {
        parameters.words = [Number(min.value), Number(max.value)];
      } else {
        delete parameters.words;
      }
      void patch(well.wellId, { parameters });
    });
    box.append(pos, mode, min, max, apply);
    return box;
  }

  function soundLockbox(well: WellJson): HTMLElement {
    const box = document.createElement("div");
    box.className = "lockbox";
    const phonemes = document.createElement("input");
    phonemes.placeholder = "phonemes, e.g. K AE P";
    phonemes.setAttribute("data-role", `phonemes-${well.wellId}`);
    phonemes.value = (well.parameters.phonemes as string) ?? "";
    const mode = document.createElement("select");
    mode.setAttribute("data-role", `sound-mode-${well.wellId}`);
    for (const value of SOUND_MODES) {
      const option = document.createElement("option");
      option.value = value;
      option.textContent = value;
      mode.appendChild(option);
    }
    mode.value = (well.parameters.mode as string) ?? "startsWith";
    const apply = document.createElement("button");
    apply.textContent = "apply";
    apply.setAttribute("data-role", `apply-${well.wellId}`);
    apply.addEventListener("click", () => {
      const parameters: Record<string, unknown> = { ...well.parameters, mode: mode.value };
      if (phonemes.value.trim()) parameters.phonemes = phonemes.value.trim();
      else delete parameters.phonemes;
      void patch(well.wellId, { parameters });
    });
    box.append(phonemes, mode, apply);
    return box;
  }

  function contextLockbox(well: WellJson): HTMLElement {
    const box = document.createElement("div");
    box.className = "lockbox";
    const histogram = store
      .get()
      .job?.insights.find(
        (insight) => insight.kind === "histogram" && insight.wellId === well.wellId,
      );
    if (histogram) {
      const view = renderHistogram(histogram.body as HistogramJson, (band) => {
        void patch(well.wellId, {
          parameters: {
            ...well.parameters,
            band_min: band.bandMin,
            band_max: band.bandMax,
          },
        });
      });
      const current = well.parameters as { band_min?: number; band_max?: number };
      if (current.band_min !== undefined && current.band_max !== undefined) {
        view.setBand({ bandMin: current.band_min, bandMax: current.band_max });
      }
      box.appendChild(view.element);
    } else {
      const hint = document.createElement("p");
      hint.className = "hint";
      hint.textContent = "Run the wells to see the likelihood distribution.";
      box.appendChild(hint);
    }
    return box;
  }

  function wellCard(well: WellJson): HTMLElement {
    const card = document.createElement("section");
    card.className = "well-card";
    card.dataset.wellId = well.wellId;
    card.dataset.kind = well.kind;
    card.style.borderTopColor = well.color ?? "#999";
    const title = document.createElement("h3");
    title.textContent = well.kind;
    card.appendChild(title);
    if (PROMPTED.has(well.kind)) card.appendChild(descriptionControls(well));
    if (well.kind === "words") card.appendChild(wordsLockbox(well));
    if (well.kind === "sound") card.appendChild(soundLockbox(well));
    if (well.kind === "context") card.appendChild(contextLockbox(well));
    return card;
  }

  function addButtons(): HTMLElement {
    const bar = document.createElement("div");
    bar.className = "well-add-bar";
    for (const kind of ADDABLE) {
      const button = document.createElement("button");
      button.textContent = `+ ${kind}`;
      button.setAttribute("data-role", `add-${kind}`);
      button.addEventListener("click", async () => {
        const state = store.get();
        if (!state.document) return;
        const description = PROMPTED.has(kind)
          ? ((await api.presets())[kind] ?? [])[0]
          : undefined;
        await api.addWell(state.document.id, kind, description);
        await onMutated();
      });
      bar.appendChild(button);
    }
    return bar;
  }

  function render(): void {
    root.textContent = "";
    const state = store.get();
    if (!state.document) return;
    root.appendChild(addButtons());
    const strip = document.createElement("div");
    strip.className = "well-strip";
    for (const well of state.document.wells) {
      strip.appendChild(wellCard(well));
    }
    root.appendChild(strip);
  }

  return { element: root, render };
}
