// Log-likelihood histogram with a draggable band selector. The bins come
// straight from the context well's insight; dragging reports a band in
// log-probability units which the palette PATCHes onto the well config.

import type { HistogramJson } from "./types";

export interface Scale {
  toPx(value: number): number;
  toValue(px: number): number;
}

export function linearScale(domainMin: number, domainMax: number, widthPx: number): Scale {
  const span = domainMax - domainMin || 1;
  return {
    toPx: (value) => ((value - domainMin) / span) * widthPx,
    toValue: (px) => domainMin + (px / widthPx) * span,
  };
}

export interface BrushResult {
  bandMin: number;
  bandMax: number;
}

export function brushToBand(scale: Scale, x0: number, x1: number): BrushResult {
  const [lo, hi] = x0 <= x1 ? [x0, x1] : [x1, x0];
  return { bandMin: scale.toValue(lo), bandMax: scale.toValue(hi) };
}

export interface HistogramView {
  element: HTMLElement;
  setBand(band: BrushResult | null): void;
}

const WIDTH = 260;
const HEIGHT = 72;

export function renderHistogram(
  histogram: HistogramJson,
  onBand: (band: BrushResult) => void,
): HistogramView {
  const root = document.createElement("div");
  root.className = "histogram";
  const svg = document.createElementNS("http://www.w3.org/2000/svg", "svg");
  svg.setAttribute("width", String(WIDTH));
  svg.setAttribute("height", String(HEIGHT));
  svg.setAttribute("data-role", "histogram");

  const edges = histogram.binEdges;
  const scale = linearScale(edges[0], edges[edges.length - 1], WIDTH);
  const maxCount = Math.max(...histogram.counts, 1);
  histogram.counts.forEach((count, i) => {
    const x = scale.toPx(edges[i]);
    const width = Math.max(scale.toPx(edges[i + 1]) - x - 1, 1);
    const height = (count / maxCount) * (HEIGHT - 4);
    const rect = document.createElementNS("http://www.w3.org/2000/svg", "rect");
    rect.setAttribute("x", x.toFixed(1));
    rect.setAttribute("y", (HEIGHT - height).toFixed(1));
    rect.setAttribute("width", width.toFixed(1));
    rect.setAttribute("height", height.toFixed(1));
    rect.setAttribute("class", "histogram-bar");
    svg.appendChild(rect);
  });

  const bandRect = document.createElementNS("http://www.w3.org/2000/svg", "rect");
  bandRect.setAttribute("class", "histogram-band");
  bandRect.setAttribute("y", "0");
  bandRect.setAttribute("height", String(HEIGHT));
  bandRect.setAttribute("data-role", "band");
  bandRect.style.display = "none";
  svg.appendChild(bandRect);

  let dragStart: number | null = null;

  const localX = (event: MouseEvent): number => {
    const rect = (svg as unknown as { getBoundingClientRect(): DOMRect }).getBoundingClientRect();
    return Math.min(Math.max(event.clientX - rect.left, 0), WIDTH);
  };

  const setBand = (band: BrushResult | null): void => {
    if (band === null) {
      bandRect.style.display = "none";
      return;
    }
    const x0 = scale.toPx(band.bandMin);
    const x1 = scale.toPx(band.bandMax);
    bandRect.style.display = "";
    bandRect.setAttribute("x", Math.min(x0, x1).toFixed(1));
    bandRect.setAttribute("width", Math.abs(x1 - x0).toFixed(1));
  };

  svg.addEventListener("mousedown", (event) => {
    dragStart = localX(event as MouseEvent);
  });
  svg.addEventListener("mousemove", (event) => {
    if (dragStart === null) return;
    setBand(brushToBand(scale, dragStart, localX(event as MouseEvent)));
  });
  svg.addEventListener("mouseup", (event) => {
    if (dragStart === null) return;
    const band = brushToBand(scale, dragStart, localX(event as MouseEvent));
    dragStart = null;
    setBand(band);
    onBand(band);
  });

  root.appendChild(svg);
  return { element: root, setBand };
}
