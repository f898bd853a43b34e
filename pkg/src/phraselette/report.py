"""Render a run's results to files: delimited pool plus figures.

Figures go next to the CSV: the context well's log-likelihood histogram
(when present) and the pool's overall-score distribution.
"""

from __future__ import annotations

import csv
from pathlib import Path
from typing import Optional

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

from .orchestrator import well_color  # noqa: E402

CSV_COLUMNS = (
    "text", "wellId", "provenance", "overallScore", "internalScore",
    "totalLogProb", "fullyMatched", "generation",
)


def write_pool_csv(rephrasings: list[dict], path: Path) -> Path:
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(CSV_COLUMNS)
        for entry in rephrasings:
            writer.writerow([
                entry["text"],
                entry["wellId"],
                "|".join(entry.get("provenance", [])),
                f"{entry['overallScore']:.6f}",
                f"{entry['internalScore']:.6f}",
                "" if entry.get("totalLogProb") is None else f"{entry['totalLogProb']:.6f}",
                str(entry["fullyMatched"]).lower(),
                entry["generation"],
            ])
    return path


def render_histogram(histogram: dict, path: Path, band: Optional[tuple] = None) -> Path:
    edges = histogram["binEdges"]
    counts = histogram["counts"]
    widths = [edges[i + 1] - edges[i] for i in range(len(counts))]
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.bar(edges[:-1], counts, width=widths, align="edge",
           color="#4363d8", edgecolor="white")
    if band is not None:
        ax.axvspan(band[0], band[1], color="#f58231", alpha=0.25, label="band")
        ax.legend()
    ax.set_xlabel("log-likelihood")
    ax.set_ylabel("hypotheses")
    ax.set_title("Context search: log-likelihood distribution")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def render_scores(rephrasings: list[dict], path: Path, top: int = 25) -> Path:
    entries = rephrasings[:top]
    if not entries:
        return path
    labels = [e["text"] for e in entries][::-1]
    scores = [e["overallScore"] for e in entries][::-1]
    colors = [well_color(e["wellId"]) for e in entries][::-1]
    fig, ax = plt.subplots(figsize=(7, max(3, 0.3 * len(entries))))
    ax.barh(range(len(entries)), scores, color=colors)
    ax.set_yticks(range(len(entries)))
    ax.set_yticklabels(labels, fontsize=8)
    ax.set_xlim(0, 1.05)
    ax.set_xlabel("overall constraint score")
    ax.set_title("Pooled rephrasings (colored by well)")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def write_report(job_json: dict, out_dir: Path) -> list[Path]:
    out_dir.mkdir(parents=True, exist_ok=True)
    written = [write_pool_csv(job_json["rephrasings"], out_dir / "rephrasings.csv")]
    for insight in job_json.get("insights", []):
        if insight["kind"] == "histogram":
            written.append(
                render_histogram(insight["body"], out_dir / "histogram.png")
            )
            break
    if job_json["rephrasings"]:
        written.append(render_scores(job_json["rephrasings"], out_dir / "scores.png"))
    return written
