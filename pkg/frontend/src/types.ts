// Wire types mirroring the service JSON. The UI renders these untouched:
// scores, ordering, and colors are engine-side decisions.

export interface TokenViewJson {
  surface: string;
  pos?: string;
  logProb?: number;
  phonemes?: string[];
}

export interface RephrasingJson {
  id: string;
  text: string;
  wellId: string;
  generation: number;
  tokens: TokenViewJson[];
  internalScore: number;
  constraintScores: Record<string, number>;
  overallScore: number;
  fullyMatched: boolean;
  provenance: string[];
  totalLogProb?: number;
}

export interface InletJson {
  id: string;
  start: number;
  end: number;
  activeWellIds: string[];
  generation: number;
}

export interface WellJson {
  wellId: string;
  kind: string;
  promptDescription?: string;
  parameters: Record<string, unknown>;
  color?: string;
}

export interface DocumentJson {
  id: string;
  text: string;
  inlets: InletJson[];
  revision: number;
  wells: WellJson[];
}

export interface HistogramJson {
  binEdges: number[];
  counts: number[];
  total: number;
}

export interface InsightJson {
  wellId: string;
  kind: "textBullets" | "histogram" | "definition" | "pronunciationAnnotation";
  body: unknown;
}

export type WellStatus = "pending" | "done" | "stale" | `failed: ${string}` | string;

export interface JobJson {
  jobId: string;
  inletId: string;
  generation: number;
  wells: Record<string, WellStatus>;
  rephrasings: RephrasingJson[];
  cursor: number;
  insights: InsightJson[];
  done: boolean;
}

export type PresetsJson = Record<string, string[]>;
