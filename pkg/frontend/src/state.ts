import type { ApiClient } from "./api.js";
import type {
  DatasetSummary,
  FitParams,
  FitResponse,
  ReportPayload,
  Strategy,
} from "./types.js";

export interface StrategyForm {
  strategy: Strategy;
  groupColumn: string;
  k: number | null;
  orderColumn: string;
  seriesColumn: string;
  volumeWeights: boolean;
  center: boolean;
}

export interface ModelEntry {
  modelId: string;
  label: string;
  eigenvalues: number[];
  traceTotal: number;
  warnings: string[];
}

export interface ViewConfig {
  axisI: number; // 0-based axis indices into the report's scores
  axisJ: number;
  colorBy: string | null;
}

export const defaultForm = (): StrategyForm => ({
  strategy: "points",
  groupColumn: "",
  k: null,
  orderColumn: "",
  seriesColumn: "",
  volumeWeights: false,
  center: false,
});

/** Sample ids in data-file order, from the header row. */
export function parseSampleIds(dataText: string): string[] {
  const first = dataText.replace(/\r\n?/g, "\n").split("\n", 1)[0] ?? "";
  const delim = first.includes("\t") ? "\t" : ",";
  return first.split(delim).slice(1);
}

/** Per-sample annotation values, parsed client-side from the metadata file
 *  so scatter points can be colored (the service only reports names). */
export function parseAnnotationValues(
  text: string,
  sampleIds: string[],
): Record<string, string[]> {
  const lines = text.replace(/\r\n?/g, "\n").split("\n").filter((l) => l !== "");
  if (lines.length === 0) return {};
  const delim = lines[0]!.includes("\t") ? "\t" : ",";
  const names = lines[0]!.split(delim).slice(1);
  const index = new Map(sampleIds.map((id, i) => [id, i]));
  const out: Record<string, string[]> = {};
  for (const name of names) out[name] = sampleIds.map(() => "");
  for (const line of lines.slice(1)) {
    const cells = line.split(delim);
    const at = index.get(cells[0] ?? "");
    if (at === undefined) continue;
    names.forEach((name, j) => {
      out[name]![at] = cells[j + 1] ?? "";
    });
  }
  return out;
}

/** Single-page application state: the current dataset, the strategy form,
 *  fitted model summaries, and the active report. At most one fit request
 *  is live; responses superseded by a newer request are discarded. */
export class ExplorerStore {
  dataset: DatasetSummary | null = null;
  annotations: Record<string, string[]> = {};
  form: StrategyForm = defaultForm();
  models: ModelEntry[] = [];
  activeModelId: string | null = null;
  activeReport: ReportPayload | null = null;
  view: ViewConfig = { axisI: 0, axisJ: 1, colorBy: null };

  private fitSeq = 0;
  private listeners: (() => void)[] = [];

  onChange(fn: () => void): void {
    this.listeners.push(fn);
  }

  private emit(): void {
    for (const fn of this.listeners) fn();
  }

  /** Replacing the dataset clears all fitted models and the report. */
  setDataset(summary: DatasetSummary, dataText?: string, metadataText?: string): void {
    this.dataset = summary;
    this.annotations =
      dataText && metadataText
        ? parseAnnotationValues(metadataText, parseSampleIds(dataText))
        : {};
    this.models = [];
    this.activeModelId = null;
    this.activeReport = null;
    this.fitSeq++; // in-flight fits against the old dataset become stale
    this.emit();
  }

  setAnnotations(values: Record<string, string[]>): void {
    this.annotations = values;
    this.emit();
  }

  /** null when the form can be submitted, else the validation message.
   *  Invalid forms never reach the network. */
  validateForm(): string | null {
    if (!this.dataset) return "upload a dataset first";
    const f = this.form;
    if (f.strategy === "groupby" && !f.groupColumn) return "pick a group column";
    if (f.strategy === "knn") {
      if (f.k === null || !Number.isInteger(f.k)) return "k must be an integer";
      if (f.k < 1 || f.k > this.dataset.n - 1)
        return `k must be between 1 and ${this.dataset.n - 1}`;
    }
    if (f.strategy === "chain" && !f.orderColumn) return "pick an order column";
    return null;
  }

  formParams(): FitParams {
    const f = this.form;
    switch (f.strategy) {
      case "points":
        return {};
      case "groupby":
        return { group_column: f.groupColumn };
      case "knn":
        return { k: f.k ?? 0 };
      case "chain":
        return f.seriesColumn
          ? { order_column: f.orderColumn, series_column: f.seriesColumn }
          : { order_column: f.orderColumn };
    }
  }

  private formLabel(): string {
    const f = this.form;
    const parts: string[] = [f.strategy];
    if (f.strategy === "groupby") parts.push(f.groupColumn);
    if (f.strategy === "knn") parts.push(`k=${f.k}`);
    if (f.strategy === "chain") parts.push(f.orderColumn);
    if (f.volumeWeights) parts.push("volume");
    if (f.center) parts.push("centered");
    return parts.join(" ");
  }

  /** Fit with the current form, then load its report. Exactly one POST
   *  /api/models per invocation; a stale response (superseded by a newer
   *  call or dataset replacement) is dropped without touching state. */
  async refit(api: ApiClient, dims?: number): Promise<FitResponse | null> {
    const problem = this.validateForm();
    if (problem !== null || !this.dataset) return null;
    const seq = ++this.fitSeq;
    const fitted = await api.fitModel({
      dataset_id: this.dataset.dataset_id,
      strategy: this.form.strategy,
      params: this.formParams(),
      volume_weights: this.form.volumeWeights,
      center: this.form.center,
    });
    if (seq !== this.fitSeq) return null; // superseded
    this.models.push({
      modelId: fitted.model_id,
      label: this.formLabel(),
      eigenvalues: fitted.eigenvalues,
      traceTotal: fitted.trace_total,
      warnings: fitted.warnings,
    });
    const rank = fitted.eigenvalues.length;
    const s = Math.min(dims ?? Math.min(3, rank), rank);
    const report = await api.getReport(fitted.model_id, Math.max(s, 1));
    if (seq !== this.fitSeq) return null;
    this.activeModelId = fitted.model_id;
    this.activeReport = report;
    this.view = {
      axisI: 0,
      axisJ: report.s > 1 ? 1 : 0,
      colorBy: this.view.colorBy,
    };
    this.emit();
    return fitted;
  }

  /** The previous fit's spectrum, for side-by-side comparison. */
  previousModel(): ModelEntry | null {
    return this.models.length > 1 ? this.models[this.models.length - 2]! : null;
  }

  activeModel(): ModelEntry | null {
    return this.models.find((m) => m.modelId === this.activeModelId) ?? null;
  }
}
