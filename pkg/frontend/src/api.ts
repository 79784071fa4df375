import type { DatasetSummary, FitRequest, FitResponse, ReportPayload } from "./types.js";

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

/** Thin typed client over the explorer service; all numbers come from the
 *  server, the client never computes moments. Calls are logged so any UI
 *  session is replayable as a sequence of HTTP requests. */
export class ApiClient {
  readonly log: string[] = [];

  constructor(
    private readonly base: string = "",
    private readonly fetchFn: FetchLike = (url, init) => fetch(url, init),
    private readonly debug: boolean = false,
  ) {}

  private note(entry: string): void {
    this.log.push(entry);
    if (this.debug) console.log("[api]", entry);
  }

  private async check(resp: Response): Promise<Response> {
    if (!resp.ok) {
      let detail = resp.statusText;
      try {
        detail = (await resp.json()).detail ?? detail;
      } catch {
        // non-JSON error body, keep the status text
      }
      throw new Error(`${resp.status}: ${detail}`);
    }
    return resp;
  }

  async uploadDataset(data: Blob, metadata?: Blob): Promise<DatasetSummary> {
    const form = new FormData();
    form.append("data", data, "data.tsv");
    if (metadata) form.append("metadata", metadata, "metadata.tsv");
    this.note("POST /api/datasets");
    const resp = await this.check(
      await this.fetchFn(`${this.base}/api/datasets`, { method: "POST", body: form }),
    );
    return resp.json();
  }

  async fitModel(req: FitRequest): Promise<FitResponse> {
    this.note(`POST /api/models ${JSON.stringify(req)}`);
    const resp = await this.check(
      await this.fetchFn(`${this.base}/api/models`, {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify(req),
      }),
    );
    return resp.json();
  }

  async getReport(modelId: string, dims: number): Promise<ReportPayload> {
    this.note(`GET /api/models/${modelId}/report?dims=${dims}`);
    const resp = await this.check(
      await this.fetchFn(`${this.base}/api/models/${modelId}/report?dims=${dims}`),
    );
    return resp.json();
  }

  /** The export button streams the service's TSV verbatim via this URL. */
  exportUrl(modelId: string, format: "tsv" | "json" = "tsv", dims?: number): string {
    const suffix = dims === undefined ? "" : `&dims=${dims}`;
    return `${this.base}/api/models/${modelId}/export?format=${format}${suffix}`;
  }
}
