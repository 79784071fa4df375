// Wire types mirroring the explorer service API.

export interface DatasetSummary {
  dataset_id: string;
  p: number;
  n: number;
  annotation_names: string[];
  annotation_value_counts: Record<string, number>;
}

export type Strategy = "points" | "groupby" | "knn" | "chain";

export interface FitParams {
  group_column?: string;
  k?: number;
  order_column?: string;
  series_column?: string;
}

export interface FitRequest {
  dataset_id: string;
  strategy: Strategy;
  params: FitParams;
  volume_weights: boolean;
  center: boolean;
}

export interface FitResponse {
  model_id: string;
  eigenvalues: number[];
  trace_total: number;
  warnings: string[];
}

export interface ReportPayload {
  s: number;
  explained: number[];
  cumulative: number;
  residual: number;
  samples: string[];
  scores: number[][]; // s rows of n scores, axis-major
  variables: string[];
  axis_loadings: number[][];
  simplex_edges: [number[], number[]][];
}
