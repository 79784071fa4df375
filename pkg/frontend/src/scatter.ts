import { fmt12 } from "./format.js";
import type { ReportPayload } from "./types.js";

export interface ScatterPoint {
  id: string;
  x: number;
  y: number;
  color: string;
  label: string;
}

export interface ScatterEdge {
  x1: number;
  y1: number;
  x2: number;
  y2: number;
}

export interface ScatterData {
  points: ScatterPoint[];
  edges: ScatterEdge[];
  notice: string | null;
}

const PALETTE = [
  "#4c78a8", "#f58518", "#54a24b", "#e45756", "#72b7b2",
  "#b279a2", "#eeca3b", "#ff9da6", "#9d755d", "#bab0ac",
];

/** Assemble scatter geometry from report scores: sample j is drawn at
 *  (scores[axisI][j], scores[axisJ][j]) and simplex edges connect the
 *  projected vertex points at the same axis pair. */
export function buildScatter(
  report: ReportPayload,
  axisI: number,
  axisJ: number,
  colorBy: string | null,
  annotations: Record<string, string[]>,
): ScatterData {
  const xs = report.scores[axisI];
  const ys = report.scores[axisJ];
  if (!xs || !ys) throw new Error(`axis pair (${axisI}, ${axisJ}) out of range`);

  let notice: string | null = null;
  let values: string[] | null = null;
  if (colorBy !== null) {
    values = annotations[colorBy] ?? null;
    if (!values) notice = `annotation "${colorBy}" not available; plot uncolored`;
  }
  const colorOf = new Map<string, string>();
  const points: ScatterPoint[] = report.samples.map((id, j) => {
    const value = values?.[j] ?? "";
    let color = "#555555";
    if (values && value !== "") {
      if (!colorOf.has(value)) colorOf.set(value, PALETTE[colorOf.size % PALETTE.length]!);
      color = colorOf.get(value)!;
    }
    return { id, x: xs[j]!, y: ys[j]!, color, label: value };
  });

  const edges: ScatterEdge[] = report.simplex_edges.map(([a, b]) => ({
    x1: a[axisI]!,
    y1: a[axisJ]!,
    x2: b[axisI]!,
    y2: b[axisJ]!,
  }));
  return { points, edges, notice };
}

/** Render to an SVG string; pure so tests run without a DOM. */
export function renderScatterSvg(
  data: ScatterData,
  width = 520,
  height = 420,
  pad = 36,
): string {
  const xs = [
    ...data.points.map((p) => p.x),
    ...data.edges.flatMap((e) => [e.x1, e.x2]),
  ];
  const ys = [
    ...data.points.map((p) => p.y),
    ...data.edges.flatMap((e) => [e.y1, e.y2]),
  ];
  const [x0, x1] = extent(xs);
  const [y0, y1] = extent(ys);
  const sx = (x: number) => pad + ((x - x0) / (x1 - x0 || 1)) * (width - 2 * pad);
  const sy = (y: number) => height - pad - ((y - y0) / (y1 - y0 || 1)) * (height - 2 * pad);

  const parts: string[] = [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" viewBox="0 0 ${width} ${height}">`,
  ];
  for (const e of data.edges) {
    parts.push(
      `<line class="edge" x1="${sx(e.x1)}" y1="${sy(e.y1)}" x2="${sx(e.x2)}" y2="${sy(e.y2)}" stroke="#999" stroke-width="1"/>`,
    );
  }
  for (const p of data.points) {
    parts.push(
      `<circle class="pt" cx="${sx(p.x)}" cy="${sy(p.y)}" r="4" fill="${p.color}">` +
        `<title>${escapeXml(p.id)}${p.label ? " (" + escapeXml(p.label) + ")" : ""}: ` +
        `${fmt12(p.x)}, ${fmt12(p.y)}</title></circle>`,
    );
  }
  if (data.notice) {
    parts.push(
      `<text class="notice" x="${pad}" y="16" fill="#a33">${escapeXml(data.notice)}</text>`,
    );
  }
  parts.push("</svg>");
  return parts.join("");
}

function extent(values: number[]): [number, number] {
  if (values.length === 0) return [0, 1];
  return [Math.min(...values), Math.max(...values)];
}

function escapeXml(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}
