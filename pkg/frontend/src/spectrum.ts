import { fmt12 } from "./format.js";

export interface SpectrumBar {
  value: number;
  cumulative: number; // running eigenvalue sum / trace total
}

/** Bars are the eigenvalues; the line is the cumulative explained moment.
 *  All inputs come straight from the fit response. */
export function buildSpectrum(eigenvalues: number[], traceTotal: number): SpectrumBar[] {
  let running = 0;
  return eigenvalues.map((value) => {
    running += value;
    return { value, cumulative: running / traceTotal };
  });
}

export function renderSpectrumSvg(
  bars: SpectrumBar[],
  width = 420,
  height = 220,
  pad = 28,
): string {
  const max = Math.max(...bars.map((b) => b.value), 0) || 1;
  const bw = (width - 2 * pad) / bars.length;
  const parts: string[] = [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" viewBox="0 0 ${width} ${height}">`,
  ];
  bars.forEach((bar, k) => {
    const h = (bar.value / max) * (height - 2 * pad);
    parts.push(
      `<rect class="bar" x="${pad + k * bw + 2}" y="${height - pad - h}" ` +
        `width="${Math.max(bw - 4, 1)}" height="${h}" fill="#4c78a8">` +
        `<title>PM${k + 1}: ${fmt12(bar.value)}</title></rect>`,
    );
  });
  const lx = (k: number) => pad + (k + 0.5) * bw;
  const ly = (c: number) => height - pad - c * (height - 2 * pad);
  const path = bars
    .map((b, k) => `${k === 0 ? "M" : "L"}${lx(k)},${ly(b.cumulative)}`)
    .join(" ");
  parts.push(`<path class="cumulative" d="${path}" fill="none" stroke="#e45756" stroke-width="2"/>`);
  bars.forEach((b, k) => {
    parts.push(
      `<circle class="cum-pt" cx="${lx(k)}" cy="${ly(b.cumulative)}" r="3" fill="#e45756">` +
        `<title>cumulative ${fmt12(b.cumulative)}</title></circle>`,
    );
  });
  parts.push("</svg>");
  return parts.join("");
}
