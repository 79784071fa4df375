/** 12-significant-digit display, matching the service's export precision. */
export function fmt12(x: number): string {
  if (!Number.isFinite(x)) return String(x);
  if (x === 0) return "0";
  const s = x.toPrecision(12);
  // trim trailing zeros without touching exponent notation
  if (s.includes("e")) {
    const [mant, exp] = s.split("e");
    return trimZeros(mant!) + "e" + exp;
  }
  return trimZeros(s);
}

function trimZeros(s: string): string {
  return s.includes(".") ? s.replace(/0+$/, "").replace(/\.$/, "") : s;
}

export function percent(fraction: number): string {
  return (fraction * 100).toFixed(1) + "%";
}
