import { describe, expect, it } from "vitest";

import { fmt12, percent } from "../src/format.js";

describe("fmt12", () => {
  it("keeps 12 significant digits", () => {
    expect(fmt12(1 / 3)).toBe("0.333333333333");
  });

  it("trims trailing zeros", () => {
    expect(fmt12(0.5)).toBe("0.5");
    expect(fmt12(2)).toBe("2");
  });

  it("handles exponent notation", () => {
    expect(fmt12(1e-13)).toBe("1e-13");
  });

  it("handles zero and negatives", () => {
    expect(fmt12(0)).toBe("0");
    expect(fmt12(-0.25)).toBe("-0.25");
  });
});

describe("percent", () => {
  it("formats fractions", () => {
    expect(percent(0.756)).toBe("75.6%");
  });
});
