import { describe, expect, it } from "vitest";
import { column, dumpTable, numeric, parseTable } from "../src/table.js";

const HEADER = ["n", "re", "im"];

describe("parseTable / dumpTable", () => {
  it("round-trips full-precision cells bit-identically", () => {
    const text =
      "n,re,im\n" +
      "0,0.10000000000000001,-3.0000000000000004e-05\n" +
      "1,0.99500416527802571,0\n" +
      "2,1e-300,17\n";
    const table = parseTable(text, HEADER);
    expect(dumpTable(table)).toBe(text);
    expect(table.rows[0][1]).toBe("0.10000000000000001");
  });

  it("rejects a mismatched header", () => {
    expect(() => parseTable("a,b\n1,2\n", HEADER)).toThrow(/expected header/);
  });

  it("rejects a ragged row", () => {
    expect(() => parseTable("n,re,im\n0,1\n", HEADER)).toThrow(/1 has 2 cells/);
  });

  it("rejects empty input", () => {
    expect(() => parseTable("", HEADER)).toThrow();
  });
});

describe("numeric / column", () => {
  it("parses scientific notation", () => {
    expect(numeric("-3e-5")).toBeCloseTo(-3e-5, 18);
  });

  it("rejects junk cells", () => {
    expect(() => numeric("12,5")).toThrow(/not a finite number/);
  });

  it("extracts a named column as numbers", () => {
    const table = parseTable("n,re,im\n0,0.5,0\n1,0.25,-1\n", HEADER);
    expect(column(table, "re")).toEqual([0.5, 0.25]);
    expect(() => column(table, "value")).toThrow(/no column/);
  });
});
