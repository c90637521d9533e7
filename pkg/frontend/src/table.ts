import Papa from "papaparse";

/** A parsed CSV with every cell kept as its raw string. Rendering reads
 * numbers through `numeric`; a dump re-emits the strings untouched, so
 * the round trip is bit-identical. */
export interface Table {
  header: string[];
  rows: string[][];
}

export function parseTable(text: string, expectedHeader: string[]): Table {
  const result = Papa.parse<string[]>(text, {
    dynamicTyping: false,
    skipEmptyLines: true,
  });
  if (result.errors.length > 0) {
    const e = result.errors[0];
    throw new Error(`CSV parse failed at row ${e.row}: ${e.message}`);
  }
  const [header, ...rows] = result.data;
  if (!header || header.join(",") !== expectedHeader.join(",")) {
    throw new Error(
      `expected header "${expectedHeader.join(",")}", got "${(header ?? []).join(",")}"`,
    );
  }
  rows.forEach((row, i) => {
    if (row.length !== header.length) {
      throw new Error(`row ${i + 1} has ${row.length} cells, expected ${header.length}`);
    }
  });
  return { header, rows };
}

export function dumpTable(table: Table): string {
  return [table.header, ...table.rows].map((r) => r.join(",")).join("\n") + "\n";
}

export function numeric(cell: string): number {
  const value = Number(cell);
  if (!Number.isFinite(value)) throw new Error(`not a finite number: "${cell}"`);
  return value;
}

/** Column of parsed numbers by header name. */
export function column(table: Table, name: string): number[] {
  const idx = table.header.indexOf(name);
  if (idx < 0) throw new Error(`no column "${name}"`);
  return table.rows.map((row) => numeric(row[idx]));
}
