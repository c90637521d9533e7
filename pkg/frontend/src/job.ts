import { readFileSync, writeFileSync } from "node:fs";
import { parseArgs } from "node:util";
import { Table, dumpTable, parseTable } from "./table.js";

/** One figure rendering: input CSVs, destination, optional heading. */
export interface FigureJob {
  inputs: string[];
  output?: string;
  title?: string;
  labels?: string;
  dump: boolean;
}

export interface FigureSpec {
  usage: string;
  headers: string[][];
  render: (tables: Table[], job: FigureJob) => string;
}

/** Shared driver for the figure scripts. Returns the process exit code:
 * 0 on success, 1 on any parse/schema/render failure. With --dump-table
 * the parsed cells are echoed verbatim to stdout and nothing is drawn. */
export function runFigure(argv: string[], spec: FigureSpec): number {
  try {
    const { values, positionals } = parseArgs({
      args: argv,
      allowPositionals: true,
      options: {
        out: { type: "string" },
        title: { type: "string" },
        labels: { type: "string" },
        "dump-table": { type: "boolean", default: false },
      },
    });
    if (positionals.length !== spec.headers.length) {
      throw new Error(
        `expected ${spec.headers.length} input file(s), got ${positionals.length}\nusage: ${spec.usage}`,
      );
    }
    const job: FigureJob = {
      inputs: positionals,
      output: values.out,
      title: values.title,
      labels: values.labels,
      dump: values["dump-table"] ?? false,
    };
    const tables = job.inputs.map((path, i) =>
      parseTable(readFileSync(path, "utf8"), spec.headers[i]),
    );
    if (job.dump) {
      for (const table of tables) process.stdout.write(dumpTable(table));
      return 0;
    }
    if (!job.output) throw new Error(`--out is required\nusage: ${spec.usage}`);
    writeFileSync(job.output, spec.render(tables, job));
    return 0;
  } catch (error) {
    process.stderr.write(`error: ${error instanceof Error ? error.message : error}\n`);
    return 1;
  }
}
