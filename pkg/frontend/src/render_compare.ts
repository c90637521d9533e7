import { basename } from "node:path";
import { STATE_HEADER } from "./coeffs.js";
import { renderCompare } from "./compare.js";
import { runFigure } from "./job.js";

function seriesLabels(job: { inputs: string[]; labels?: string }): [string, string] {
  if (job.labels) {
    const parts = job.labels.split(",").map((s) => s.trim());
    if (parts.length !== 2) throw new Error("--labels expects two comma separated names");
    return [parts[0], parts[1]];
  }
  const strip = (path: string) => basename(path).replace(/\.csv$/i, "");
  return [strip(job.inputs[0]), strip(job.inputs[1])];
}

process.exit(
  runFigure(process.argv.slice(2), {
    usage:
      "render_compare <left.csv> <right.csv> --out <figure.svg>" +
      " [--labels a,b] [--title <text>] [--dump-table]",
    headers: [STATE_HEADER, STATE_HEADER],
    render: ([lhs, rhs], job) => renderCompare(lhs, rhs, seriesLabels(job), job.title),
  }),
);
