import { HUSIMI_HEADER, husimiGrid, renderHusimi } from "./husimi.js";
import { runFigure } from "./job.js";

process.exit(
  runFigure(process.argv.slice(2), {
    usage: "render_husimi <husimi.csv> --out <figure.svg> [--title <text>] [--dump-table]",
    headers: [HUSIMI_HEADER],
    render: ([table], job) => renderHusimi(husimiGrid(table), job.title),
  }),
);
