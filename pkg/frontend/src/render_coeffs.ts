import { STATE_HEADER, renderCoeffs } from "./coeffs.js";
import { runFigure } from "./job.js";

process.exit(
  runFigure(process.argv.slice(2), {
    usage: "render_coeffs <state.csv> --out <figure.svg> [--title <text>] [--dump-table]",
    headers: [STATE_HEADER],
    render: ([table], job) => renderCoeffs(table, job.title),
  }),
);
