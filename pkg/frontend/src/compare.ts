import { Table } from "./table.js";
import { stateSeries } from "./coeffs.js";
import { Frame, axes, escapeText, linearScale, px, svgDocument, title } from "./svg.js";

export interface OverlaySeries {
  n: number[];
  lhs: number[];
  rhs: number[];
}

export function overlaySeries(lhsTable: Table, rhsTable: Table): OverlaySeries {
  const a = stateSeries(lhsTable);
  const b = stateSeries(rhsTable);
  if (a.n.length !== b.n.length) {
    throw new Error(`series lengths differ: ${a.n.length} vs ${b.n.length}`);
  }
  return { n: a.n, lhs: a.magnitude, rhs: b.magnitude };
}

const WIDTH = 640;
const HEIGHT = 400;
const COLORS = ["#2a6f97", "#c1440e"];

export function renderCompare(
  lhsTable: Table,
  rhsTable: Table,
  labels: [string, string],
  heading?: string,
): string {
  const series = overlaySeries(lhsTable, rhsTable);
  const k = series.n.length - 1;
  const top = heading ? 30 : 16;
  const peak = Math.max(...series.lhs, ...series.rhs) * 1.05 || 1;
  const frame: Frame = {
    left: 56,
    top,
    right: WIDTH - 16,
    bottom: HEIGHT - 44,
    x: linearScale(0, k, 56, WIDTH - 16),
    y: linearScale(0, peak, HEIGHT - 44, top),
  };
  const body = title(heading, WIDTH);
  const polyline = (magnitudes: number[], color: string, dashed: boolean) => {
    const points = magnitudes
      .map((m, i) => `${px(frame.x(i))},${px(frame.y(m))}`)
      .join(" ");
    const dash = dashed ? ' stroke-dasharray="5 3"' : "";
    body.push(
      `<polyline class="series" points="${points}" fill="none" stroke="${color}" stroke-width="1.5"${dash}/>`,
    );
    magnitudes.forEach((m, i) => {
      body.push(
        `<circle cx="${px(frame.x(i))}" cy="${px(frame.y(m))}" r="2.2" fill="${color}"/>`,
      );
    });
  };
  polyline(series.lhs, COLORS[0], false);
  polyline(series.rhs, COLORS[1], true);
  labels.forEach((label, i) => {
    const y = frame.top + 14 + 18 * i;
    body.push(
      `<line x1="${px(frame.left + 12)}" y1="${px(y - 4)}" x2="${px(frame.left + 40)}" y2="${px(y - 4)}" ` +
        `stroke="${COLORS[i]}" stroke-width="1.5"${i === 1 ? ' stroke-dasharray="5 3"' : ""}/>`,
      `<text class="legend" x="${px(frame.left + 46)}" y="${px(y)}" font-size="12">${escapeText(label)}</text>`,
    );
  });
  body.push(...axes(frame, "n", "|c_n|"));
  return svgDocument(WIDTH, HEIGHT, body);
}
