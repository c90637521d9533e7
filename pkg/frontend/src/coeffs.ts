import { Table, column } from "./table.js";
import { Frame, axes, linearScale, px, svgDocument, title } from "./svg.js";

export const STATE_HEADER = ["n", "re", "im"];

export interface StateSeries {
  n: number[];
  magnitude: number[];
}

/** Component magnitudes |c_n| from a state table (CSV n,re,im). */
export function stateSeries(table: Table): StateSeries {
  const n = column(table, "n");
  const re = column(table, "re");
  const im = column(table, "im");
  n.forEach((value, i) => {
    if (value !== i) throw new Error(`component index ${value} at row ${i + 1}, expected ${i}`);
  });
  return { n, magnitude: re.map((r, i) => Math.hypot(r, im[i])) };
}

const WIDTH = 640;
const HEIGHT = 400;

export function renderCoeffs(table: Table, heading?: string): string {
  const series = stateSeries(table);
  const k = series.n.length - 1;
  const top = heading ? 30 : 16;
  const frame: Frame = {
    left: 56,
    top,
    right: WIDTH - 16,
    bottom: HEIGHT - 44,
    x: linearScale(-0.5, k + 0.5, 56, WIDTH - 16),
    y: linearScale(0, Math.max(...series.magnitude) * 1.05 || 1, HEIGHT - 44, top),
  };
  const body = title(heading, WIDTH);
  const slot = (frame.right - frame.left) / (k + 1);
  const barWidth = Math.max(1, slot * 0.8);
  for (let i = 0; i <= k; i++) {
    const xc = frame.x(i);
    const y = frame.y(series.magnitude[i]);
    body.push(
      `<rect class="bar" x="${px(xc - barWidth / 2)}" y="${px(y)}" ` +
        `width="${px(barWidth)}" height="${px(frame.bottom - y)}" fill="#2a6f97"/>`,
    );
  }
  body.push(...axes(frame, "n", "|c_n|"));
  return svgDocument(WIDTH, HEIGHT, body);
}
