/** Deterministic SVG assembly: fixed-precision coordinates, no ids, no
 * timestamps, element order fixed by the caller. */

export const px = (v: number): string => {
  const s = v.toFixed(2);
  return s === "-0.00" ? "0.00" : s;
};

export function svgDocument(width: number, height: number, body: string[]): string {
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
    `viewBox="0 0 ${width} ${height}" font-family="sans-serif">\n` +
    `<rect width="${width}" height="${height}" fill="white"/>\n` +
    body.join("\n") +
    "\n</svg>\n"
  );
}

export interface Scale {
  (value: number): number;
  domain: [number, number];
}

export function linearScale(d0: number, d1: number, r0: number, r1: number): Scale {
  const span = d1 - d0;
  const f = ((value: number) =>
    span === 0 ? (r0 + r1) / 2 : r0 + ((value - d0) / span) * (r1 - r0)) as Scale;
  f.domain = [d0, d1];
  return f;
}

/** Round ticks at a 1/2/5 step covering [lo, hi]. */
export function ticks(lo: number, hi: number, target = 5): number[] {
  if (!(hi > lo)) return [lo];
  const raw = (hi - lo) / target;
  const mag = Math.pow(10, Math.floor(Math.log10(raw)));
  const step = [1, 2, 5, 10].map((m) => m * mag).find((s) => s >= raw) ?? 10 * mag;
  const out: number[] = [];
  for (let v = Math.ceil(lo / step) * step; v <= hi + step * 1e-9; v += step) {
    out.push(Math.abs(v) < step * 1e-9 ? 0 : v);
  }
  return out;
}

export function tickLabel(v: number): string {
  const abs = Math.abs(v);
  if (v !== 0 && (abs >= 1e4 || abs < 1e-3)) return v.toExponential(1);
  return String(parseFloat(v.toPrecision(6)));
}

export interface Frame {
  x: Scale;
  y: Scale;
  left: number;
  top: number;
  right: number;
  bottom: number;
}

/** Axis lines, ticks and labels around a plotting frame. */
export function axes(frame: Frame, xLabel: string, yLabel: string): string[] {
  const { x, y, left, top, right, bottom } = frame;
  const parts: string[] = [];
  parts.push(
    `<path d="M ${px(left)} ${px(top)} L ${px(left)} ${px(bottom)} L ${px(right)} ${px(bottom)}" ` +
      `fill="none" stroke="black" stroke-width="1"/>`,
  );
  for (const t of ticks(x.domain[0], x.domain[1])) {
    const tx = x(t);
    parts.push(
      `<line x1="${px(tx)}" y1="${px(bottom)}" x2="${px(tx)}" y2="${px(bottom + 4)}" stroke="black"/>`,
      `<text x="${px(tx)}" y="${px(bottom + 16)}" font-size="11" text-anchor="middle">${tickLabel(t)}</text>`,
    );
  }
  for (const t of ticks(y.domain[0], y.domain[1])) {
    const ty = y(t);
    parts.push(
      `<line x1="${px(left - 4)}" y1="${px(ty)}" x2="${px(left)}" y2="${px(ty)}" stroke="black"/>`,
      `<text x="${px(left - 7)}" y="${px(ty + 3.5)}" font-size="11" text-anchor="end">${tickLabel(t)}</text>`,
    );
  }
  parts.push(
    `<text x="${px((left + right) / 2)}" y="${px(bottom + 32)}" font-size="12" text-anchor="middle">${xLabel}</text>`,
    `<text x="14" y="${px((top + bottom) / 2)}" font-size="12" text-anchor="middle" ` +
      `transform="rotate(-90 14 ${px((top + bottom) / 2)})">${yLabel}</text>`,
  );
  return parts;
}

export function title(text: string | undefined, width: number): string[] {
  if (!text) return [];
  return [
    `<text x="${px(width / 2)}" y="18" font-size="14" text-anchor="middle">${escapeText(text)}</text>`,
  ];
}

export function escapeText(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

/** Two-stop-per-segment color ramp from dark blue through teal to warm
 * yellow; input clamped to [0, 1]. */
export function heatColor(t: number): string {
  const clamped = Math.min(1, Math.max(0, t));
  const stops: Array<[number, [number, number, number]]> = [
    [0.0, [24, 39, 98]],
    [0.5, [33, 145, 140]],
    [1.0, [253, 231, 37]],
  ];
  let i = 0;
  while (i < stops.length - 2 && clamped > stops[i + 1][0]) i++;
  const [t0, c0] = stops[i];
  const [t1, c1] = stops[i + 1];
  const u = t1 === t0 ? 0 : (clamped - t0) / (t1 - t0);
  const mix = c0.map((v, j) => Math.round(v + u * (c1[j] - v)));
  return `rgb(${mix[0]},${mix[1]},${mix[2]})`;
}
