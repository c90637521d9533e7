import { Table, numeric } from "./table.js";
import { axes, heatColor, linearScale, px, svgDocument, title, Frame } from "./svg.js";

export const HUSIMI_HEADER = ["re_zeta", "im_zeta", "value"];

/** Rectangular grid recovered from the row-major CSV (re outer, im inner). */
export interface Grid {
  xs: number[];
  ys: number[];
  /** values[ix][iy] */
  values: number[][];
}

export function husimiGrid(table: Table): Grid {
  const ys: number[] = [];
  const first = numeric(table.rows[0][0]);
  for (const row of table.rows) {
    if (numeric(row[0]) !== first) break;
    ys.push(numeric(row[1]));
  }
  const ny = ys.length;
  if (ny === 0 || table.rows.length % ny !== 0) {
    throw new Error(`rows (${table.rows.length}) do not tile an inner axis of ${ny}`);
  }
  const nx = table.rows.length / ny;
  const xs: number[] = [];
  const values: number[][] = [];
  for (let ix = 0; ix < nx; ix++) {
    const colValues: number[] = [];
    const x = numeric(table.rows[ix * ny][0]);
    xs.push(x);
    for (let iy = 0; iy < ny; iy++) {
      const row = table.rows[ix * ny + iy];
      if (numeric(row[0]) !== x || numeric(row[1]) !== ys[iy]) {
        throw new Error(`row ${ix * ny + iy + 1} breaks the row-major grid pattern`);
      }
      colValues.push(numeric(row[2]));
    }
    values.push(colValues);
  }
  return { xs, ys, values };
}

export interface Segment {
  x0: number;
  y0: number;
  x1: number;
  y1: number;
}

/** Marching-squares level sets in data coordinates, one segment list per
 * level. Saddle cells are split by the cell-center average. */
export function computeContours(grid: Grid, levels: number[]): Segment[][] {
  const { xs, ys, values } = grid;
  const out: Segment[][] = levels.map(() => []);
  const interp = (a: number, b: number, va: number, vb: number, level: number) =>
    va === vb ? a : a + ((level - va) / (vb - va)) * (b - a);
  levels.forEach((level, li) => {
    const segments = out[li];
    for (let i = 0; i + 1 < xs.length; i++) {
      for (let j = 0; j + 1 < ys.length; j++) {
        const v00 = values[i][j];
        const v10 = values[i + 1][j];
        const v11 = values[i + 1][j + 1];
        const v01 = values[i][j + 1];
        let mask = 0;
        if (v00 > level) mask |= 1;
        if (v10 > level) mask |= 2;
        if (v11 > level) mask |= 4;
        if (v01 > level) mask |= 8;
        if (mask === 0 || mask === 15) continue;
        const bottom = () => ({
          x: interp(xs[i], xs[i + 1], v00, v10, level), y: ys[j],
        });
        const right = () => ({
          x: xs[i + 1], y: interp(ys[j], ys[j + 1], v10, v11, level),
        });
        const top = () => ({
          x: interp(xs[i], xs[i + 1], v01, v11, level), y: ys[j + 1],
        });
        const left = () => ({
          x: xs[i], y: interp(ys[j], ys[j + 1], v00, v01, level),
        });
        const add = (p: { x: number; y: number }, q: { x: number; y: number }) =>
          segments.push({ x0: p.x, y0: p.y, x1: q.x, y1: q.y });
        switch (mask) {
          case 1: case 14: add(left(), bottom()); break;
          case 2: case 13: add(bottom(), right()); break;
          case 3: case 12: add(left(), right()); break;
          case 4: case 11: add(right(), top()); break;
          case 6: case 9: add(bottom(), top()); break;
          case 7: case 8: add(top(), left()); break;
          case 5: case 10: {
            const center = (v00 + v10 + v11 + v01) / 4;
            const over = center > level;
            if ((mask === 5) === over) {
              add(left(), top());
              add(right(), bottom());
            } else {
              add(left(), bottom());
              add(right(), top());
            }
            break;
          }
        }
      }
    }
  });
  return out;
}

export function contourLevels(grid: Grid, count = 9): number[] {
  let lo = Infinity;
  let hi = -Infinity;
  for (const col of grid.values) {
    for (const v of col) {
      lo = Math.min(lo, v);
      hi = Math.max(hi, v);
    }
  }
  const levels: number[] = [];
  for (let i = 1; i <= count; i++) levels.push(lo + ((hi - lo) * i) / (count + 1));
  return levels;
}

const WIDTH = 960;
const HEIGHT = 480;
const PANEL = 430;

/** Isometric height-field quads, painted back to front. */
function surfacePanel(grid: Grid, originX: number, originY: number): string[] {
  const { xs, ys, values } = grid;
  const nx = xs.length;
  const ny = ys.length;
  let hi = -Infinity;
  let lo = Infinity;
  for (const col of values) {
    for (const v of col) {
      hi = Math.max(hi, v);
      lo = Math.min(lo, v);
    }
  }
  const span = hi - lo || 1;
  const steps = Math.max(nx, ny) - 1 || 1;
  const unit = PANEL / (2 * steps * Math.cos(Math.PI / 6));
  const cos = Math.cos(Math.PI / 6) * unit;
  const sin = Math.sin(Math.PI / 6) * unit;
  const heightScale = PANEL * 0.42;
  const project = (ix: number, iy: number) => {
    const z = (values[ix][iy] - lo) / span;
    return {
      u: originX + (ix - iy) * cos,
      v: originY + (ix + iy) * sin - z * heightScale,
      z,
    };
  };
  const parts: string[] = [];
  for (let depth = 0; depth <= 2 * steps - 2; depth++) {
    for (let ix = 0; ix + 1 < nx; ix++) {
      const iy = depth - ix;
      if (iy < 0 || iy + 1 >= ny) continue;
      const p00 = project(ix, iy);
      const p10 = project(ix + 1, iy);
      const p11 = project(ix + 1, iy + 1);
      const p01 = project(ix, iy + 1);
      const mean = (p00.z + p10.z + p11.z + p01.z) / 4;
      parts.push(
        `<path d="M ${px(p00.u)} ${px(p00.v)} L ${px(p10.u)} ${px(p10.v)} ` +
          `L ${px(p11.u)} ${px(p11.v)} L ${px(p01.u)} ${px(p01.v)} Z" ` +
          `fill="${heatColor(mean)}" stroke="${heatColor(mean * 0.85)}" stroke-width="0.4"/>`,
      );
    }
  }
  return parts;
}

export function renderHusimi(grid: Grid, heading?: string): string {
  const body = title(heading, WIDTH);
  body.push(...surfacePanel(grid, WIDTH / 4, 80));

  const xs = grid.xs;
  const ys = grid.ys;
  const frame: Frame = {
    left: WIDTH / 2 + 70,
    top: 50,
    right: WIDTH / 2 + 70 + 360,
    bottom: 410,
    x: linearScale(xs[0], xs[xs.length - 1], WIDTH / 2 + 70, WIDTH / 2 + 70 + 360),
    y: linearScale(ys[0], ys[ys.length - 1], 410, 50),
  };
  const levels = contourLevels(grid);
  const contours = computeContours(grid, levels);
  contours.forEach((segments, li) => {
    if (segments.length === 0) return;
    const d = segments
      .map(
        (s) =>
          `M ${px(frame.x(s.x0))} ${px(frame.y(s.y0))} L ${px(frame.x(s.x1))} ${px(frame.y(s.y1))}`,
      )
      .join(" ");
    const shade = heatColor((li + 1) / (levels.length + 1));
    body.push(`<path class="level" d="${d}" fill="none" stroke="${shade}" stroke-width="1.2"/>`);
  });
  body.push(...axes(frame, "Re zeta", "Im zeta"));
  return svgDocument(WIDTH, HEIGHT, body);
}
