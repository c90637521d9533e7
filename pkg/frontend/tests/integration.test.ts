import { beforeAll, describe, expect, it } from "vitest";
import { spawnSync } from "node:child_process";
import { existsSync, mkdtempSync, readFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

/** End-to-end: generate the reference datasets with the Python CLI, then
 * render every figure kind from the files alone. Requires `npm run build`
 * first (the pretest hook does it) and an installed spinsqueeze package. */

const frontendDir = dirname(dirname(fileURLToPath(import.meta.url)));
const dist = join(frontendDir, "dist");
const work = mkdtempSync(join(tmpdir(), "spinsqueeze-figures-"));

const ketCsv = join(work, "ket_k30.csv");
const husimiCsv = join(work, "husimi_k10.csv");
const quantumCsv = join(work, "quantum_k30.csv");
const semiclassicalCsv = join(work, "semiclassical_k30.csv");

function run(cmd: string, args: string[]) {
  const result = spawnSync(cmd, args, { encoding: "utf8", maxBuffer: 16 * 1024 * 1024 });
  if (result.error) throw result.error;
  return result;
}

function python(args: string[]) {
  const result = run("python3", ["-m", "spinsqueeze", ...args]);
  expect(result.status, result.stderr).toBe(0);
  return result;
}

function render(script: string, args: string[]) {
  return run("node", [join(dist, script), ...args]);
}

beforeAll(() => {
  python(["ket", "--k", "30", "--mu", "0.75", "--normalize", "--out", ketCsv]);
  python([
    "husimi", "--k", "10", "--mu", "0.25,0.5", "--normalize",
    "--grid=-2:2:81", "--out", husimiCsv,
  ]);
  python([
    "compare", "--k", "30", "--t", "1.2",
    "--out-quantum", quantumCsv, "--out-semiclassical", semiclassicalCsv,
  ]);
});

describe("figure rendering from CLI outputs", () => {
  it("renders the coefficient bar chart for k=30, mu=3/4", () => {
    const out = join(work, "fig_coeffs.svg");
    const result = render("render_coeffs.js", [ketCsv, "--out", out, "--title", "k=30"]);
    expect(result.status, result.stderr).toBe(0);
    expect(existsSync(out)).toBe(true);
    const svg = readFileSync(out, "utf8");
    expect(svg.startsWith("<svg ")).toBe(true);
    expect(svg.match(/class="bar"/g)).toHaveLength(31);
  });

  it("renders the Husimi surface and contours for k=10, mu=1/4+i/2", () => {
    const out = join(work, "fig_husimi.svg");
    const result = render("render_husimi.js", [husimiCsv, "--out", out]);
    expect(result.status, result.stderr).toBe(0);
    const svg = readFileSync(out, "utf8");
    expect(svg.startsWith("<svg ")).toBe(true);
    expect(svg).toContain('class="level"');
  });

  it("renders the propagation comparison for k=30, t=1.2", () => {
    const out = join(work, "fig_compare.svg");
    const result = render("render_compare.js", [
      quantumCsv, semiclassicalCsv,
      "--out", out, "--labels", "quantum,semiclassical",
    ]);
    expect(result.status, result.stderr).toBe(0);
    const svg = readFileSync(out, "utf8");
    expect(svg.match(/class="series"/g)).toHaveLength(2);
    expect(svg).toContain(">quantum</text>");
  });
});

describe("--dump-table round trip", () => {
  it("echoes the state CSV bit-identically", () => {
    const result = render("render_coeffs.js", [ketCsv, "--dump-table"]);
    expect(result.status).toBe(0);
    expect(result.stdout).toBe(readFileSync(ketCsv, "utf8"));
  });

  it("echoes the Husimi CSV bit-identically", () => {
    const result = render("render_husimi.js", [husimiCsv, "--dump-table"]);
    expect(result.status).toBe(0);
    expect(result.stdout).toBe(readFileSync(husimiCsv, "utf8"));
  });

  it("echoes both comparison CSVs in argument order", () => {
    const result = render("render_compare.js", [quantumCsv, semiclassicalCsv, "--dump-table"]);
    expect(result.status).toBe(0);
    expect(result.stdout).toBe(
      readFileSync(quantumCsv, "utf8") + readFileSync(semiclassicalCsv, "utf8"),
    );
  });
});

describe("failure modes", () => {
  it("rejects a schema mismatch with a message and exit 1", () => {
    const result = render("render_coeffs.js", [husimiCsv, "--out", join(work, "bad.svg")]);
    expect(result.status).toBe(1);
    expect(result.stderr).toMatch(/expected header/);
  });

  it("rejects a missing input file", () => {
    const result = render("render_husimi.js", [join(work, "nope.csv"), "--out", join(work, "x.svg")]);
    expect(result.status).toBe(1);
    expect(result.stderr).toMatch(/error:/);
  });

  it("requires --out when not dumping", () => {
    const result = render("render_coeffs.js", [ketCsv]);
    expect(result.status).toBe(1);
    expect(result.stderr).toMatch(/--out is required/);
  });
});
