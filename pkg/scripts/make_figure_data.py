#!/usr/bin/env python3
"""Produce the three figure datasets through the CLI, ready for plotting.

Writes into --outdir (default ./data):

  fig1_ket.csv            squeezed-ket components, k=30, mu=3/4
  fig2_husimi.csv         Husimi density grid, k=10, mu=1/4 + i/2
  fig3_report.json        quantum vs semiclassical report, k=30, t=1.2
  fig3_quantum.csv        propagated state (normalized)
  fig3_semiclassical.csv  squeezed-ket prediction (normalized)

Every file comes out of the command-line surface, so the plotting side
sees exactly what an external consumer would.
"""

import argparse
import pathlib
import sys

from spinsqueeze import cli


def main():
    parser = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    parser.add_argument("--outdir", default="data")
    args = parser.parse_args()
    outdir = pathlib.Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)

    calls = [
        ["ket", "--k", "30", "--mu", "0.75", "--normalize",
         "--out", str(outdir / "fig1_ket.csv")],
        ["husimi", "--k", "10", "--mu", "0.25,0.5", "--normalize",
         "--grid=-2:2:81", "--out", str(outdir / "fig2_husimi.csv")],
        ["compare", "--k", "30", "--t", "1.2",
         "--out", str(outdir / "fig3_report.json"),
         "--out-quantum", str(outdir / "fig3_quantum.csv"),
         "--out-semiclassical", str(outdir / "fig3_semiclassical.csv")],
    ]
    for call in calls:
        code = cli.main(call)
        if code != 0:
            print(f"step failed with exit code {code}: {call}", file=sys.stderr)
            return code
        print("wrote", call[call.index("--out") + 1])
    return 0


if __name__ == "__main__":
    sys.exit(main())
