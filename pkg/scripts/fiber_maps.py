"""Emit the (3,5) polytope H-rep and coherence heatmaps on two fibers.

The two base points are regular values of the eigenstep map where the
fiber is a full 2-torus; the grids scan that torus.  Output files use
the funtf CLI formats.
"""

import argparse
import pathlib
import sys

from funtf.cli import main as funtf

REGULAR_VALUES = [(1.589, 1.009), (1.361, 0.711)]


def run(argv):
    rc = funtf(argv)
    if rc != 0:
        raise SystemExit(f"funtf {' '.join(argv)} exited with {rc}")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--grid", type=int, default=96, help="torus grid per axis")
    ap.add_argument("--data-dir", default="data")
    args = ap.parse_args()

    out = pathlib.Path(args.data_dir)
    out.mkdir(parents=True, exist_ok=True)

    hrep = out / "polytope35.json"
    run(["polytope", "-d", "3", "-N", "5", "--box", "--out", str(hrep)])
    print(f"H-rep: {hrep}", file=sys.stderr)

    for y1, y2 in REGULAR_VALUES:
        tag = f"{y1:.3f}_{y2:.3f}".replace(".", "p")
        path = out / f"heatmap_{tag}.csv"
        run([
            "heatmap", "-d", "3", "-N", "5",
            "--mu", f"{y1},{y2}", "--grid", str(args.grid),
            "--out", str(path),
        ])
        print(f"fiber ({y1}, {y2}): {path}", file=sys.stderr)


if __name__ == "__main__":
    main()
