"""Grid of coherence histograms, one panel per (d, N) pair.

Invoke with the histogram CSVs written by ``funtf coherence``:

    python3 -m funtfplots.histogram_grid data/coherence_*.csv -o coherences.png
"""

import argparse
import math
import sys

import numpy as np
from matplotlib.figure import Figure

from .io import FormatError, PlotJob, read_histogram


def coherence_cap(d: int, N: int) -> float:
    """Upper end of the coherence range, min(1, (N-d)/d)."""
    return min(1.0, (N - d) / d)


def plot_histogram_grid(inputs, layout=None, out=None):
    """Render histograms for ``inputs`` = sequence of (d, N, csv path).

    Each panel gets x-range [0, min(1, (N-d)/d)]. ``layout`` is
    (rows, cols); default is up to three columns. Returns the Figure.
    """
    inputs = list(inputs)
    if not inputs:
        raise ValueError("need at least one histogram input")
    if layout is None:
        cols = min(3, len(inputs))
        rows = math.ceil(len(inputs) / cols)
    else:
        rows, cols = layout
        if rows * cols < len(inputs):
            raise ValueError(f"layout {rows}x{cols} too small for {len(inputs)} panels")

    fig = Figure(figsize=(3.4 * cols, 2.6 * rows))
    axes = fig.subplots(rows, cols, squeeze=False).ravel()
    for ax in axes[len(inputs):]:
        ax.set_axis_off()

    for (d, N, path), ax in zip(inputs, axes):
        edges, counts, meta = read_histogram(path)
        for key, want in (("d", d), ("N", N)):
            if key in meta and int(meta[key]) != want:
                raise FormatError(
                    f"{path}: file metadata says {key}={meta[key]}, panel wants {want}"
                )
        ax.bar(edges[:-1], counts, width=np.diff(edges), align="edge",
               color="#4878a8", edgecolor="none")
        ax.set_xlim(0.0, coherence_cap(d, N))
        ax.set_title(f"d={d}, N={N}", fontsize=10)
        ax.set_yticks([])
    fig.supxlabel("coherence")
    fig.tight_layout()
    if out is not None:
        fig.savefig(out, dpi=150)
    return fig


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("csvs", nargs="+", help="coherence histogram CSVs")
    ap.add_argument("-o", "--out", required=True, help="output image path")
    ap.add_argument("--rows", type=int, default=None)
    ap.add_argument("--cols", type=int, default=None)
    args = ap.parse_args(argv)

    try:
        job = PlotJob(inputs=args.csvs, figure="histogram_grid", output=args.out)
        triples = []
        for path in job.inputs:
            _, _, meta = read_histogram(path)
            if "d" not in meta or "N" not in meta:
                raise FormatError(f"{path}: metadata lacks d= and N=")
            triples.append((int(meta["d"]), int(meta["N"]), path))
        layout = None
        if args.rows is not None or args.cols is not None:
            cols = args.cols or min(3, len(triples))
            rows = args.rows or math.ceil(len(triples) / cols)
            layout = (rows, cols)
        plot_histogram_grid(triples, layout, out=job.output)
    except (OSError, ValueError) as err:
        print(f"histogram_grid: error: {err}", file=sys.stderr)
        return 1
    print(job.output)
    return 0


if __name__ == "__main__":
    sys.exit(main())
