"""Coherence heat map over one torus fiber from a grid CSV.

Invoke with a file written by ``funtf heatmap``:

    python3 -m funtfplots.heatmap data/heatmap_1p589_1p009.csv -o fiber.png
"""

import argparse
import sys
import warnings

import numpy as np
from matplotlib.figure import Figure

from .io import FormatError, PlotJob, read_grid

CAP_SLACK = 1e-9


def color_cap(meta: dict) -> float:
    """Color-scale ceiling: the bound recorded in the file, else min(1,(N-d)/d)."""
    if "bound" in meta:
        return float(meta["bound"])
    try:
        d, n = int(meta["d"]), int(meta["N"])
    except KeyError as err:
        raise FormatError(f"grid metadata lacks both bound= and {err}") from err
    return min(1.0, (n - d) / d)


def plot_heatmap(path, out=None):
    """Render one fiber grid CSV as a heat map over [0, 2pi)^2.

    The color scale is capped at the coherence bound; values above it
    mean the producing pipeline is broken, so a warning is emitted.
    Returns the Figure.
    """
    matrix, meta = read_grid(path)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise ValueError(f"{path}: fiber grid must be square, got {matrix.shape}")
    cap = color_cap(meta)
    over = int(np.sum(matrix > cap + CAP_SLACK))
    if over:
        warnings.warn(
            f"{path}: {over} grid values exceed the coherence bound {cap:.6g}",
            stacklevel=2,
        )

    fig = Figure(figsize=(5.4, 4.4))
    ax = fig.subplots()
    im = ax.imshow(
        matrix,
        origin="lower",
        extent=(0.0, 2.0 * np.pi, 0.0, 2.0 * np.pi),
        vmin=0.0,
        vmax=cap,
        cmap="viridis",
        interpolation="nearest",
    )
    ticks = [0.0, np.pi, 2.0 * np.pi]
    for axis in (ax.xaxis, ax.yaxis):
        axis.set_ticks(ticks)
        axis.set_ticklabels(["0", "pi", "2pi"])
    ax.set_xlabel("t1")
    ax.set_ylabel("t2")
    title = "fiber coherence"
    if "mu" in meta:
        title += f" at mu = ({meta['mu'].replace(',', ', ')})"
    ax.set_title(title)
    fig.colorbar(im, ax=ax, label="coherence")
    fig.tight_layout()
    if out is not None:
        fig.savefig(out, dpi=150)
    return fig


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("csv", help="fiber grid CSV from the heatmap command")
    ap.add_argument("-o", "--out", required=True, help="output image path")
    args = ap.parse_args(argv)

    try:
        job = PlotJob(inputs=[args.csv], figure="heatmap", output=args.out)
        plot_heatmap(job.inputs[0], out=job.output)
    except (OSError, ValueError) as err:
        print(f"heatmap: error: {err}", file=sys.stderr)
        return 1
    print(job.output)
    return 0


if __name__ == "__main__":
    sys.exit(main())
