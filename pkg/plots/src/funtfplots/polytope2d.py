"""Shaded eigenstep polytope from a 2-D H-rep JSON.

Invoke with the file written by ``funtf polytope -d 3 -N 5 --box``:

    python3 -m funtfplots.polytope2d data/polytope35.json -o region.png
"""

import argparse
import sys

import numpy as np
from matplotlib.figure import Figure

from .io import PlotJob, read_hrep

MEMBER_TOL = 1e-12


def contains(hrep: dict, point) -> bool:
    """Evaluate the file's inequalities A x <= b at one point."""
    point = np.asarray(point, dtype=np.float64)
    return bool(np.all(hrep["A"] @ point <= hrep["b"] + MEMBER_TOL))


def region_mask(hrep: dict, xs, ys):
    """Boolean membership over the grid xs x ys (shape len(ys) x len(xs))."""
    gx, gy = np.meshgrid(xs, ys)
    pts = np.stack([gx.ravel(), gy.ravel()])
    ok = np.all(hrep["A"] @ pts <= hrep["b"][:, None] + MEMBER_TOL, axis=0)
    return ok.reshape(gy.shape)


def _window(hrep: dict):
    """Plot window: the stored box, else bounds read off single-row constraints."""
    if "box" in hrep:
        lo = np.array(hrep["box"]["lo"], dtype=np.float64)
        hi = np.array(hrep["box"]["hi"], dtype=np.float64)
        return lo, hi
    A, b = hrep["A"], hrep["b"]
    lo = np.full(2, np.nan)
    hi = np.full(2, np.nan)
    for row, rhs in zip(A, b):
        nz = np.nonzero(row)[0]
        if len(nz) != 1:
            continue
        i, coef = nz[0], row[nz[0]]
        if coef > 0:
            hi[i] = np.nanmin([hi[i], rhs / coef])
        else:
            lo[i] = np.nanmax([lo[i], rhs / coef])
    if np.any(np.isnan(lo)) or np.any(np.isnan(hi)):
        raise ValueError("H-rep has no box and no simple bounds; cannot pick a window")
    return lo, hi


def plot_polytope_region(hrep: dict, out=None, resolution: int = 600):
    """Shade the feasible region of a 2-D H-rep. Returns the Figure."""
    if hrep["A"].shape[1] != 2:
        raise ValueError(
            f"can only draw 2-D polytopes, H-rep has {hrep['A'].shape[1]} coordinates"
        )
    lo, hi = _window(hrep)
    pad = 0.06 * (hi - lo)
    xs = np.linspace(lo[0] - pad[0], hi[0] + pad[0], resolution)
    ys = np.linspace(lo[1] - pad[1], hi[1] + pad[1], resolution)
    mask = region_mask(hrep, xs, ys)

    fig = Figure(figsize=(5.2, 4.4))
    ax = fig.subplots()
    ax.imshow(
        mask,
        origin="lower",
        extent=(xs[0], xs[-1], ys[0], ys[-1]),
        cmap="Blues",
        vmin=0.0,
        vmax=1.6,
        aspect="auto",
        interpolation="nearest",
    )
    ax.contour(xs, ys, mask.astype(float), levels=[0.5],
               colors="#1f3d5c", linewidths=1.2)
    (k1, j1), (k2, j2) = hrep["order"][0], hrep["order"][1]
    ax.set_xlabel(f"mu[{k1},{j1}]")
    ax.set_ylabel(f"mu[{k2},{j2}]")
    ax.set_title(f"eigenstep polytope, d={hrep['d']}, N={hrep['N']}")
    fig.tight_layout()
    if out is not None:
        fig.savefig(out, dpi=150)
    return fig


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("hrep", help="H-rep JSON from the polytope command")
    ap.add_argument("-o", "--out", required=True, help="output image path")
    ap.add_argument("--resolution", type=int, default=600)
    args = ap.parse_args(argv)

    try:
        job = PlotJob(inputs=[args.hrep], figure="polytope2d", output=args.out)
        plot_polytope_region(read_hrep(job.inputs[0]), out=job.output,
                             resolution=args.resolution)
    except (OSError, ValueError) as err:
        print(f"polytope2d: error: {err}", file=sys.stderr)
        return 1
    print(job.output)
    return 0


if __name__ == "__main__":
    sys.exit(main())
