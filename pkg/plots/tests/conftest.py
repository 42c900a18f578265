"""Shared helpers: hand-written files in the funtf CLI formats."""

import numpy as np

# Exact polytope output of `funtf polytope -d 3 -N 5 --box`.
HREP_35_JSON = (
    '{"d":3,"N":5,"order":[[2,1],[3,2]],'
    '"A":[[-1,0],[1,0],[-1,1],[-1,-1],[1,-1],[0,1],[0,-1]],'
    '"b":[-1,1.6666666666666667,0,-2,0.66666666666666674,'
    '1.3333333333333333,-0.66666666666666674],'
    '"labels":["mu[2,1] >= mu[1,1]","mu[3,1] >= mu[2,1]","mu[2,1] >= mu[3,2]",'
    '"mu[3,2] >= mu[2,2]","mu[2,2] >= mu[3,3]","mu[3,3] >= mu[2,3]",'
    '"mu[4,3] >= mu[3,3]"],'
    '"box":{"lo":[1,0.66666666666666674],"hi":[1.6666666666666667,1.3333333333333333]}}'
)


def write_histogram_csv(path, d=3, N=5, counts=(4, 7, 2), hi=None):
    """Histogram CSV matching the coherence command's layout."""
    if hi is None:
        hi = min(1.0, (N - d) / d)
    edges = np.linspace(0.0, hi, len(counts) + 1)
    lines = [
        f"# kind=coherence_histogram d={d} N={N} count={sum(counts)} "
        f"bins={len(counts)} lo=0 hi={hi!r}",
        "bin_lo,bin_hi,count",
    ]
    for i, c in enumerate(counts):
        lines.append(f"{float(edges[i])!r},{float(edges[i + 1])!r},{int(c)}")
    path.write_text("\n".join(lines) + "\n")
    return path


def write_grid_csv(path, matrix, d=3, N=5, mu="1.589,1.009", bound=None):
    """Fiber grid CSV matching the heatmap command's layout."""
    matrix = np.atleast_2d(matrix)
    if bound is None:
        bound = min(1.0, (N - d) / d)
    lines = [f"# kind=fiber_heatmap d={d} N={N} mu={mu} grid={matrix.shape[0]} bound={bound!r}"]
    for row in matrix:
        lines.append(",".join(repr(float(v)) for v in row))
    path.write_text("\n".join(lines) + "\n")
    return path


def write_hrep_json(path, text=HREP_35_JSON):
    path.write_text(text)
    return path
