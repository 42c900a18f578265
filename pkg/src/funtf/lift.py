"""Deterministic lift of an eigenstep table to a frame.

Appending a unit vector f to a partial frame with operator S shifts the
characteristic polynomial by

    p_next(x) = p(x) * (1 - sum_mu w_mu / (x - mu)),

where mu runs over the distinct eigenvalues of S and ``w_mu`` is the
squared norm of the projection of f onto the mu-eigenspace.  Reading the
identity backwards, each weight is a residue of the ratio of consecutive
characteristic polynomials:

    w_nu = -lim_{x -> nu} (x - nu) * p_next(x) / p(x).

With both spectra known this collapses to a finite product over the two
rows with matched multiplicities cancelled, which is how
:func:`limit_weight` computes it.  Choosing one canonical eigenvector
per eigenspace (phase fixed) then rebuilds one frame per table: the
lift is deterministic, and randomness enters only through the table and
the later torus action.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InterlacingError, LiftRoundTripError, NegativeWeightError
from .eigensteps import (
    EigenstepTable,
    IndependentEigensteps,
    complete_table,
    eigensteps_of,
    require_valid,
)
from .frames import Frame

__all__ = [
    "SpectralDecomposition",
    "decompose",
    "fix_phase",
    "limit_weight",
    "lift_to_fiber",
    "default_tol_group",
]


def default_tol_group(d: int, N: int) -> float:
    """Eigenvalue grouping tolerance, scaled by the spectral range N/d."""
    return 1e-8 * max(1.0, N / d)


def fix_phase(v: np.ndarray) -> np.ndarray:
    """Rotate a vector so its largest-modulus entry is real positive.

    Ties take the lowest index, making the choice deterministic; the
    result is the canonical representative of {e^{it} v}.
    """
    idx = int(np.argmax(np.abs(v)))
    mod = abs(v[idx])
    if mod == 0.0:
        raise ValueError("cannot fix the phase of the zero vector")
    return v * (v[idx].conjugate() / mod)


def group_ranges(values, tol_group: float) -> tuple:
    """Cluster a descending value sequence into equal-value runs.

    Consecutive values closer than tol_group share a run.  Returns
    (start, stop) index pairs covering the sequence.
    """
    values = np.asarray(values, dtype=np.float64)
    ranges = []
    start = 0
    for i in range(1, len(values)):
        if values[i - 1] - values[i] > tol_group:
            ranges.append((start, i))
            start = i
    ranges.append((start, len(values)))
    return tuple(ranges)


@dataclass(frozen=True)
class SpectralDecomposition:
    """Descending eigensystem of a Hermitian matrix with grouped spectrum.

    ``groups`` lists (start, stop) column ranges of eigenvectors sharing
    an eigenvalue up to the grouping tolerance used to build it.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    groups: tuple

    def canonical_vector(self, group: int) -> np.ndarray:
        """Phase-fixed first eigenvector column of the given group."""
        start, _ = self.groups[group]
        return fix_phase(self.eigenvectors[:, start])


def decompose(s: np.ndarray, tol_group: float) -> SpectralDecomposition:
    """Eigendecompose a Hermitian matrix, descending, with grouping."""
    vals, vecs = np.linalg.eigh(s)
    vals = vals[::-1].copy()
    vecs = vecs[:, ::-1].copy()
    return SpectralDecomposition(
        eigenvalues=vals,
        eigenvectors=vecs,
        groups=group_ranges(vals, tol_group),
    )


def limit_weight(row_k, row_k1, mu: float, tol_group: float) -> float:
    """Squared projection weight of the appended vector on one eigenspace.

    ``row_k`` and ``row_k1`` are consecutive table rows (multisets of
    size d, descending or not); ``mu`` must be an entry of ``row_k`` up
    to tol_group.  Multiplicities m and m' of mu in the two rows decide:
    m' >= m gives weight 0, m' = m-1 gives the residue product, anything
    lower violates interlacing.
    """
    row_k = np.asarray(row_k, dtype=np.float64)
    row_k1 = np.asarray(row_k1, dtype=np.float64)
    near_k = np.abs(row_k - mu) <= tol_group
    near_k1 = np.abs(row_k1 - mu) <= tol_group
    m = int(near_k.sum())
    m1 = int(near_k1.sum())
    if m == 0:
        raise ValueError(f"mu={mu!r} is not an entry of row_k within {tol_group:g}")
    if m1 >= m:
        return 0.0
    if m1 < m - 1:
        raise InterlacingError(
            f"multiplicity of {mu:.6g} drops from {m} to {m1}; rows do not interlace"
        )
    num = float(np.prod(mu - row_k1[~near_k1]))
    den = float(np.prod(mu - row_k[~near_k]))
    w = -num / den
    if w < -tol_group:
        raise NegativeWeightError(
            f"weight {w:.3e} at mu={mu:.6g} negative beyond tolerance {tol_group:g}"
        )
    return max(w, 0.0)


def lift_to_fiber(
    x: IndependentEigensteps,
    tol: float = 1e-8,
    tol_group: float | None = None,
) -> Frame:
    """One frame whose eigenstep table completes the given values.

    Starts from f_1 = e_1 and appends one vector per row: decompose the
    running partial frame operator, weight each eigenspace by
    :func:`limit_weight`, and combine the canonical eigenvectors.  The
    eigenvalue multiplicity pattern is read off the exact completed
    table rather than the floating spectra.  The built frame is checked
    to reproduce its table within tol before being returned.
    """
    iset = x.index_set
    d, n = iset.d, iset.N
    if tol_group is None:
        tol_group = default_tol_group(d, n)
    table = complete_table(x)
    require_valid(table, tol)

    vectors = np.zeros((d, n), dtype=np.complex128)
    vectors[0, 0] = 1.0
    s = np.outer(vectors[:, 0], vectors[:, 0].conj())
    for k in range(1, n):
        row_k = table.mu[k - 1]
        row_k1 = table.mu[k]
        ranges = group_ranges(row_k, tol_group)
        vals, vecs = np.linalg.eigh(s)
        dec = SpectralDecomposition(
            eigenvalues=vals[::-1].copy(),
            eigenvectors=vecs[:, ::-1].copy(),
            groups=ranges,
        )
        f = np.zeros(d, dtype=np.complex128)
        for g, (start, stop) in enumerate(ranges):
            mu = float(row_k[start])
            w = limit_weight(row_k, row_k1, mu, tol_group)
            if w > 0.0:
                f += np.sqrt(w) * dec.canonical_vector(g)
        vectors[:, k] = f
        s = s + np.outer(f, f.conj())

    frame = Frame(vectors)
    recomputed = eigensteps_of(frame)
    residual = float(np.max(np.abs(recomputed.mu - table.mu)))
    if residual > tol:
        raise LiftRoundTripError(
            f"lift round-trip residual {residual:.3e} exceeds {tol:g}; "
            f"table is too close to a degenerate face"
        )
    return frame
