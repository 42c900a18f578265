"""Torus action on the fiber of frames over one eigenstep table.

For an isolated eigenvalue mu_{k,j} of the partial frame operator S_k
with unit eigenvector u, multiplying the first k frame vectors by

    exp(i t u u*) = I + (e^{it} - 1) u u*

changes the frame but not its eigenstep table: the multiplier commutes
with S_k, so S_1..S_k are conjugated (spectra fixed) and S_{k+1}..S_N
are untouched.  Composing one such rotation per independent table
position, in canonical order, sweeps out the torus orbit inside the
fiber.  The rank-1 form above is applied directly; no general matrix
exponential is ever formed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import IsolationError
from .eigensteps import IndexSet
from .frames import Frame, partial_frame_operator
from .lift import fix_phase

__all__ = [
    "TorusElement",
    "random_torus_element",
    "circle_action",
    "torus_action",
    "default_tol_iso",
]


def default_tol_iso(d: int, N: int) -> float:
    """Isolation tolerance for targeted eigenvalues, scaled by N/d."""
    return 1e-10 * (N / d)


@dataclass(frozen=True)
class TorusElement:
    """One rotation angle per independent table position.

    Angles are reduced modulo 2*pi at construction; the action is
    2*pi-periodic in each coordinate.
    """

    index_set: IndexSet
    angles: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.angles, dtype=np.float64).reshape(-1)
        if a.shape[0] != len(self.index_set):
            raise ValueError(f"expected {len(self.index_set)} angles, got {a.shape[0]}")
        a = np.mod(a, 2.0 * np.pi)
        a.setflags(write=False)
        object.__setattr__(self, "angles", a)


def random_torus_element(iset: IndexSet, rng: np.random.Generator) -> TorusElement:
    """Haar-uniform torus element: independent Uniform[0, 2*pi) angles."""
    return TorusElement(iset, rng.uniform(0.0, 2.0 * np.pi, len(iset)))


def circle_action(
    frame: Frame,
    k: int,
    j: int,
    t: float,
    tol_iso: float | None = None,
) -> Frame:
    """Rotate the first k frame vectors about the (k, j) eigenspace.

    Requires the j-th descending eigenvalue of S_k to be isolated from
    its neighbors by more than tol_iso, so the eigenvector (and hence
    the action) is well defined.  Indices are 1-based.
    """
    d, n = frame.d, frame.N
    if not 1 <= k <= n:
        raise ValueError(f"k must be in 1..{n}, got {k}")
    if not 1 <= j <= d:
        raise ValueError(f"j must be in 1..{d}, got {j}")
    if tol_iso is None:
        tol_iso = default_tol_iso(d, n)
    s = partial_frame_operator(frame, k)
    vals, vecs = np.linalg.eigh(s)
    vals = vals[::-1]
    vecs = vecs[:, ::-1]
    gap = np.inf
    if j >= 2:
        gap = min(gap, vals[j - 2] - vals[j - 1])
    if j <= d - 1:
        gap = min(gap, vals[j - 1] - vals[j])
    if gap <= tol_iso:
        raise IsolationError(k, j, float(gap), tol_iso)
    if t == 0.0:
        return Frame(frame.vectors.copy())
    u = fix_phase(vecs[:, j - 1])
    new = np.array(frame.vectors)
    scale = np.exp(1j * t) - 1.0
    new[:, :k] += scale * np.outer(u, u.conj() @ new[:, :k])
    return Frame(new)


def torus_action(
    frame: Frame,
    theta: TorusElement,
    tol_iso: float | None = None,
) -> Frame:
    """Apply one circle action per independent position, canonical order.

    The partial frame operator is recomputed after each rotation, so
    later actions see the already-rotated frame.  The eigenstep table of
    the result matches the input's within numerical error.
    """
    iset = theta.index_set
    if (frame.d, frame.N) != (iset.d, iset.N):
        raise ValueError(
            f"frame is ({frame.d}, {frame.N}) but angles are for "
            f"({iset.d}, {iset.N})"
        )
    for (k, j), t in zip(iset.pairs, theta.angles):
        frame = circle_action(frame, k, j, float(t), tol_iso)
    return frame
