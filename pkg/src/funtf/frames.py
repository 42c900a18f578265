"""Complex frames and their diagnostics.

A frame here is a ``d x N`` complex matrix whose columns are the frame
vectors.  The package works with finite unit-norm tight frames (FUNTFs):
every column has norm 1 and the frame operator ``F F*`` equals
``(N/d) I``.  This module holds the frame container plus the checks used
to certify sampler output: unit-norm deviation, tightness residual,
coherence, and full spark.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import UnitNormError

__all__ = [
    "Frame",
    "frame_operator",
    "partial_frame_operator",
    "gram",
    "coherence",
    "coherence_bound",
    "is_unit_norm",
    "is_tight",
    "is_full_spark",
    "random_unit_norm_frame",
    "random_unitary",
    "UnitNormCheck",
    "TightnessCheck",
    "SparkCheck",
]

# Enumerating all d x d minors is exponential; refuse beyond this many.
_SPARK_COMB_LIMIT = 10**6


@dataclass(frozen=True)
class Frame:
    """A finite frame for C^d, stored as a d x N complex matrix.

    Columns are the frame vectors in insertion order.  The container is
    immutable; operations that transform a frame return a new instance.
    """

    vectors: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.vectors, dtype=np.complex128)
        if v.ndim != 2:
            raise ValueError(f"frame matrix must be 2-d, got shape {v.shape}")
        d, n = v.shape
        if d < 1 or n < d:
            raise ValueError(f"need N >= d >= 1, got d={d}, N={n}")
        if not np.all(np.isfinite(v.view(np.float64))):
            raise ValueError("frame matrix contains non-finite entries")
        v.setflags(write=False)
        object.__setattr__(self, "vectors", v)

    @property
    def d(self) -> int:
        return self.vectors.shape[0]

    @property
    def N(self) -> int:
        return self.vectors.shape[1]

    def column(self, i: int) -> np.ndarray:
        """Frame vector i (0-based), as a copy."""
        return self.vectors[:, i].copy()

    @classmethod
    def from_columns(cls, columns) -> "Frame":
        """Build a frame from an iterable of length-d vectors."""
        cols = [np.asarray(c, dtype=np.complex128).reshape(-1) for c in columns]
        return cls(np.column_stack(cols))


class UnitNormCheck(NamedTuple):
    ok: bool
    max_deviation: float


class TightnessCheck(NamedTuple):
    ok: bool
    residual: float


class SparkCheck(NamedTuple):
    ok: bool
    min_abs_det: float


def partial_frame_operator(frame: Frame, k: int) -> np.ndarray:
    """Sum of the first k rank-1 outer products ``f_i f_i*``.

    The sum is accumulated column by column in index order, so
    ``partial_frame_operator(F, k+1)`` equals
    ``partial_frame_operator(F, k) + f_{k+1} f_{k+1}*`` bit for bit.  This
    arithmetic path is what the eigenstep extraction relies on.  The result
    is Hermitian to rounding (fused multiplies can leave ~1e-17 imaginary
    dust on the diagonal), well within ``1e-12 * ||S||``.
    """
    if not 1 <= k <= frame.N:
        raise ValueError(f"k must be in 1..{frame.N}, got {k}")
    d = frame.d
    s = np.zeros((d, d), dtype=np.complex128)
    for i in range(k):
        f = frame.vectors[:, i]
        s += np.outer(f, f.conj())
    return s


def frame_operator(frame: Frame) -> np.ndarray:
    """The frame operator ``F F*`` (d x d Hermitian PSD)."""
    return partial_frame_operator(frame, frame.N)


def gram(frame: Frame) -> np.ndarray:
    """The Gram matrix ``F* F`` (N x N)."""
    return frame.vectors.conj().T @ frame.vectors


def is_unit_norm(frame: Frame, tol: float = 1e-8) -> UnitNormCheck:
    """Check every column norm against 1.

    Deviation is measured on squared norms, ``max_i | ||f_i||^2 - 1 |``.
    """
    sq = np.sum(np.abs(frame.vectors) ** 2, axis=0)
    dev = float(np.max(np.abs(sq - 1.0)))
    return UnitNormCheck(dev <= tol, dev)


def is_tight(frame: Frame, tol: float = 1e-8) -> TightnessCheck:
    """Check ``F F* = (N/d) I`` in Frobenius norm."""
    d, n = frame.d, frame.N
    res = frame_operator(frame) - (n / d) * np.eye(d)
    residual = float(np.linalg.norm(res))
    return TightnessCheck(residual <= tol, residual)


def coherence(frame: Frame, norm_tol: float = 1e-8) -> float:
    """Largest off-diagonal Gram magnitude ``max_{i != j} |<f_i, f_j>|``.

    Only meaningful for unit-norm frames, so the norms are checked first
    and a violation beyond `norm_tol` raises :class:`UnitNormError`.
    """
    check = is_unit_norm(frame, norm_tol)
    if not check.ok:
        raise UnitNormError(
            f"coherence needs unit norms: max squared-norm deviation "
            f"{check.max_deviation:.3e} > {norm_tol:.3e}"
        )
    if frame.N < 2:
        return 0.0
    g = np.abs(gram(frame))
    np.fill_diagonal(g, 0.0)
    return float(g.max())


def coherence_bound(d: int, N: int) -> float:
    """Upper bound min(1, (N-d)/d) on FUNTF coherence.

    Sharp: N/d copies of an orthonormal basis (when d | N) attain
    (N-d)/d, and any frame with a repeated vector attains 1.
    """
    return min(1.0, (N - d) / d)


def is_full_spark(frame: Frame, tol: float | None = None) -> SparkCheck:
    """Check that every d columns are linearly independent.

    Examines all ``C(N, d)`` determinants, so this is only for small
    frames.  The default threshold ``1e-8 * (N/d)**(d/2)`` scales with
    the natural size of a FUNTF minor.
    """
    d, n = frame.d, frame.N
    if math.comb(n, d) > _SPARK_COMB_LIMIT:
        raise ValueError(
            f"full-spark check needs C({n},{d}) = {math.comb(n, d)} determinants; "
            f"limit is {_SPARK_COMB_LIMIT}"
        )
    if tol is None:
        tol = 1e-8 * (n / d) ** (d / 2)
    min_det = math.inf
    for cols in itertools.combinations(range(n), d):
        det = abs(np.linalg.det(frame.vectors[:, cols]))
        if det < min_det:
            min_det = det
    return SparkCheck(bool(min_det > tol), float(min_det))


def random_unit_norm_frame(d: int, N: int, rng: np.random.Generator) -> Frame:
    """Frame of N independent Haar-uniform unit vectors in C^d."""
    z = rng.standard_normal((d, N)) + 1j * rng.standard_normal((d, N))
    return Frame(z / np.linalg.norm(z, axis=0, keepdims=True))


def random_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed d x d unitary (QR of a complex Ginibre matrix)."""
    z = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    q, r = np.linalg.qr(z)
    # QR is unique only up to phases; fixing them recovers Haar measure.
    ph = np.diagonal(r).copy()
    ph /= np.abs(ph)
    return q * ph
