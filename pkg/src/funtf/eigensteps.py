"""Eigenstep tables and their parametrization.

Row k of an eigenstep table is the descending spectrum of the partial
frame operator ``S_k = f_1 f_1* + ... + f_k f_k*``.  For a unit-norm
tight frame the table satisfies hard constraints: row k sums to k,
entries beyond column k vanish, consecutive rows interlace, and the last
d rows pin a growing block of entries to N/d.

Those constraints leave ``(d-1)(N-d-1)`` free entries, one per pair
``(k, j)`` with ``1 <= j <= d-1`` and ``j+1 <= k <= j+N-d-1``.  Fixing
those determines everything else through the row sums, which is the
coordinate system the polytope module samples in.  Order is canonical:
ascending column j, then ascending row k within a column.

Indices follow the 1-based math convention in this module's docstrings;
arrays are 0-based as usual (``mu[k-1, j-1]``).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import InvalidTableError
from .frames import Frame, partial_frame_operator

__all__ = [
    "IndexSet",
    "index_set",
    "IndependentEigensteps",
    "EigenstepTable",
    "complete_table",
    "extract_independent",
    "eigensteps_of",
    "validate_table",
    "require_valid",
    "Violation",
    "EIGENVALUE_CLAMP",
]

# Eigenvalues of partial frame operators this close to zero are exact
# zeros of the table (padding), not signal.
EIGENVALUE_CLAMP = 1e-12


@dataclass(frozen=True)
class IndexSet:
    """Positions (k, j) of the independent eigensteps, canonical order."""

    d: int
    N: int
    pairs: tuple

    def __post_init__(self):
        if self.N <= self.d + 1:
            raise ValueError(f"need N > d+1, got d={self.d}, N={self.N}")

    def __len__(self):
        return len(self.pairs)

    @property
    def dim(self) -> int:
        """Dimension (d-1)(N-d-1) of the independent coordinates."""
        return len(self.pairs)


def index_set(d: int, N: int) -> IndexSet:
    """Independent eigenstep positions for a (d, N) table.

    Pairs (k, j) with 1 <= j <= d-1 and j+1 <= k <= j+N-d-1, listed
    column by column (ascending j, then ascending k).  Requires N > d+1;
    below that the fiber parametrization has no free coordinates.
    """
    if N <= d + 1:
        raise ValueError(f"need N > d+1, got d={d}, N={N}")
    pairs = tuple(
        (k, j) for j in range(1, d) for k in range(j + 1, j + N - d)
    )
    assert len(pairs) == (d - 1) * (N - d - 1)
    return IndexSet(d=d, N=N, pairs=pairs)


@dataclass(frozen=True)
class IndependentEigensteps:
    """Values of the independent eigensteps, aligned with an IndexSet."""

    index_set: IndexSet
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=np.float64).reshape(-1)
        if v.shape[0] != len(self.index_set):
            raise ValueError(
                f"expected {len(self.index_set)} values, got {v.shape[0]}"
            )
        hi = self.index_set.N / self.index_set.d
        if v.size and (v.min() < -1e-9 or v.max() > hi + 1e-9):
            raise ValueError(f"values must lie in [0, N/d] = [0, {hi:.6g}]")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @classmethod
    def from_values(cls, d: int, N: int, values) -> "IndependentEigensteps":
        return cls(index_set(d, N), np.asarray(values, dtype=np.float64))


@dataclass(frozen=True)
class EigenstepTable:
    """N x d table, row k the descending spectrum of S_k.

    Construction checks only shape and finiteness; the defining
    inequalities are checked by :func:`validate_table` so that invalid
    tables can be built, inspected, and reported on.
    """

    d: int
    N: int
    mu: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.mu, dtype=np.float64)
        if m.shape != (self.N, self.d):
            raise ValueError(f"table must be {self.N} x {self.d}, got {m.shape}")
        if not np.all(np.isfinite(m)):
            raise ValueError("table contains non-finite entries")
        m.setflags(write=False)
        object.__setattr__(self, "mu", m)

    def entry(self, k: int, j: int) -> float:
        """mu_{k,j} with 1-based math indices."""
        if not (1 <= k <= self.N and 1 <= j <= self.d):
            raise IndexError(f"entry ({k}, {j}) outside a {self.N}x{self.d} table")
        return float(self.mu[k - 1, j - 1])


def _is_terminal(k: int, j: int, d: int, N: int) -> bool:
    # Terminal N/d block: rows N-d+1..N, leading k-(N-d) entries.
    return k >= N - d + 1 and j <= k - (N - d)


def complete_table(x: IndependentEigensteps) -> EigenstepTable:
    """Fill a full table from independent values via the row-sum map.

    Padding zeros and the terminal N/d block are constants; the
    independent entries are copied in; the one remaining free entry of
    each row (column min(k, d)) is set so the row sums to k.  The result
    is a valid eigenstep table iff x lies in the sampling polytope --
    no feasibility check happens here.
    """
    iset = x.index_set
    d, n = iset.d, iset.N
    mu = np.zeros((n, d))
    ratio = n / d
    for k in range(n - d + 1, n + 1):
        mu[k - 1, : k - (n - d)] = ratio
    for (k, j), val in zip(iset.pairs, x.values):
        mu[k - 1, j - 1] = val
    for k in range(1, n + 1):
        jmax = min(k, d)
        if _is_terminal(k, jmax, d, n):
            continue  # only row N, where the block already closes the sum
        others = mu[k - 1, : jmax - 1].sum()
        mu[k - 1, jmax - 1] = k - others
    return EigenstepTable(d=d, N=n, mu=mu)


def extract_independent(table: EigenstepTable) -> IndependentEigensteps:
    """Read the independent entries out of a full table (exact copies)."""
    iset = index_set(table.d, table.N)
    vals = np.array([table.mu[k - 1, j - 1] for k, j in iset.pairs])
    return IndependentEigensteps(iset, vals)


def eigensteps_of(frame: Frame) -> EigenstepTable:
    """Eigenstep table of a frame: row k = descending spectrum of S_k.

    Eigenvalues within ``EIGENVALUE_CLAMP`` of zero are clamped to exact
    zero so the padding invariant holds bit for bit.
    """
    d, n = frame.d, frame.N
    mu = np.zeros((n, d))
    s = np.zeros((d, d), dtype=np.complex128)
    for k in range(1, n + 1):
        f = frame.vectors[:, k - 1]
        s = s + np.outer(f, f.conj())
        vals = np.linalg.eigvalsh(s)[::-1]
        vals[np.abs(vals) < EIGENVALUE_CLAMP] = 0.0
        mu[k - 1] = vals
    return EigenstepTable(d=d, N=n, mu=mu)


@dataclass(frozen=True)
class Violation:
    """One violated table constraint, with the amount of violation."""

    constraint: str
    k: int
    j: Optional[int]
    slack: float

    def __str__(self):
        loc = f"(k={self.k})" if self.j is None else f"(k={self.k}, j={self.j})"
        return f"{self.constraint} {loc} by {self.slack:.3e}"


def validate_table(table: EigenstepTable, tol: float = 1e-9) -> list:
    """Every violated table constraint, each with its positive slack.

    Checks nonnegativity, zero padding, within-row monotonicity,
    interlacing between consecutive rows, row sums, and the terminal N/d
    block.  Returns an empty list iff the table is valid within tol.
    """
    d, n, mu = table.d, table.N, table.mu
    out = []

    def report(constraint, k, j, slack):
        if slack > tol:
            out.append(Violation(constraint, k, j, float(slack)))

    ratio = n / d
    for k in range(1, n + 1):
        for j in range(1, d + 1):
            v = mu[k - 1, j - 1]
            report("nonnegative", k, j, -v)
            if j > k:
                report("zero-padding", k, j, abs(v))
            if _is_terminal(k, j, d, n):
                report("terminal-block", k, j, abs(v - ratio))
        for j in range(1, d):
            report("row-monotone", k, j, mu[k - 1, j] - mu[k - 1, j - 1])
        report("row-sum", k, None, abs(mu[k - 1].sum() - k))
    for k in range(2, n + 1):
        for j in range(1, d + 1):
            report("interlace-lower", k, j, mu[k - 2, j - 1] - mu[k - 1, j - 1])
            if j < d:
                report("interlace-upper", k, j, mu[k - 1, j] - mu[k - 2, j - 1])
    return out


def require_valid(table: EigenstepTable, tol: float = 1e-9) -> None:
    """Raise :class:`InvalidTableError` if the table fails validation."""
    violations = validate_table(table, tol)
    if violations:
        raise InvalidTableError(violations)
