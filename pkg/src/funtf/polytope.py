"""The sampling polytope in independent-eigenstep coordinates.

Substituting the row-sum completion map into the table constraints turns
every interlacing and nonnegativity inequality into an affine inequality
in the independent coordinates alone.  Collecting them gives a bounded
polytope ``A x <= b`` whose uniform measure is the one the frame sampler
pushes forward.

Two samplers are provided.  Rejection from the propagated bounding box
is exact and the default; the box is tight enough at small (d, N) that
acceptance rates stay practical.  Hit-and-run is available for larger
tables where rejection degrades, at the price of a mixing-time
parameter.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import ChordError, InfeasibleError, RejectionBudgetError
from .eigensteps import IndexSet, index_set, _is_terminal

__all__ = [
    "PolytopeHRep",
    "BoundingBox",
    "RejectionSample",
    "hrep",
    "contains",
    "bounding_box",
    "rejection_sample",
    "hit_and_run",
]


@dataclass(frozen=True)
class PolytopeHRep:
    """Inequalities A x <= b over the independent eigensteps.

    ``labels[i]`` names the table constraint row i came from.  Rows are
    deduplicated exactly; redundant-by-weaker-bound rows are dropped.
    """

    index_set: IndexSet
    A: np.ndarray
    b: np.ndarray
    labels: tuple

    def __post_init__(self):
        a = np.asarray(self.A, dtype=np.float64)
        bb = np.asarray(self.b, dtype=np.float64)
        if a.ndim != 2 or a.shape[1] != len(self.index_set):
            raise ValueError(f"A must be m x {len(self.index_set)}, got {a.shape}")
        if bb.shape != (a.shape[0],) or len(self.labels) != a.shape[0]:
            raise ValueError("A, b, labels must agree on row count")
        a.setflags(write=False)
        bb.setflags(write=False)
        object.__setattr__(self, "A", a)
        object.__setattr__(self, "b", bb)

    @property
    def d(self) -> int:
        return self.index_set.d

    @property
    def N(self) -> int:
        return self.index_set.N


class BoundingBox(NamedTuple):
    lo: np.ndarray
    hi: np.ndarray


class RejectionSample(NamedTuple):
    point: np.ndarray
    trials: int


def _affine_table(iset: IndexSet):
    """Each table entry as an affine function of the independent values.

    Returns (coef, const) with coef[k-1, j-1] a length-dim gradient and
    const[k-1, j-1] the constant term, mirroring the completion map.
    """
    d, n, dim = iset.d, iset.N, len(iset)
    coef = np.zeros((n, d, dim))
    const = np.zeros((n, d))
    ratio = n / d
    for k in range(n - d + 1, n + 1):
        const[k - 1, : k - (n - d)] = ratio
    for i, (k, j) in enumerate(iset.pairs):
        coef[k - 1, j - 1, i] = 1.0
    for k in range(1, n + 1):
        jmax = min(k, d)
        if _is_terminal(k, jmax, d, n):
            continue
        coef[k - 1, jmax - 1] = -coef[k - 1, : jmax - 1].sum(axis=0)
        const[k - 1, jmax - 1] = k - const[k - 1, : jmax - 1].sum()
    return coef, const


def hrep(d: int, N: int) -> PolytopeHRep:
    """H-representation of the eigenstep polytope for (d, N).

    Generates every interlacing inequality of the full table plus
    nonnegativity of each entry, expressed through the completion map.
    Constant rows are checked and dropped; duplicate rows (exact
    coefficient comparison) keep their tightest bound.
    """
    iset = index_set(d, N)
    coef, const = _affine_table(iset)

    raw = []  # (gradient, constant, label) meaning  grad . x + constant >= 0

    def ge(ck, c0k, cl, c0l, label):
        # entry_k >= entry_l
        raw.append((ck - cl, c0k - c0l, label))

    for k in range(2, N + 1):
        for j in range(1, d + 1):
            ge(
                coef[k - 1, j - 1], const[k - 1, j - 1],
                coef[k - 2, j - 1], const[k - 2, j - 1],
                f"mu[{k},{j}] >= mu[{k - 1},{j}]",
            )
            if j < d:
                ge(
                    coef[k - 2, j - 1], const[k - 2, j - 1],
                    coef[k - 1, j], const[k - 1, j],
                    f"mu[{k - 1},{j}] >= mu[{k},{j + 1}]",
                )
    zero = np.zeros(len(iset))
    for k in range(1, N + 1):
        for j in range(1, min(k, d) + 1):
            ge(coef[k - 1, j - 1], const[k - 1, j - 1], zero, 0.0,
               f"mu[{k},{j}] >= 0")

    # grad . x + c0 >= 0  becomes  (-grad) . x <= c0
    rows = {}
    order = []
    for grad, c0, label in raw:
        if not grad.any():
            if c0 < -1e-12:
                raise InfeasibleError(f"constant constraint violated: {label}")
            continue
        grad = -grad + 0.0  # normalize -0.0 so duplicate rows compare equal
        key = grad.tobytes()
        if key not in rows:
            rows[key] = (grad, c0, label)
            order.append(key)
        elif c0 < rows[key][1]:
            rows[key] = (grad, c0, label)

    a = np.array([rows[k][0] for k in order])
    b = np.array([rows[k][1] for k in order])
    labels = tuple(rows[k][2] for k in order)
    return PolytopeHRep(index_set=iset, A=a, b=b, labels=labels)


def contains(h: PolytopeHRep, x, tol: float = 0.0) -> bool:
    """Whether A x <= b + tol holds for every row."""
    x = np.asarray(x, dtype=np.float64).reshape(-1)
    if x.shape[0] != len(h.index_set):
        raise ValueError(f"point must have dimension {len(h.index_set)}")
    return bool(np.all(h.A @ x <= h.b + tol))


def bounding_box(h: PolytopeHRep, max_sweeps: int = 256) -> BoundingBox:
    """Axis-aligned box enclosing the polytope, by interval propagation.

    Starts from [0, N/d] per coordinate and repeatedly tightens each
    interval against each row, using interval bounds for the other
    variables, until a fixed point.  No LP is involved; for rows with a
    single nonzero the result is the exact one-row bound.
    """
    dim = len(h.index_set)
    lo = np.zeros(dim)
    hi = np.full(dim, h.N / h.d)
    nz = [np.nonzero(h.A[i])[0] for i in range(h.A.shape[0])]
    for _ in range(max_sweeps):
        changed = False
        for i in range(h.A.shape[0]):
            row, bound = h.A[i], h.b[i]
            for v in nz[i]:
                rest = 0.0
                for w in nz[i]:
                    if w == v:
                        continue
                    c = row[w]
                    rest += c * lo[w] if c > 0 else c * hi[w]
                limit = (bound - rest) / row[v]
                if row[v] > 0:
                    if limit < hi[v]:
                        hi[v] = limit
                        changed = True
                else:
                    if limit > lo[v]:
                        lo[v] = limit
                        changed = True
        if np.any(lo > hi + 1e-9):
            raise InfeasibleError("interval propagation emptied a coordinate")
        if not changed:
            break
    return BoundingBox(lo=lo, hi=hi)


def rejection_sample(
    h: PolytopeHRep,
    box: BoundingBox,
    rng: np.random.Generator,
    max_trials: int = 100_000,
) -> RejectionSample:
    """Uniform point via rejection from the bounding box.

    Draws are uniform in the box; the first draw passing the exact
    membership check (tol 0) is returned along with the trial count.
    """
    for trial in range(1, max_trials + 1):
        x = rng.uniform(box.lo, box.hi)
        if np.all(h.A @ x <= h.b):
            return RejectionSample(point=x, trials=trial)
    raise RejectionBudgetError(
        f"no accept in {max_trials} trials; box may be far larger than the polytope"
    )


def hit_and_run(
    h: PolytopeHRep,
    x0,
    steps: int,
    rng: np.random.Generator,
) -> np.ndarray:
    """Hit-and-run chain from a strictly interior start point.

    Each step picks an isotropic direction, intersects the line with the
    polytope, and jumps to a uniform point of the chord.  Convergence to
    uniform is asymptotic; the caller chooses the step budget.  With
    steps=0 the start point is returned unchanged.
    """
    x = np.asarray(x0, dtype=np.float64).reshape(-1).copy()
    if not contains(h, x, tol=-1e-12):
        raise ValueError("hit-and-run start point must be strictly interior")
    for _ in range(steps):
        u = rng.standard_normal(x.shape[0])
        u /= np.linalg.norm(u)
        au = h.A @ u
        slack = h.b - h.A @ x
        t_hi = np.inf
        t_lo = -np.inf
        pos = au > 1e-14
        neg = au < -1e-14
        if pos.any():
            t_hi = np.min(slack[pos] / au[pos])
        if neg.any():
            t_lo = np.max(slack[neg] / au[neg])
        if not np.isfinite(t_lo) or not np.isfinite(t_hi):
            raise InfeasibleError("unbounded chord; polytope rows missing")
        if t_hi - t_lo <= 1e-14:
            raise ChordError(f"chord length {t_hi - t_lo:.3e} too short")
        x = x + rng.uniform(t_lo, t_hi) * u
    return x
