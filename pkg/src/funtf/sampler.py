"""End-to-end uniform FUNTF sampling and its statistics.

One sample is: draw a uniform point of the eigenstep polytope, lift it
to a frame deterministically, then push the frame along a Haar-uniform
torus element.  Polytope point and torus angles together are the only
randomness; everything downstream is deterministic, which is what makes
batches reproducible.

Per-sample random streams are derived from the batch seed and the sample
index, so a batch gives identical output regardless of worker count or
scheduling.
"""

from __future__ import annotations

import functools
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import numpy as np
from scipy import stats as _stats

from .errors import FuntfError, NumericalDegeneracyError
from .eigensteps import IndependentEigensteps, index_set
from .frames import (
    Frame,
    coherence,
    coherence_bound,
    is_full_spark,
    is_tight,
    is_unit_norm,
    random_unitary,
)
from .lift import lift_to_fiber
from .polytope import bounding_box, hrep, hit_and_run, rejection_sample
from .torus import TorusElement, random_torus_element, torus_action

__all__ = [
    "Tolerances",
    "SamplerConfig",
    "SampleRecord",
    "eigenlift_sample",
    "sample_batch",
    "coherence_histogram",
    "fiber_heatmap",
    "uniformity_test",
    "UniformityResult",
    "Histogram",
]

logger = logging.getLogger(__name__)

# Diagnostic thresholds a finished sample must meet to go unflagged.
UNIT_NORM_LIMIT = 1e-10
TIGHT_LIMIT = 1e-8
COHERENCE_SLACK = 1e-9


@dataclass(frozen=True)
class Tolerances:
    """Numerical tolerances of the pipeline.

    tol bounds the lift round-trip residual; tol_group and tol_iso
    default to scale-aware values derived from (d, N) when left None.
    """

    tol: float = 1e-8
    tol_group: Optional[float] = None
    tol_iso: Optional[float] = None


@dataclass(frozen=True)
class SamplerConfig:
    d: int
    N: int
    seed: int = 0
    polytope_sampler: str = "rejection"  # or "hit_and_run"
    hnr_steps: int = 200
    max_rejection_trials: int = 100_000
    max_retries: int = 16
    tolerances: Tolerances = field(default_factory=Tolerances)
    randomize_class: bool = False
    compute_full_spark: bool = False

    def __post_init__(self):
        if self.N <= self.d + 1:
            raise ValueError(f"need N > d+1, got d={self.d}, N={self.N}")
        if self.polytope_sampler not in ("rejection", "hit_and_run"):
            raise ValueError(f"unknown polytope sampler {self.polytope_sampler!r}")


@dataclass(frozen=True)
class SampleRecord:
    """One sampled frame with provenance and diagnostics.

    ``eigensteps`` is the polytope point the frame was lifted from and
    ``angles`` the torus element applied after the lift.  ``flagged``
    marks samples whose diagnostics missed the pipeline thresholds.
    """

    frame: Frame
    eigensteps: IndependentEigensteps
    angles: TorusElement
    coherence: float
    tight_residual: float
    unit_norm_dev: float
    full_spark: Optional[bool]
    rejection_trials: int
    flagged: bool


@functools.lru_cache(maxsize=32)
def _geometry(d: int, N: int):
    h = hrep(d, N)
    return h, bounding_box(h)


def _draw_point(cfg: SamplerConfig, rng: np.random.Generator):
    h, box = _geometry(cfg.d, cfg.N)
    drawn = rejection_sample(h, box, rng, cfg.max_rejection_trials)
    if cfg.polytope_sampler == "hit_and_run":
        point = hit_and_run(h, drawn.point, cfg.hnr_steps, rng)
        return point, drawn.trials
    return drawn.point, drawn.trials


def eigenlift_sample(cfg: SamplerConfig, rng: np.random.Generator) -> SampleRecord:
    """One uniform FUNTF sample: polytope draw, lift, torus push.

    Numerical degeneracies (a draw too close to a boundary face) are
    retried with fresh draws up to cfg.max_retries before the error
    propagates.
    """
    tols = cfg.tolerances
    iset = index_set(cfg.d, cfg.N)
    last_error = None
    for _ in range(cfg.max_retries):
        point, trials = _draw_point(cfg, rng)
        x = IndependentEigensteps(iset, point)
        theta = random_torus_element(iset, rng)
        try:
            frame = lift_to_fiber(x, tols.tol, tols.tol_group)
            frame = torus_action(frame, theta, tols.tol_iso)
        except NumericalDegeneracyError as err:
            last_error = err
            continue
        if cfg.randomize_class:
            u = random_unitary(cfg.d, rng)
            phases = np.exp(1j * rng.uniform(0.0, 2.0 * np.pi, cfg.N - 1))
            cols = np.array(frame.vectors)
            cols[:, :-1] *= phases
            frame = Frame(u @ cols)
        dev = is_unit_norm(frame).max_deviation
        residual = is_tight(frame).residual
        coh = coherence(frame, norm_tol=1e-6)
        spark = is_full_spark(frame).ok if cfg.compute_full_spark else None
        flagged = not (
            dev <= UNIT_NORM_LIMIT
            and residual <= TIGHT_LIMIT
            and coh <= coherence_bound(cfg.d, cfg.N) + COHERENCE_SLACK
        )
        return SampleRecord(
            frame=frame,
            eigensteps=x,
            angles=theta,
            coherence=coh,
            tight_residual=residual,
            unit_norm_dev=dev,
            full_spark=spark,
            rejection_trials=trials,
            flagged=flagged,
        )
    raise last_error


def _sample_at_index(cfg: SamplerConfig, i: int):
    rng = np.random.default_rng(np.random.SeedSequence(cfg.seed, spawn_key=(i,)))
    try:
        return i, eigenlift_sample(cfg, rng)
    except FuntfError as err:
        return i, err


def sample_batch(cfg: SamplerConfig, count: int, workers: int = 1) -> list:
    """Draw count independent samples, in deterministic index order.

    Sample i uses a random stream derived from (cfg.seed, i), so the
    output is identical for any worker count.  Per-sample failures are
    logged with their index and skipped; the rest of the batch proceeds.
    """
    if count < 0:
        raise ValueError("count must be nonnegative")
    indexed = ((cfg, i) for i in range(count))
    if workers > 1 and count > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(
                pool.map(_star_sample, indexed, chunksize=max(1, count // (workers * 8)))
            )
    else:
        results = [_sample_at_index(cfg, i) for i in range(count)]
    records = []
    for i, outcome in results:
        if isinstance(outcome, FuntfError):
            logger.warning("sample %d failed: %s", i, outcome)
        else:
            records.append(outcome)
    return records


def _star_sample(args):
    return _sample_at_index(*args)


class Histogram(NamedTuple):
    edges: np.ndarray
    counts: np.ndarray


def coherence_histogram(records, bins: int) -> Histogram:
    """Histogram of record coherences over [0, min(1, (N-d)/d)].

    The support is fixed by the coherence bound so histograms of
    different runs share edges.  Values a float-error above the bound
    are clipped in rather than dropped; counts always sum to the number
    of records.
    """
    if not records:
        raise ValueError("no records to histogram")
    if bins < 1:
        raise ValueError("bins must be positive")
    d, n = records[0].frame.d, records[0].frame.N
    bound = coherence_bound(d, n)
    values = np.clip([r.coherence for r in records], 0.0, bound)
    counts, edges = np.histogram(values, bins=bins, range=(0.0, bound))
    return Histogram(edges=edges, counts=counts)


def fiber_heatmap(
    x: IndependentEigensteps,
    grid: int,
    tolerances: Tolerances = Tolerances(),
) -> np.ndarray:
    """Coherence over the torus orbit of one lifted frame.

    Only defined for tables with exactly two independent positions (the
    orbit is then a 2-torus).  Entry [a, b] is the coherence after
    rotating by angles (2*pi*a/grid, 2*pi*b/grid).
    """
    iset = x.index_set
    if len(iset) != 2:
        raise ValueError(f"heatmap needs a 2-dimensional torus, got {len(iset)}")
    if grid < 1:
        raise ValueError("grid must be positive")
    base = lift_to_fiber(x, tolerances.tol, tolerances.tol_group)
    out = np.empty((grid, grid))
    angles = 2.0 * np.pi * np.arange(grid) / grid
    for a in range(grid):
        for b in range(grid):
            theta = TorusElement(iset, np.array([angles[a], angles[b]]))
            moved = torus_action(base, theta, tolerances.tol_iso)
            out[a, b] = coherence(moved, norm_tol=1e-6)
    return out


class UniformityResult(NamedTuple):
    statistic: float
    p_value: float
    dof: int
    cells: int


# Fine sub-grid resolution (per axis, across the bounding box) used to
# estimate clipped-cell areas for the chi-square reference measure.
_FINE_RESOLUTION = 2000


def uniformity_test(records, grid: int, dims: tuple | None = None) -> UniformityResult:
    """Pearson chi-square of sampled polytope points against uniformity.

    The bounding box is cut into grid x grid cells; cell areas clipped
    to the polytope are estimated by counting fine sub-grid centers
    (2000 x 2000 over the box), empty cells are dropped, and observed
    counts are tested against the area-proportional expectation.  Only
    2-dimensional polytopes are supported.

    ``records`` is a sequence of SampleRecords, or a bare (n, 2) point
    array together with dims=(d, N).
    """
    if hasattr(records, "ndim"):
        if dims is None:
            raise ValueError("bare point arrays need dims=(d, N)")
        points = np.asarray(records, dtype=np.float64)
        d, n = dims
    else:
        records = list(records)
        if not records:
            raise ValueError("no records to test")
        iset = records[0].eigensteps.index_set
        d, n = iset.d, iset.N
        points = np.array([r.eigensteps.values for r in records])
    if points.ndim != 2 or points.shape[1] != 2:
        raise ValueError("uniformity test is implemented for 2-d polytopes only")
    h, box = _geometry(d, n)
    if grid < 2:
        raise ValueError("grid must be at least 2")

    lo, hi = box.lo, box.hi
    width = hi - lo
    r = _FINE_RESOLUTION
    xs = lo[0] + (np.arange(r) + 0.5) * (width[0] / r)
    ys = lo[1] + (np.arange(r) + 0.5) * (width[1] / r)
    inside = np.ones((r, r), dtype=bool)
    for row, bb in zip(h.A, h.b):
        inside &= np.add.outer(row[0] * xs, row[1] * ys) <= bb

    cx = np.minimum((np.arange(r) * grid) // r, grid - 1)
    flat_cell = (cx[:, None] * grid + cx[None, :]).ravel()
    fine_counts = np.bincount(flat_cell, weights=inside.ravel(), minlength=grid * grid)

    keep = fine_counts > 0
    if not keep.any():
        raise ValueError("polytope area estimate came out empty")
    areas = fine_counts[keep]
    total = areas.sum()

    idx = np.clip(((points - lo) / (width / grid)).astype(int), 0, grid - 1)
    flat_points = idx[:, 0] * grid + idx[:, 1]
    kept_ids = np.nonzero(keep)[0]
    remap = -np.ones(grid * grid, dtype=int)
    remap[kept_ids] = np.arange(kept_ids.size)
    assigned = remap[flat_points]
    if np.any(assigned < 0):
        # A point fell in a cell whose area estimate is zero (boundary
        # sliver); fold it into the nearest kept cell.
        centers = np.stack(
            [lo[0] + (kept_ids // grid + 0.5) * width[0] / grid,
             lo[1] + (kept_ids % grid + 0.5) * width[1] / grid],
            axis=1,
        )
        for p in np.nonzero(assigned < 0)[0]:
            dist = np.sum((centers - points[p]) ** 2, axis=1)
            assigned[p] = int(np.argmin(dist))

    observed = np.bincount(assigned, minlength=kept_ids.size).astype(np.float64)
    expected = points.shape[0] * areas / total
    if expected.min() < 5.0:
        raise ValueError(
            f"minimum expected count {expected.min():.2f} < 5; coarsen the grid"
        )
    statistic = float(np.sum((observed - expected) ** 2 / expected))
    dof = kept_ids.size - 1
    p_value = float(_stats.chi2.sf(statistic, dof))
    return UniformityResult(statistic=statistic, p_value=p_value, dof=dof, cells=int(kept_ids.size))
