"""Uniform sampling of finite unit-norm tight frames.

The pipeline: parametrize eigenstep tables by their independent entries,
sample the resulting polytope uniformly, lift each table to a frame
deterministically, and randomize within the fiber by a torus action.
"""

from .errors import (
    ChordError,
    FuntfError,
    InfeasibleError,
    InterlacingError,
    InvalidTableError,
    IsolationError,
    LiftRoundTripError,
    NegativeWeightError,
    NumericalDegeneracyError,
    RejectionBudgetError,
    UnitNormError,
)
from .frames import (
    Frame,
    coherence,
    coherence_bound,
    frame_operator,
    gram,
    is_full_spark,
    is_tight,
    is_unit_norm,
    partial_frame_operator,
    random_unit_norm_frame,
    random_unitary,
)
from .eigensteps import (
    EigenstepTable,
    IndependentEigensteps,
    IndexSet,
    complete_table,
    eigensteps_of,
    extract_independent,
    index_set,
    require_valid,
    validate_table,
)
from .polytope import (
    BoundingBox,
    PolytopeHRep,
    bounding_box,
    contains,
    hit_and_run,
    hrep,
    rejection_sample,
)
from .lift import (
    SpectralDecomposition,
    decompose,
    default_tol_group,
    fix_phase,
    limit_weight,
    lift_to_fiber,
)
from .torus import (
    TorusElement,
    circle_action,
    default_tol_iso,
    random_torus_element,
    torus_action,
)
from .sampler import (
    SampleRecord,
    SamplerConfig,
    Tolerances,
    coherence_histogram,
    eigenlift_sample,
    fiber_heatmap,
    sample_batch,
    uniformity_test,
)

__version__ = "0.1.0"
