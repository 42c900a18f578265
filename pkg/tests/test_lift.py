import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from funtf.errors import InterlacingError, InvalidTableError, NegativeWeightError
from funtf.eigensteps import (
    IndependentEigensteps,
    complete_table,
    eigensteps_of,
    extract_independent,
    index_set,
)
from funtf.frames import frame_operator, is_full_spark, is_tight, is_unit_norm
from funtf.lift import (
    decompose,
    default_tol_group,
    fix_phase,
    group_ranges,
    lift_to_fiber,
    limit_weight,
)
from funtf.polytope import bounding_box, hrep, rejection_sample

from conftest import SMALL_DIMS

seeds = st.integers(0, 2**32 - 1)


def secular_weights(eigenvalues, f):
    """Ground truth for one lift step.

    For S = diag(eigenvalues) and next vector f, the weight of an
    eigenvalue is the squared norm of the projection of f onto its
    eigenspace, read off coordinate-wise in the diagonal basis.
    """
    weights = {}
    for value, amplitude in zip(eigenvalues, f):
        weights[value] = weights.get(value, 0.0) + abs(amplitude) ** 2
    return weights


def uniform_point(d, n, rng):
    h = hrep(d, n)
    return rejection_sample(h, bounding_box(h), rng).point


class TestLimitWeight:
    def test_two_by_two_split(self):
        row_k = np.array([1.0, 0.0])
        row_k1 = np.array([1.5, 0.5])
        assert limit_weight(row_k, row_k1, 1.0, 1e-8) == pytest.approx(0.25, abs=1e-12)
        assert limit_weight(row_k, row_k1, 0.0, 1e-8) == pytest.approx(0.75, abs=1e-12)

    def test_weights_sum_to_one(self):
        row_k = np.array([1.0, 0.0])
        row_k1 = np.array([1.5, 0.5])
        total = sum(limit_weight(row_k, row_k1, mu, 1e-8) for mu in (1.0, 0.0))
        assert total == pytest.approx(1.0, abs=1e-12)

    def test_multiplicity_drop_gives_full_weight(self):
        w = limit_weight(np.array([1.0, 1.0, 0.0]), np.array([2.0, 1.0, 0.0]), 1.0, 1e-8)
        assert w == pytest.approx(1.0, abs=1e-12)

    def test_preserved_multiplicity_gives_zero(self):
        assert limit_weight(np.array([1.0, 0.0]), np.array([2.0, 1.0]), 1.0, 1e-8) == 0.0

    def test_rejects_mu_not_in_row(self):
        with pytest.raises(ValueError):
            limit_weight(np.array([1.0, 0.0]), np.array([1.5, 0.5]), 0.7, 1e-8)

    def test_rejects_multiplicity_collapse(self):
        with pytest.raises(InterlacingError):
            limit_weight(np.array([1.0, 1.0, 0.0]), np.array([2.0, 0.5, 0.0]), 1.0, 1e-8)

    def test_rejects_inconsistent_rows(self):
        with pytest.raises(NegativeWeightError):
            limit_weight(np.array([1.0, 0.0]), np.array([0.5, 0.4]), 1.0, 1e-8)

    @given(seeds, st.integers(2, 4))
    @settings(max_examples=80, deadline=None)
    def test_matches_rank_one_update_oracle(self, seed, d):
        # Build S = diag(descending values), push one random unit vector
        # through it, and compare against the coordinate-wise answer.
        rng = np.random.default_rng(seed)
        values = np.sort(rng.uniform(0.0, 3.0, d))[::-1]
        values += np.arange(d)[::-1] * 1e-3  # enforce separation
        f = rng.normal(size=d) + 1j * rng.normal(size=d)
        f /= np.linalg.norm(f)
        s_next = np.diag(values) + np.outer(f, f.conj())
        row_k1 = np.linalg.eigvalsh(s_next)[::-1]
        truth = secular_weights(values, f)
        total = 0.0
        for mu, expected in truth.items():
            w = limit_weight(values, row_k1, mu, 1e-8)
            assert w == pytest.approx(expected, abs=1e-9)
            total += w
        assert total == pytest.approx(1.0, abs=1e-10)

    @given(seeds)
    @settings(max_examples=50, deadline=None)
    def test_oracle_with_repeated_eigenvalue(self, seed):
        rng = np.random.default_rng(seed)
        a, b = np.sort(rng.uniform(0.0, 2.0, 2))[::-1] + (1.0, 0.0)
        values = np.array([a, a, b])
        f = rng.normal(size=3) + 1j * rng.normal(size=3)
        f /= np.linalg.norm(f)
        row_k1 = np.linalg.eigvalsh(np.diag(values) + np.outer(f, f.conj()))[::-1]
        w_a = limit_weight(values, row_k1, a, 1e-8)
        w_b = limit_weight(values, row_k1, b, 1e-8)
        assert w_a == pytest.approx(abs(f[0]) ** 2 + abs(f[1]) ** 2, abs=1e-8)
        assert w_b == pytest.approx(abs(f[2]) ** 2, abs=1e-8)

    def test_orthogonal_update_keeps_multiplicity(self):
        # Next vector orthogonal to the repeated eigenspace: multiplicity
        # survives and the repeated eigenvalue gets weight zero.
        values = np.array([1.0, 1.0, 0.0])
        row_k1 = np.linalg.eigvalsh(
            np.diag(values) + np.outer([0, 0, 1.0], [0, 0, 1.0])
        )[::-1]
        assert limit_weight(values, row_k1, 1.0, 1e-8) == 0.0


class TestPhaseAndGrouping:
    def test_fix_phase_makes_peak_entry_positive(self):
        out = fix_phase(np.array([0.0, -1.0], dtype=complex))
        assert np.allclose(out, [0.0, 1.0], atol=0)

    def test_fix_phase_breaks_ties_at_lowest_index(self):
        out = fix_phase(np.array([1j, -1.0]))
        assert out[0] == pytest.approx(1.0)
        assert out[1] == pytest.approx(1j)

    def test_fix_phase_rejects_zero_vector(self):
        with pytest.raises(ValueError):
            fix_phase(np.zeros(3, dtype=complex))

    def test_fix_phase_preserves_norm(self, rng):
        v = rng.normal(size=4) + 1j * rng.normal(size=4)
        assert np.linalg.norm(fix_phase(v)) == pytest.approx(np.linalg.norm(v), abs=1e-14)

    def test_group_ranges_splits_at_gaps(self):
        assert group_ranges(np.array([2.0, 2.0, 1.0]), 0.5) == ((0, 2), (2, 3))
        assert group_ranges(np.array([3.0, 2.0, 1.0]), 0.5) == ((0, 1), (1, 2), (2, 3))
        assert group_ranges(np.array([1.0, 1.0, 1.0]), 0.5) == ((0, 3),)

    def test_decompose_reconstructs(self, rng):
        f = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
        s = f @ f.conj().T
        dec = decompose(s, default_tol_group(3, 5))
        rebuilt = dec.eigenvectors @ np.diag(dec.eigenvalues) @ dec.eigenvectors.conj().T
        assert np.linalg.norm(rebuilt - s) <= 1e-10 * max(1.0, np.linalg.norm(s))
        assert np.all(np.diff(dec.eigenvalues) <= 1e-12)

    def test_decompose_canonical_vector_convention(self, rng):
        f = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        s = f @ f.conj().T
        dec = decompose(s, default_tol_group(4, 7))
        for g in range(len(dec.groups)):
            v = dec.canonical_vector(g)
            assert np.linalg.norm(v) == pytest.approx(1.0, abs=1e-12)
            peak = v[np.argmax(np.abs(v))]
            assert abs(peak.imag) <= 1e-12
            assert peak.real > 0


class TestLiftToFiber:
    def test_orthogonal_pair_24(self):
        x = IndependentEigensteps(index_set(2, 4), np.array([1.0]))
        f = lift_to_fiber(x)
        assert abs(np.vdot(f.column(0), f.column(1))) <= 1e-12
        assert np.allclose(frame_operator(f), 2.0 * np.eye(2), atol=1e-12)

    def test_interior_point_35_hits_prescribed_table(self):
        x = IndependentEigensteps(index_set(3, 5), np.array([1.3, 1.2]))
        f = lift_to_fiber(x)
        want = complete_table(x)
        assert np.max(np.abs(eigensteps_of(f).mu - want.mu)) <= 1e-8

    def test_deterministic(self):
        x = IndependentEigensteps(index_set(3, 5), np.array([1.3, 1.2]))
        assert np.array_equal(lift_to_fiber(x).vectors, lift_to_fiber(x).vectors)

    def test_first_vector_is_standard_basis(self):
        x = IndependentEigensteps(index_set(3, 5), np.array([1.3, 1.2]))
        f = lift_to_fiber(x)
        assert np.allclose(f.column(0), np.eye(3)[:, 0], atol=0)

    @pytest.mark.parametrize("d,n", SMALL_DIMS)
    def test_postconditions_on_uniform_points(self, d, n, rng):
        iset = index_set(d, n)
        for _ in range(10):
            x = IndependentEigensteps(iset, uniform_point(d, n, rng))
            f = lift_to_fiber(x)
            assert is_unit_norm(f).max_deviation <= 1e-10
            assert is_tight(f).residual <= 1e-8
            got = extract_independent(eigensteps_of(f))
            assert np.max(np.abs(got.values - x.values)) <= 1e-8

    def test_output_is_full_spark_on_random_interior(self, rng):
        iset = index_set(3, 5)
        for _ in range(10):
            x = IndependentEigensteps(iset, uniform_point(3, 5, rng))
            assert is_full_spark(lift_to_fiber(x)).ok

    def test_boundary_vertex_lifts_cleanly(self):
        # (1, 1) sits on two facets; the lift must still land on the
        # prescribed table (first two vectors orthogonal).
        x = IndependentEigensteps(index_set(3, 5), np.array([1.0, 1.0]))
        f = lift_to_fiber(x)
        assert abs(np.vdot(f.column(0), f.column(1))) <= 1e-12
        assert np.max(np.abs(eigensteps_of(f).mu - complete_table(x).mu)) <= 1e-8

    def test_rejects_infeasible_values(self):
        iset = index_set(3, 5)
        with pytest.raises(InvalidTableError):
            lift_to_fiber(IndependentEigensteps(iset, np.array([1.0, 1.5])))
        with pytest.raises(InvalidTableError):
            lift_to_fiber(IndependentEigensteps(iset, np.array([0.9, 0.9])))
