"""Tests for the CVT archive: tessellation, bisection, insertion, metrics."""

import numpy as np
import pytest

from moqd import pareto
from moqd.archive import CvtArchive, bisect_discount, tessellate_cvt
from oracles import random_front


def make_archive(centroids=((0.0, 0.0), (10.0, 10.0)), k=2, **kwargs):
    return CvtArchive(np.asarray(centroids, dtype=float), np.zeros(k), **kwargs)


class TestTessellation:
    def test_single_cell_near_center(self):
        rng = np.random.default_rng(0)
        c = tessellate_cvt([(-1, 1), (-1, 1)], 1, 5000, rng)
        assert c.shape == (1, 2)
        assert np.all(np.abs(c) < 0.05)

    def test_centroids_within_bounds(self):
        rng = np.random.default_rng(1)
        c = tessellate_cvt([(-256, 256), (-256, 256)], 200, 20000, rng)
        assert c.shape == (200, 2)
        assert np.all(c >= -256) and np.all(c <= 256)

    def test_deterministic_under_seed(self):
        a = tessellate_cvt([(0, 1), (0, 1)], 50, 5000, np.random.default_rng(7))
        b = tessellate_cvt([(0, 1), (0, 1)], 50, 5000, np.random.default_rng(7))
        assert np.array_equal(a, b)

    def test_degenerate_bounds_rejected(self):
        with pytest.raises(ValueError):
            tessellate_cvt([(1, 1), (0, 1)], 5, 100, np.random.default_rng(0))

    def test_more_cells_than_samples_rejected(self):
        with pytest.raises(ValueError):
            tessellate_cvt([(0, 1), (0, 1)], 100, 50, np.random.default_rng(0))


class TestAssignCell:
    def test_nearest(self):
        arch = make_archive()
        assert arch.assign_cell([1.0, 2.0]) == 0
        assert arch.assign_cell([9.0, 9.0]) == 1

    def test_tie_breaks_to_lowest_index(self):
        arch = make_archive([(0.0, 0.0), (2.0, 0.0)])
        assert arch.assign_cell([1.0, 0.0]) == 0

    def test_out_of_bounds_still_assigned(self):
        arch = make_archive()
        assert arch.assign_cell([1e6, 1e6]) == 1


class TestBisection:
    def test_empty_front_closed_form(self):
        # hvi(d*f) over an empty 2-D front is 100*d^2; target alpha*100
        for alpha in (0.05, 0.1, 0.25, 0.5, 0.9):
            d = bisect_discount([10.0, 10.0], pareto.empty_front(2), alpha, 1e-6, np.zeros(2))
            assert abs(d - np.sqrt(alpha)) <= 1e-3

    def test_alpha_one_closes_completely(self):
        front = np.array([[3.0, 1.0]])
        f = np.array([5.0, 5.0])
        d = bisect_discount(f, front, 1.0, 1e-6, np.zeros(2))
        full = pareto.hvi(f, front, np.zeros(2))
        got = pareto.hvi(d * f, front, np.zeros(2))
        assert full - 1e-6 <= got <= full

    def test_one_sided_error_random_cases(self, rng):
        eps = 1e-6
        for _ in range(200):
            k = int(rng.integers(2, 4))
            front = random_front(rng, k, max_points=8)
            f = rng.uniform(1.0, 100.0, k)
            full = pareto.hvi(f, front, np.zeros(k))
            if full <= 0.0:
                continue
            alpha = float(rng.choice([0.05, 0.1, 0.5, 0.9]))
            d = bisect_discount(f, front, alpha, eps, np.zeros(k))
            got = pareto.hvi(d * f, front, np.zeros(k))
            assert got <= alpha * full + 1e-15
            assert got >= alpha * full - eps

    def test_requires_positive_improvement(self):
        with pytest.raises(ValueError):
            bisect_discount([1.0, 1.0], np.array([[2.0, 2.0]]), 0.5, 1e-6, np.zeros(2))


class TestTryInsert:
    def test_empty_cell_phi_is_objective_product(self):
        arch = make_archive()
        out = arch.try_insert(np.zeros(3), [3.0, 4.0], [0.5, 0.5], alpha=0.1, epsilon=1e-6)
        assert out.cell_index == 0
        assert out.phi == pytest.approx(12.0)
        assert out.inserted
        cell = arch.cells[0]
        assert cell.objectives.shape == (1, 2)
        assert cell.threshold.shape == (1, 2)
        got = pareto.hvi([3.0, 4.0], pareto.empty_front(2), np.zeros(2))
        thresh_hvi = pareto.hypervolume(cell.threshold, np.zeros(2))
        assert 0.1 * got - 1e-6 <= thresh_hvi <= 0.1 * got

    def test_dominated_by_threshold_rejected(self):
        arch = make_archive()
        arch.try_insert(np.zeros(2), [10.0, 10.0], [0.0, 0.0], alpha=1.0, epsilon=1e-9)
        before = arch.cells[0].objectives.copy()
        out = arch.try_insert(np.zeros(2), [5.0, 5.0], [0.0, 0.0], alpha=1.0, epsilon=1e-9)
        assert out.phi == 0.0 and not out.inserted
        assert np.array_equal(arch.cells[0].objectives, before)
        assert arch.cells[0].visits == 2  # visits count rejected offers too

    def test_size_limit_enforced_by_downsizing(self, rng):
        arch = make_archive(size_limit=10)
        for _ in range(300):
            f = rng.uniform(1.0, 100.0, 2)
            arch.try_insert(np.zeros(2), f, [0.0, 0.0], alpha=0.5, epsilon=1e-6)
        cell = arch.cells[0]
        assert 0 < cell.objectives.shape[0] <= 10
        assert cell.threshold.shape[0] <= 10
        assert len(cell.solutions) == cell.objectives.shape[0]

    def test_passive_mode_scores_against_raw_front(self):
        arch = make_archive(passive=True)
        out = arch.try_insert(np.zeros(2), [4.0, 4.0], [0.0, 0.0])
        assert out.phi == pytest.approx(16.0)
        assert arch.cells[0].threshold.shape[0] == 0
        out2 = arch.try_insert(np.zeros(2), [5.0, 3.0], [0.0, 0.0])
        assert out2.phi == pytest.approx(pareto.hvi([5.0, 3.0], np.array([[4.0, 4.0]]), np.zeros(2)))

    def test_only_assigned_cell_touched(self, rng):
        arch = make_archive()
        arch.try_insert(np.zeros(2), [5.0, 5.0], [9.0, 9.0], alpha=0.1, epsilon=1e-6)
        assert arch.cells[0].objectives.shape[0] == 0
        assert arch.cells[0].visits == 0
        assert arch.cells[1].objectives.shape[0] == 1


class TestThresholdDynamics:
    def test_geometric_gap_closure(self):
        # repeated insertion of the same point closes the gap by (1 - alpha)
        # per step: hvi(f, T) after m insertions is 100 * 0.9^m
        arch = make_archive()
        f = np.array([10.0, 10.0])
        for m in range(1, 21):
            arch.try_insert(np.zeros(2), f, [0.0, 0.0], alpha=0.1, epsilon=1e-9)
            gap = pareto.hvi(f, arch.cells[0].threshold, np.zeros(2))
            assert gap == pytest.approx(100.0 * 0.9**m, rel=1e-4)

    def test_threshold_lags_raw_front(self, rng):
        # dynamic archive: hv(T_e) <= hv(F_e) at every step
        arch = make_archive()
        for _ in range(300):
            f = rng.uniform(0.5, 100.0, 2)
            m = rng.uniform(-1, 1, 2)
            out = arch.try_insert(np.zeros(2), f, m, alpha=0.3, epsilon=1e-6)
            cell = arch.cells[out.cell_index]
            hv_t = pareto.hypervolume(cell.threshold, np.zeros(2))
            hv_f = pareto.hypervolume(cell.objectives, np.zeros(2))
            assert hv_t <= hv_f + 1e-9

    def test_moqd_score_monotone_dynamic(self, rng):
        arch = make_archive()
        prev = 0.0
        for _ in range(200):
            arch.try_insert(
                np.zeros(2), rng.uniform(0.5, 50.0, 2), rng.uniform(-1, 11, 2),
                alpha=0.2, epsilon=1e-6,
            )
            score = arch.moqd_score()
            assert score >= prev - 1e-12
            prev = score


class TestMetrics:
    def test_empty_archive(self):
        arch = make_archive()
        assert arch.moqd_score() == 0.0
        assert arch.coverage() == 0.0

    def test_moqd_score_sums_cells(self):
        arch = make_archive(passive=True)
        arch.try_insert(np.zeros(2), [3.0, 1.0], [0.0, 0.0])
        arch.try_insert(np.zeros(2), [1.0, 5.0], [10.0, 10.0])
        assert arch.moqd_score() == pytest.approx(8.0)
        assert arch.coverage() == 1.0

    def test_coverage_fraction(self):
        centroids = [(float(i), 0.0) for i in range(10)]
        arch = CvtArchive(np.array(centroids), np.zeros(2), passive=True)
        for i in range(4):
            arch.try_insert(np.zeros(2), [1.0, 1.0], [float(i), 0.0])
        assert arch.coverage() == pytest.approx(0.4)

    def test_sample_elite_uniform_over_cells(self):
        arch = make_archive(passive=True)
        arch.try_insert(np.array([1.0]), [5.0, 5.0], [0.0, 0.0])
        arch.try_insert(np.array([2.0]), [5.0, 5.0], [10.0, 10.0])
        rng = np.random.default_rng(3)
        draws = np.array([arch.sample_elite(rng)[0] for _ in range(10**4)])
        frac = np.mean(draws == 1.0)
        assert abs(frac - 0.5) < 0.05

    def test_sample_elite_empty_raises(self):
        with pytest.raises(ValueError):
            make_archive().sample_elite(np.random.default_rng(0))

    def test_visit_stats_mean_over_all_cells(self):
        arch = make_archive(passive=True)
        for _ in range(6):
            arch.try_insert(np.zeros(2), [1.0, 1.0], [0.0, 0.0])
        stats = arch.visit_stats()
        assert stats.last_cell_visits == 6
        assert stats.mean_visits == 3.0  # empty cells count in the mean


class TestExports:
    def test_heatmap_row_per_cell(self):
        centroids = [(0.0, 0.0), (5.0, 5.0), (10.0, 0.0)]
        arch = CvtArchive(np.array(centroids), np.zeros(2), passive=True)
        rows = arch.export_heatmap()
        assert len(rows) == 3
        assert all(r[3] == 0.0 for r in rows)

    def test_heatmap_hypervolume_matches_recomputation(self, rng):
        arch = make_archive(passive=True)
        for _ in range(100):
            arch.try_insert(
                np.zeros(2), rng.uniform(0.5, 50.0, 2), rng.uniform(-1, 11, 2)
            )
        for row in arch.export_heatmap():
            e = row[0]
            expected = pareto.hypervolume(arch.cells[e].objectives, arch.reference)
            assert row[3] == expected

    def test_fronts_export_lists_nonempty_cells(self):
        arch = make_archive()
        arch.try_insert(np.array([1.0, 2.0]), [3.0, 4.0], [0.0, 0.0], alpha=0.1, epsilon=1e-6)
        doc = arch.export_fronts()
        assert len(doc["cells"]) == 1
        entry = doc["cells"][0]
        assert entry["cell"] == 0
        assert entry["objectives"] == [[3.0, 4.0]]
        assert len(entry["threshold_front"]) == 1


class TestValidation:
    def test_duplicate_centroids_rejected(self):
        with pytest.raises(ValueError):
            CvtArchive(np.array([[0.0, 0.0], [0.0, 0.0]]), np.zeros(2))

    def test_threshold_mode_requires_alpha(self):
        arch = make_archive()
        with pytest.raises(ValueError):
            arch.try_insert(np.zeros(2), [1.0, 1.0], [0.0, 0.0])
