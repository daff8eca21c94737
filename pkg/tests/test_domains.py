"""Tests for the benchmark domains and their normalization."""

import numpy as np
import pytest

from moqd import domains
from moqd.domains import clip, eval_arm, eval_rastrigin, eval_sphere, make_domain


class TestClip:
    def test_passthrough(self):
        assert clip(-3.0) == -3.0
        assert clip(5.12) == 5.12
        assert clip(0.0) == 0.0

    def test_fold_positive(self):
        assert clip(6.0) == pytest.approx(5.12 / 6.0)

    def test_fold_negative(self):
        assert clip(-10.0) == pytest.approx(-0.512)

    def test_array(self):
        out = clip(np.array([1.0, 6.0, -10.0]))
        assert out == pytest.approx([1.0, 5.12 / 6.0, -0.512])


class TestSphere:
    def test_at_first_extremum(self):
        spec = make_domain("sphere", 4)
        ev = eval_sphere(np.full(4, 4.0), spec)
        assert ev.objectives[0] == pytest.approx(100.0)
        # raw objective 2 is -256, far below the n=4 span, clamps to 0
        assert ev.objectives[1] == 0.0
        assert ev.measures == pytest.approx([8.0, 8.0])
        assert not ev.failed

    def test_measures_at_endpoint_n100(self):
        spec = make_domain("sphere", 100)
        ev = eval_sphere(np.full(100, 4.0), spec)
        assert ev.measures == pytest.approx([200.0, 200.0])

    def test_constant_vectors_mutually_nondominated(self):
        # Along the segment between the two extrema, constant vectors trade
        # off the objectives, so no constant vector dominates another. Holds
        # on the sub-segment where neither objective clamps (|c -+ 4| below
        # sqrt(38.9376), i.e. |c| < 2.24).
        from moqd.pareto import dominates

        spec = make_domain("sphere", 10)
        cs = np.linspace(-2.2, 2.2, 23)
        evs = [eval_sphere(np.full(10, c), spec).objectives for c in cs]
        for i, a in enumerate(evs):
            for j, b in enumerate(evs):
                if i != j:
                    assert not dominates(a, b)

    def test_objectives_clamped_to_range(self, rng):
        spec = make_domain("sphere", 20)
        X = rng.uniform(-20, 20, (200, 20))
        objs, _, _ = domains.evaluate_batch(X, spec)
        assert np.all(objs >= 0.0) and np.all(objs <= 100.0)

    def test_three_objectives(self):
        spec = make_domain("sphere", 10, objectives=3)
        assert spec.shifts == (4.0, 0.0, -4.0)
        ev = eval_sphere(np.zeros(10), spec)
        assert ev.objectives.shape == (3,)
        assert ev.objectives[1] == pytest.approx(100.0)


class TestRastrigin:
    def test_at_extremum_positive_peak_clamps(self):
        spec = make_domain("rastrigin", 2)
        ev = eval_rastrigin(np.full(2, 4.0), spec)
        # raw objective 1 = 10*n at the extremum; clamps to 100
        assert ev.objectives[0] == 100.0

    def test_hand_computed_second_objective(self):
        # raw objective 2 at x=(4,4): 2 * (10*cos(16*pi) - 64) = -108
        spec = make_domain("rastrigin", 2)
        span = 20214.97 * 2 / 100.0
        expected = np.clip(100.0 * (1.0 - 108.0 / span), 0.0, 100.0)
        ev = eval_rastrigin(np.full(2, 4.0), spec)
        assert ev.objectives[1] == pytest.approx(expected)

    def test_range_after_clamp(self, rng):
        spec = make_domain("rastrigin", 10)
        X = rng.uniform(-30, 30, (200, 10))
        objs, _, _ = domains.evaluate_batch(X, spec)
        assert np.all(objs >= 0.0) and np.all(objs <= 100.0)


class TestArm:
    def test_straight_arm(self):
        spec = make_domain("arm", 4)
        ev = eval_arm(np.zeros(4), spec)
        assert ev.objectives == pytest.approx([100.0, 100.0])
        assert ev.measures == pytest.approx([4.0, 0.0])
        assert not ev.failed

    def test_equal_angles_zero_variance(self):
        spec = make_domain("arm", 6)
        for c in (-1.0, 0.5, 2.0):
            ev = eval_arm(np.full(6, c), spec)
            assert ev.objectives == pytest.approx([100.0, 100.0])

    def test_tip_traces_reachable_circle(self):
        spec = make_domain("arm", 8)
        for c in np.linspace(-np.pi, np.pi, 9):
            ev = eval_arm(np.full(8, c), spec)
            assert np.hypot(*ev.measures) <= 8.0 + 1e-9

    def test_excess_variance_fails(self):
        spec = make_domain("arm", 4)
        # first half (x1, x2) with population variance 7.0 > 6.58
        half = np.array([-np.sqrt(7.0), np.sqrt(7.0)])
        ev = eval_arm(np.concatenate([half, np.zeros(2)]), spec)
        assert ev.failed

    def test_measures_within_radius(self, rng):
        spec = make_domain("arm", 10)
        X = rng.uniform(-np.pi, np.pi, (200, 10))
        _, measures, _ = domains.evaluate_batch(X, spec)
        assert np.all(np.hypot(measures[:, 0], measures[:, 1]) <= 10.0 + 1e-9)


class TestSpecs:
    def test_measure_bounds(self):
        assert make_domain("sphere", 100).measure_bounds == ((-256.0, 256.0), (-256.0, 256.0))
        assert make_domain("arm", 100).measure_bounds == ((-100.0, 100.0), (-100.0, 100.0))

    def test_invalid_configs(self):
        with pytest.raises(ValueError):
            make_domain("sphere", 3)
        with pytest.raises(ValueError):
            make_domain("arm", 10, objectives=3)
        with pytest.raises(ValueError):
            make_domain("nope", 10)

    def test_purity(self, rng):
        spec = make_domain("rastrigin", 6)
        x = rng.uniform(-5, 5, 6)
        a, b = eval_rastrigin(x, spec), eval_rastrigin(x, spec)
        assert np.array_equal(a.objectives, b.objectives)
        assert np.array_equal(a.measures, b.measures)

    def test_every_evaluation_weakly_dominates_origin(self, rng):
        for name in ("sphere", "rastrigin", "arm"):
            spec = make_domain(name, 8)
            X = rng.uniform(-4, 4, (100, 8))
            objs, _, failed = domains.evaluate_batch(X, spec)
            assert np.all(objs[~failed] >= 0.0)
