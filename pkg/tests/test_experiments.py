import math

import numpy as np
import pytest

from superres.exceptions import SceneOverflowError, SingularFitError
from superres.experiments import (
    ClumpSceneConfig,
    certify_scene,
    fit_slope,
    generate_clump_scene,
    music_demo,
    phase_transition,
    run_selftest,
    scene_support,
    sweep_sigma_min,
    sweep_theta,
)
from superres.torus import SupportSet, decompose_clumps


class TestSceneGeneration:
    def test_pair_spacing(self):
        cfg = ClumpSceneConfig(a=1, lam=2, alpha=0.5, m=100, seed=0)
        sig = generate_clump_scene(cfg)
        pts = sig.support.points
        assert pts[1] - pts[0] == pytest.approx(0.005)

    def test_two_clumps_decompose(self):
        cfg = ClumpSceneConfig(a=2, lam=3, alpha=0.3, m=4000, seed=1)
        sig = generate_clump_scene(cfg)
        dec = decompose_clumps(sig.support, 4000)
        assert dec is not None
        assert dec.sizes == (3, 3)

    def test_unit_amplitudes(self):
        cfg = ClumpSceneConfig(a=2, lam=2, alpha=0.4, m=3000, seed=5)
        sig = generate_clump_scene(cfg)
        assert np.allclose(np.abs(sig.amplitudes), 1.0)

    def test_deterministic_given_config(self):
        cfg = ClumpSceneConfig(a=1, lam=3, alpha=0.4, m=500, seed=9)
        a = generate_clump_scene(cfg)
        b = generate_clump_scene(cfg)
        assert np.array_equal(a.support.points, b.support.points)
        assert np.array_equal(a.amplitudes, b.amplitudes)

    def test_overflow(self):
        with pytest.raises(SceneOverflowError):
            scene_support(ClumpSceneConfig(a=3, lam=3, alpha=0.3, m=100))


class TestFitSlope:
    def test_exact_line(self):
        xs = np.linspace(0, 5, 9)
        slope, intercept, r2 = fit_slope(xs, 2 * xs + 1)
        assert slope == pytest.approx(2.0)
        assert intercept == pytest.approx(1.0)
        assert r2 == pytest.approx(1.0)

    def test_constant(self):
        slope, intercept, r2 = fit_slope([1, 2, 3], [4.0, 4.0, 4.0])
        assert slope == 0.0
        assert r2 == 1.0

    def test_noisy_line(self):
        rng = np.random.default_rng(0)
        xs = np.linspace(0, 1, 50)
        ys = -3 * xs + rng.normal(0, 1e-6, xs.size)
        slope, _, _ = fit_slope(xs, ys)
        assert slope == pytest.approx(-3.0, abs=1e-4)

    def test_degenerate(self):
        with pytest.raises(SingularFitError):
            fit_slope([2.0, 2.0], [1.0, 3.0])


class TestSigmaMinSweep:
    def test_desk_scale_slopes(self):
        res = sweep_sigma_min([1], [2, 3], m=512, srf_points=12)
        for entry in res.summary["slopes"]:
            assert entry["slope_zeta"] == pytest.approx(-(entry["lam"] - 1), abs=0.15)
            assert abs(entry["slope_ratio"]) < 0.15
        for row in res.rows:
            if row["hypotheses_satisfied"]:
                assert row["ratio"] >= 1.0
            assert not row["floor_flagged"]

    def test_row_schema(self):
        res = sweep_sigma_min([1], [2], m=256, srf_points=4)
        assert set(res.columns) == set(res.rows[0])
        assert len(res.rows) == 4


class TestThetaSweep:
    def test_slopes_and_sandwich(self):
        res = sweep_theta([2, 3], m=50, srf_points=12)
        for entry in res.summary["slopes"]:
            assert entry["slope_theta_star"] == pytest.approx(-(entry["s"] - 1), abs=0.1)
        for row in res.rows:
            assert row["theta"] <= row["theta_star"] * (1 + 1e-9)

    def test_ratio_flat_in_valid_region(self):
        res = sweep_theta([2], m=50, srf_min=2.0, srf_max=20.0, srf_points=14)
        entry = res.summary["slopes"][0]
        assert abs(entry["slope_ratio"]) < 0.15


class TestPhaseTransition:
    def test_zero_like_noise_column_succeeds(self):
        res = phase_transition(
            1, 2, m=50, srf_points=4, srf_max=4.0, sigma_lo=1e-6, sigma_hi=1e-5,
            sigma_per_decade=1, trials=2, seed=3,
        )
        lowest = min(r["sigma"] for r in res.rows)
        for row in res.rows:
            if row["sigma"] == lowest:
                assert row["success"]

    def test_deterministic(self):
        kwargs = dict(
            m=50, srf_points=3, srf_max=3.0, sigma_lo=1e-4, sigma_hi=1e-2,
            sigma_per_decade=2, trials=2, seed=11,
        )
        a = phase_transition(1, 2, **kwargs)
        b = phase_transition(1, 2, **kwargs)
        assert a.rows == b.rows
        assert a.summary["q"] == b.summary["q"]

    def test_threshold_stable_under_grid_refinement(self):
        # doubling the sigma density moves sigma* by at most one original step
        base = dict(m=50, srf_points=3, srf_max=3.0, sigma_lo=1e-4, sigma_hi=1.0, trials=3, seed=2)
        coarse = phase_transition(1, 2, sigma_per_decade=3, **base)
        dense = phase_transition(1, 2, sigma_per_decade=6, **base)
        step = 1.0 / 3  # one coarse step in log10
        for th_c, th_d in zip(coarse.summary["thresholds"], dense.summary["thresholds"]):
            assert th_c["srf"] == pytest.approx(th_d["srf"])
            if th_c["sigma_star"] > 0 and th_d["sigma_star"] > 0:
                moved = abs(math.log10(th_d["sigma_star"]) - math.log10(th_c["sigma_star"]))
                assert moved <= step + 1e-9

    def test_cell_count_and_schema(self):
        res = phase_transition(
            1, 2, m=50, srf_points=3, sigma_lo=1e-2, sigma_hi=1.0,
            sigma_per_decade=2, trials=1, seed=0,
        )
        assert len(res.rows) == 3 * 5  # 3 SRF x (2 decades * 2 + 1) sigma
        assert set(res.columns) == set(res.rows[0])


class TestMusicDemo:
    def test_trace_schema(self):
        res = music_demo(1, 3, 0.5, 100, 0.001, seed=3)
        assert len(res.rows) == 1600
        assert sum(r["is_true_node"] for r in res.rows) == 3
        assert sum(r["is_recovered"] for r in res.rows) == 3
        assert all(np.isfinite(r["imaging"]) for r in res.rows)
        assert res.summary["dist_b"] < res.summary["delta"] / 2


class TestCertifyScene:
    def test_valid_scene_passes(self):
        support = scene_support(ClumpSceneConfig(a=2, lam=2, alpha=0.3, m=2000))
        res = certify_scene(support, 2000)
        assert res.summary["all_checks_ok"]
        assert res.summary["separation_ok"]
        assert res.summary["duality_sound"]

    def test_tight_scene_flags_separation(self):
        # clumps barely beyond 1/M: model holds, separation hypothesis fails
        support = scene_support(
            ClumpSceneConfig(a=2, lam=2, alpha=0.3, m=2000, beta=1.5)
        )
        res = certify_scene(support, 2000)
        assert not res.summary["separation_ok"]
        assert res.summary["duality_sound"]


def test_selftest_passes():
    res = run_selftest(seed=0)
    assert res.summary["all_passed"]
    assert len(res.rows) == 5
