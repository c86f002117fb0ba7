import itertools
import math

import numpy as np
import pytest

from helpers import random_grid_subset, random_sep1_scene
from superres.bounds import constant_B, interaction_sum
from superres.certificates import (
    certificate_H_grid,
    certificate_I,
    clump_separation_report,
    duality_lower_bound,
    evaluate_E,
    evaluate_E_consecutive,
    grid_certificate_norm_budget,
    grid_hypotheses,
)
from superres.exceptions import ModelViolationError
from superres.torus import SupportSet, complexity, decompose_clumps, torus_dist
from superres.trigpoly import TrigPoly, eval_poly, eval_poly_uniform, fejer
from superres.vandermonde import sigma_extremes, vandermonde

LEAD = 20 * math.sqrt(2) / 19


class TestFejer:
    def test_unit_at_origin(self):
        for p in (1, 4, 17):
            assert fejer(p)(0.0) == pytest.approx(1.0)

    def test_l2_norm_formula(self):
        # ||F_P|| = sqrt((P+1)^2 + 2*sum m^2) / (P+1)^2; P=1 gives sqrt(6)/4
        assert fejer(1).l2_norm() == pytest.approx(math.sqrt(6) / 4, rel=1e-12)
        for p in (2, 5, 11):
            expected = math.sqrt((p + 1) ** 2 + 2 * sum(m * m for m in range(1, p + 1))) / (
                p + 1
            ) ** 2
            assert fejer(p).l2_norm() == pytest.approx(expected, rel=1e-12)

    def test_pointwise_decay_bound(self):
        # |F_P(w)| <= 1/(4 (P+1)^2 |w|_T^2) away from the origin
        p = 9
        kernel = fejer(p)
        for w in np.linspace(0.01, 0.99, 100):
            bound = 1.0 / (4 * (p + 1) ** 2 * torus_dist(w, 0.0) ** 2)
            assert abs(kernel(w)) <= bound + 1e-12

    def test_degree(self):
        assert fejer(7).max_frequency() == 14


class TestTrigPoly:
    def test_constant_poly(self):
        ones = eval_poly(TrigPoly([1.0]), np.linspace(0, 1, 13))
        assert np.allclose(ones, 1.0)

    def test_fft_matches_direct(self):
        rng = np.random.default_rng(0)
        poly = TrigPoly(rng.standard_normal(33) + 1j * rng.standard_normal(33))
        g = 128
        direct = eval_poly(poly, np.arange(g) / g)
        assert np.max(np.abs(direct - eval_poly_uniform(poly, g))) < 1e-10

    def test_parseval_against_quadrature(self):
        rng = np.random.default_rng(1)
        m = 20
        poly = TrigPoly(rng.standard_normal(m + 1) + 1j * rng.standard_normal(m + 1))
        g = 4 * (m + 1)
        grid_norm = math.sqrt(np.mean(np.abs(eval_poly_uniform(poly, g)) ** 2))
        assert grid_norm == pytest.approx(poly.l2_norm(), abs=1e-8)

    def test_shift_evaluates_translated(self):
        poly = fejer(6)
        shifted = poly.shifted(0.3)
        for w in (0.0, 0.21, 0.77):
            assert shifted(w) == pytest.approx(poly(w - 0.3), abs=1e-12)

    def test_product_degree_and_values(self):
        a, b = fejer(3), fejer(5)
        prod = a * b
        assert prod.degree == a.degree + b.degree
        for w in (0.1, 0.5):
            assert prod(w) == pytest.approx(a(w) * b(w), abs=1e-12)


class TestClumpCertificates:
    def test_singleton_is_modulated_fejer(self):
        m = 101
        ss = SupportSet([0.3, 0.7])
        cert = certificate_I(ss, m, 0)
        expected = fejer(m // 2).shifted(0.3)
        assert np.allclose(cert.coeffs, expected.coeffs)
        assert cert(0.3) == pytest.approx(1.0)

    def test_singleton_offclump_at_threshold(self):
        # neighbor exactly at the separation threshold 10*sqrt(S)/M: the
        # degree-safe kernel guarantees 1/(100 S)
        m, s = 200, 2
        d = 10.0 * math.sqrt(s) / m
        ss = SupportSet([0.2, 0.2 + d])
        cert = certificate_I(ss, m, 0)
        assert abs(cert(ss.points[1])) <= 1.0 / (100 * s)
        assert abs(cert(ss.points[1])) <= 1.0 / (20 * s)

    def test_pair_clump_properties_on_dense_grid(self):
        # all three certificate properties checked on a 10^4-point grid
        m, alpha = 242, 0.3
        ss = SupportSet([0.48, 0.48 + alpha / m, 0.1])
        dec = decompose_clumps(ss, m)
        assert dec.sizes == (1, 2)
        rho = complexity(ss, m)
        for j in (1, 2):  # indices of the pair after sorting: 0.48 is index 1
            cert = certificate_I(ss, m, j)
            vals = cert.evaluate(ss.points)
            target = np.zeros(3)
            target[j] = 1.0
            assert np.max(np.abs(vals[1:] - target[1:])) < 1e-8
            assert abs(vals[0]) <= 1.0 / (20 * 3)
            budget = math.sqrt(2.0 / m) * constant_B(2, m) * 2 * rho[j]
            assert cert.l2_norm() <= budget * (1 + 1e-12)
            assert cert.max_frequency() <= m
            # norm on a dense grid agrees with the coefficient norm
            dense = cert.evaluate(np.arange(10**4) / 10**4)
            assert math.sqrt(np.mean(np.abs(dense) ** 2)) == pytest.approx(
                cert.l2_norm(), rel=1e-6
            )

    @pytest.mark.parametrize("seed", range(25))
    def test_random_scene_properties(self, seed):
        rng = np.random.default_rng(700 + seed)
        support, m = random_sep1_scene(rng)
        s = support.size
        dec = decompose_clumps(support, m)
        rho = complexity(support, m)
        assert clump_separation_report(support, m).satisfied
        for members in dec.clumps:
            lam = len(members)
            for j in members:
                cert = certificate_I(support, m, j)
                vals = cert.evaluate(support.points)
                for k in range(s):
                    if k in members:
                        assert abs(vals[k] - (1.0 if k == j else 0.0)) < 1e-8
                    else:
                        assert abs(vals[k]) <= 1.0 / (20 * s) * (1 + 1e-9)
                budget = math.sqrt(2.0 / m) * constant_B(lam, m) * lam ** (lam - 1) * rho[j]
                assert cert.l2_norm() <= budget * (1 + 1e-12)
                assert cert.max_frequency() <= m

    def test_model_violation_propagates(self):
        ss = SupportSet([0, 0.005, 0.01, 0.015, 0.02, 0.025])
        with pytest.raises(ModelViolationError):
            certificate_I(ss, 50, 0)


class TestGridCertificates:
    def test_small_case_interpolation(self):
        m, s, n = 8, 2, 51
        ss = SupportSet([3 / n, 4 / n])
        for j in range(s):
            cert = certificate_H_grid(ss, m, n, j)
            vals = cert.evaluate(ss.points)
            target = np.zeros(s)
            target[j] = 1.0
            assert np.max(np.abs(vals - target)) < 1e-8
            assert cert.max_frequency() <= m

    def test_degree_budget_formula(self):
        # max frequency <= 2P + sum_k Q_{j,k} <= M
        m, s, n = 20, 3, 200
        ss = SupportSet([0 / n, 1 / n, 60 / n])
        for j in range(s):
            cert = certificate_H_grid(ss, m, n, j)
            assert cert.max_frequency() <= m

    @pytest.mark.parametrize("seed", range(50))
    def test_aggregate_norm_bound(self, seed):
        rng = np.random.default_rng(900 + seed)
        support, m, n, s = random_grid_subset(rng)
        assert all(h.satisfied for h in grid_hypotheses(m, n, s))
        total = 0.0
        for j in range(s):
            cert = certificate_H_grid(support, m, n, j)
            vals = cert.evaluate(support.points)
            target = np.zeros(s)
            target[j] = 1.0
            assert np.max(np.abs(vals - target)) < 1e-8
            total += cert.l2_norm() ** 2
        assert math.sqrt(total) <= grid_certificate_norm_budget(m, n, s) * (1 + 1e-9)

    def test_requires_grid_points(self):
        with pytest.raises(ValueError):
            certificate_H_grid(SupportSet([0.123456, 0.5]), 8, 51, 0)


class TestCrowdingFunctional:
    def test_consecutive_closed_form(self):
        for m, s, n in [(8, 2, 51), (12, 3, 200), (20, 2, 140)]:
            ss = SupportSet(np.arange(s) / n)
            assert evaluate_E(ss, m, n) == pytest.approx(
                evaluate_E_consecutive(m, n, s), rel=1e-12
            )

    def test_all_singleton_windows(self):
        # gamma_j = tau_j = 1 for every node: each term is 4^(S-1)
        m, s, n = 8, 3, 80
        idx = [0, 30, 60]  # pairwise distance 30/80 > S/(2M) = 3/16
        ss = SupportSet(np.array(idx) / n)
        assert evaluate_E(ss, m, n) == pytest.approx(s * 4.0 ** (s - 1), rel=1e-12)

    def test_consecutive_maximizes_exhaustively(self):
        # every size-2 subset of the 1/51 grid at M=8
        m, s, n = 8, 2, 51
        star = evaluate_E_consecutive(m, n, s)
        worst = 0.0
        for pair in itertools.combinations(range(n), s):
            val = evaluate_E(SupportSet(np.array(pair) / n), m, n)
            worst = max(worst, val)
            assert val <= star * (1 + 1e-12)
        assert worst == pytest.approx(star, rel=1e-12)


class TestDualityBound:
    @pytest.mark.parametrize("seed", range(20))
    def test_sound_on_random_clump_scenes(self, seed):
        rng = np.random.default_rng(1100 + seed)
        support, m = random_sep1_scene(rng)
        value = duality_lower_bound(support, m, mode="clump")
        smin, _ = sigma_extremes(vandermonde(support, m))
        assert value <= smin * (1 + 1e-9)
        assert value > 0

    @pytest.mark.parametrize("seed", range(20))
    def test_sound_on_grid_scenes(self, seed):
        rng = np.random.default_rng(1300 + seed)
        support, m, n, s = random_grid_subset(rng)
        detail = duality_lower_bound(support, m, mode="grid", n=n, detailed=True)
        smin, _ = sigma_extremes(vandermonde(support, m))
        assert detail.value <= smin * (1 + 1e-9)
        # grid certificates interpolate exactly, so the residual is tiny and
        # the bound is the reciprocal norm of the combination
        assert detail.residual_norm < 1e-8
        assert detail.value == pytest.approx(
            (1 - detail.residual_norm) / detail.combination_norm
        )

    def test_well_separated_close_to_closed_form(self):
        # within a factor 2 of (19/(20*sqrt(2))) * sqrt(M)
        m = 400
        ss = SupportSet([0.1, 0.35, 0.62, 0.9])
        value = duality_lower_bound(ss, m)
        reference = math.sqrt(m) / LEAD
        assert value >= reference / 2
        assert value <= math.sqrt(m)

    def test_mode_validation(self):
        with pytest.raises(ValueError):
            duality_lower_bound(SupportSet([0.1]), 20, mode="other")
        with pytest.raises(ValueError):
            duality_lower_bound(SupportSet([0.1, 0.5]), 20, mode="grid")
