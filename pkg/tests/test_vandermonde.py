import numpy as np
import pytest

from superres.exceptions import BadPencilParameterError
from superres.torus import SupportSet
from superres.vandermonde import (
    Measurements,
    SpikeSignal,
    below_numerical_floor,
    hankel,
    noise_space,
    sigma_extremes,
    steering_vector,
    synthesize,
    vandermonde,
)


class TestSteering:
    def test_zero_frequency(self):
        assert np.allclose(steering_vector(0.0, 3), np.ones(4))

    def test_half_rotation(self):
        assert np.allclose(steering_vector(0.5, 2), [1, -1, 1])

    @pytest.mark.parametrize("omega,length", [(0.123, 5), (0.77, 31), (0.5, 1)])
    def test_norm(self, omega, length):
        v = steering_vector(omega, length)
        assert np.linalg.norm(v) == pytest.approx(np.sqrt(length + 1))


class TestVandermonde:
    def test_dft_columns(self):
        ss = SupportSet([0, 0.25, 0.5, 0.75])
        phi = vandermonde(ss, 3)
        gram = phi.conj().T @ phi
        assert np.allclose(gram, 4 * np.eye(4), atol=1e-12)

    def test_single_node(self):
        phi = vandermonde(SupportSet([0.0]), 2)
        assert np.allclose(phi[:, 0], [1, 1, 1])

    def test_gram_diagonal_is_m_plus_1(self):
        rng = np.random.default_rng(0)
        ss = SupportSet(rng.uniform(0, 1, 5))
        m = 17
        gram = vandermonde(ss, m).conj().T @ vandermonde(ss, m)
        assert np.allclose(np.diag(gram).real, m + 1)

    def test_sigma_max_frobenius_cap(self):
        rng = np.random.default_rng(1)
        ss = SupportSet(rng.uniform(0, 1, 6))
        m = 40
        _, smax = sigma_extremes(vandermonde(ss, m))
        assert smax <= np.sqrt((m + 1) * ss.size) + 1e-9


class TestSigmaExtremes:
    def test_orthogonal_case(self):
        phi = vandermonde(SupportSet([0, 0.25, 0.5, 0.75]), 3)
        smin, smax = sigma_extremes(phi)
        assert smin == pytest.approx(2.0)
        assert smax == pytest.approx(2.0)

    @pytest.mark.parametrize("seed", range(20))
    def test_variational_sandwich(self, seed):
        rng = np.random.default_rng(seed)
        ss = SupportSet(rng.uniform(0, 1, 4))
        phi = vandermonde(ss, 30)
        smin, smax = sigma_extremes(phi)
        for _ in range(5):
            u = rng.standard_normal(4) + 1j * rng.standard_normal(4)
            q = np.linalg.norm(phi @ u) / np.linalg.norm(u)
            assert smin - 1e-9 <= q <= smax + 1e-9

    @pytest.mark.parametrize("seed", range(100))
    def test_moitra_sandwich_well_separated(self, seed):
        # sigma_min >= sqrt(M - 1/Delta), sigma_max <= sqrt(M + 1/Delta)
        rng = np.random.default_rng(seed)
        m = int(rng.integers(40, 120))
        s = int(rng.integers(2, 6))
        while True:
            pts = np.sort(rng.uniform(0, 1, s))
            try:
                ss = SupportSet(pts)
            except Exception:
                continue
            if ss.min_separation() > 1.0 / m:
                break
        delta = ss.min_separation()
        smin, smax = sigma_extremes(vandermonde(ss, m))
        assert smin >= np.sqrt(m - 1.0 / delta) - 1e-9
        assert smax <= np.sqrt(m + 1.0 / delta) + 1e-9

    def test_upper_bound_instance(self):
        # lam=2 clump at alpha/M with alpha=0.03, M=99: sigma_min below
        # (1/sqrt(2)) * 2*sqrt(M+1) * 2*pi*alpha = 2.6657297628950194
        m, alpha = 99, 0.03
        ss = SupportSet([0.2, 0.2 + alpha / m])
        smin, _ = sigma_extremes(vandermonde(ss, m))
        assert smin <= 2.6657297628950194

    def test_empty_matrix_rejected(self):
        with pytest.raises(ValueError):
            sigma_extremes(np.zeros((0, 0)))


class TestHankel:
    def test_index_arithmetic(self):
        h = hankel(np.array([1.0, 2, 3, 4, 5]), 2)
        assert np.allclose(h, [[1, 2, 3], [2, 3, 4], [3, 4, 5]])

    def test_pencil_range(self):
        y = np.arange(5, dtype=float)
        with pytest.raises(BadPencilParameterError):
            hankel(y, 0)
        with pytest.raises(BadPencilParameterError):
            hankel(y, 5)

    @pytest.mark.parametrize("seed", range(10))
    def test_clean_rank_is_s(self, seed):
        rng = np.random.default_rng(seed)
        s = int(rng.integers(2, 5))
        ss = SupportSet(0.05 + 0.9 * np.sort(rng.uniform(0, 1, s)))
        amps = np.exp(1j * rng.uniform(0, 2 * np.pi, s))
        m = 40
        ell = int(rng.integers(s, m - s + 2))
        y = synthesize(SpikeSignal(ss, amps), m, 0.0, seed)
        sv = np.linalg.svd(hankel(y, ell), compute_uv=False)
        assert sv[s - 1] / sv[s] > 1e6  # numerical rank S

    def test_vandermonde_factorization(self):
        rng = np.random.default_rng(3)
        ss = SupportSet([0.1, 0.33, 0.72])
        amps = rng.standard_normal(3) + 1j * rng.standard_normal(3)
        m, ell = 24, 10
        y = synthesize(SpikeSignal(ss, amps), m, 0.0, 0)
        h = hankel(y, ell)
        phi_l = vandermonde(ss, ell)
        phi_r = vandermonde(ss, m - ell)
        rebuilt = phi_l @ np.diag(amps) @ phi_r.T
        assert np.linalg.norm(h - rebuilt) < 1e-10 * np.linalg.norm(h)


class TestSynthesize:
    def test_noiseless(self):
        ss = SupportSet([0.2, 0.6])
        sig = SpikeSignal(ss, [1.0, 2.0])
        y = synthesize(sig, 10, 0.0, 42)
        assert np.allclose(y.y, vandermonde(ss, 10) @ np.array([1.0, 2.0]))
        assert np.all(y.noise == 0)

    def test_single_spike_at_zero(self):
        y = synthesize(SpikeSignal(SupportSet([0.0]), [1.0]), 8, 0.0, 0)
        assert np.allclose(y.y, np.ones(9))

    def test_noise_standard_deviation(self):
        # per-entry std sigma under the circular complex convention
        sigma = 0.7
        draws = synthesize(
            SpikeSignal(SupportSet([0.0]), [1.0]), 10**5 - 1, sigma, 11
        ).noise
        assert np.std(draws) == pytest.approx(sigma, rel=0.02)
        # each real component carries half the variance
        assert np.std(draws.real) == pytest.approx(sigma / np.sqrt(2), rel=0.03)

    def test_reproducible(self):
        sig = SpikeSignal(SupportSet([0.3, 0.8]), [1.0, 1.0])
        y1 = synthesize(sig, 32, 0.5, 123)
        y2 = synthesize(sig, 32, 0.5, 123)
        assert np.array_equal(y1.y, y2.y)
        y3 = synthesize(sig, 32, 0.5, 124)
        assert not np.array_equal(y3.y, y1.y)

    def test_measurement_validation(self):
        with pytest.raises(ValueError):
            Measurements(y=np.ones(5), m=5)
        with pytest.raises(ValueError):
            SpikeSignal(SupportSet([0.1, 0.2]), [1.0])
        with pytest.raises(ValueError):
            SpikeSignal(SupportSet([0.1]), [0.0])


class TestNoiseSpace:
    def test_clean_tail_vanishes(self):
        ss = SupportSet([0.15, 0.55, 0.9])
        y = synthesize(SpikeSignal(ss, [1, 1, 1]), 30, 0.0, 0)
        res = noise_space(hankel(y, 14), 3)
        assert res.singular_values[3] <= 1e-10 * res.singular_values[0]

    def test_noise_space_kills_steering_vectors(self):
        ss = SupportSet([0.15, 0.55, 0.9])
        ell = 14
        y = synthesize(SpikeSignal(ss, [1, 1, 1]), 30, 0.0, 0)
        res = noise_space(hankel(y, ell), 3)
        for w in ss.points:
            assert np.linalg.norm(res.noise_left.conj().T @ steering_vector(w, ell)) < 1e-8

    def test_orthogonality(self):
        rng = np.random.default_rng(0)
        h = rng.standard_normal((12, 9)) + 1j * rng.standard_normal((12, 9))
        res = noise_space(h, 1)
        assert res.signal_left.shape == (12, 1)
        assert res.noise_left.shape == (12, 11)
        assert np.linalg.norm(res.signal_left.conj().T @ res.noise_left) < 1e-10
        assert np.allclose(
            res.noise_left.conj().T @ res.noise_left, np.eye(11), atol=1e-10
        )

    def test_dimension_guard(self):
        with pytest.raises(BadPencilParameterError):
            noise_space(np.ones((3, 5)), 3)


def test_numerical_floor_flag():
    assert below_numerical_floor(1e-16, 1.0)
    assert not below_numerical_floor(1e-10, 1.0)
