"""MUSIC subspace recovery and numerical checks of its perturbation theory.

The noise-space correlation R(w) = ||W* phi_L(w)|| / ||phi_L(w)|| vanishes
exactly at the true nodes in the noiseless case; its reciprocal, the
imaging function J, peaks there.  Recovery samples J on a uniform grid,
keeps the S largest strict circular local maxima, and optionally refines
each peak inside its bracketing cell.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .bounds import music_noise_tolerance
from .exceptions import BadPencilParameterError
from .seeds import derive_seed
from .torus import SupportSet, bottleneck_distance, min_separation, torus_dist
from .vandermonde import (
    Measurements,
    SpikeSignal,
    hankel,
    noise_space,
    sigma_extremes,
    synthesize,
    vandermonde,
)

GRID_FACTOR = 16  # default evaluation-grid density relative to M


@dataclass(frozen=True)
class MusicConfig:
    """Recovery parameters: sparsity, pencil length, and evaluation grid."""

    s: int
    l: int | None = None          # defaults to floor(M/2)
    grid_size: int | None = None  # defaults to 16*M
    refine: bool = False          # golden-section peak refinement

    def resolve(self, m: int) -> tuple[int, int]:
        """Validated (L, G) for a length-(M+1) measurement vector."""
        if self.s < 1:
            raise ValueError("sparsity must be positive")
        pencil = self.l if self.l is not None else m // 2
        if pencil < self.s or m - pencil + 1 < self.s:
            raise BadPencilParameterError(
                f"need L >= S and M-L+1 >= S (L={pencil}, M={m}, S={self.s})"
            )
        grid = self.grid_size if self.grid_size is not None else GRID_FACTOR * m
        if grid < GRID_FACTOR * m:
            raise ValueError(f"evaluation grid must have at least {GRID_FACTOR * m} points")
        return pencil, grid


@dataclass(frozen=True)
class MusicResult:
    """Recovered support plus the sampled functions and SVD diagnostics."""

    recovered: SupportSet
    grid: np.ndarray
    correlation: np.ndarray
    imaging: np.ndarray
    singular_values: np.ndarray
    peak_indices: np.ndarray
    gap: float                 # sigma_S / sigma_{S+1} of the Hankel matrix
    degenerate: bool           # fewer than S strict local maxima found


def _noise_projector(y: Measurements, s: int, pencil: int) -> tuple[np.ndarray, np.ndarray]:
    h = hankel(y, pencil)
    svd = noise_space(h, s)
    return svd.noise_left, svd.singular_values


def _signal_projector(y: Measurements, s: int, pencil: int) -> tuple[np.ndarray, np.ndarray]:
    h = hankel(y, pencil)
    svd = noise_space(h, s)
    return svd.signal_left, svd.singular_values


def _correlation_from_projector(noise_basis: np.ndarray, omegas: np.ndarray) -> np.ndarray:
    pencil = noise_basis.shape[0] - 1
    phases = np.exp(
        -2j * np.pi * np.outer(np.arange(pencil + 1), np.asarray(omegas, dtype=float))
    )
    projected = noise_basis.conj().T @ phases
    return np.linalg.norm(projected, axis=0) / math.sqrt(pencil + 1)


@lru_cache(maxsize=8)
def _steering_grid(pencil: int, grid_size: int) -> np.ndarray:
    """Cached (L+1) x G matrix of steering vectors on the uniform grid."""
    grid = np.arange(grid_size) / grid_size
    phases = np.exp(-2j * np.pi * np.outer(np.arange(pencil + 1), grid))
    phases.setflags(write=False)
    return phases


def _correlation_on_grid(signal_basis: np.ndarray, pencil: int, grid_size: int) -> np.ndarray:
    """Grid correlation via the signal-space complement:
    R^2 = 1 - ||U* phi||^2 / (L+1); equals the noise-space formula since the
    bases are orthonormal complements, but costs S instead of L+1-S rows."""
    phases = _steering_grid(pencil, grid_size)
    projected = signal_basis.conj().T @ phases
    energy = np.sum(np.abs(projected) ** 2, axis=0) / (pencil + 1)
    return np.sqrt(np.maximum(1.0 - energy, 0.0))


def correlation_profile(y: Measurements, cfg: MusicConfig, omegas) -> np.ndarray:
    """Noise-space correlation at the given points (noise space built once)."""
    pencil, _ = cfg.resolve(y.m)
    basis, _ = _noise_projector(y, cfg.s, pencil)
    return _correlation_from_projector(basis, np.atleast_1d(np.asarray(omegas, float)))


def correlation(y: Measurements, cfg: MusicConfig, omega: float) -> float:
    """Noise-space correlation at a single point; lies in [0, 1]."""
    return float(correlation_profile(y, cfg, [omega])[0])


def _golden_refine(f, lo: float, hi: float, iters: int = 40) -> float:
    """Golden-section minimizer of f on [lo, hi]."""
    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - inv_phi * (b - a)
    d = a + inv_phi * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(iters):
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - inv_phi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + inv_phi * (b - a)
            fd = f(d)
    return 0.5 * (a + b)


def recover(y: Measurements, cfg: MusicConfig) -> MusicResult:
    """Run MUSIC: imaging function on the grid, S largest strict local maxima.

    Ties break toward larger imaging value then smaller grid index.  When
    fewer than S strict maxima exist, the result is padded with the largest
    unused grid values and flagged degenerate.
    """
    pencil, grid_size = cfg.resolve(y.m)
    signal_basis, singular_values = _signal_projector(y, cfg.s, pencil)
    grid = np.arange(grid_size) / grid_size
    corr = _correlation_on_grid(signal_basis, pencil, grid_size)
    with np.errstate(divide="ignore"):
        imaging = np.where(corr > 0.0, 1.0 / np.where(corr > 0.0, corr, 1.0), np.inf)

    is_max = (imaging > np.roll(imaging, 1)) & (imaging > np.roll(imaging, -1))
    candidates = np.flatnonzero(is_max)
    order = np.lexsort((candidates, -imaging[candidates]))
    chosen = list(candidates[order][: cfg.s])

    degenerate = len(chosen) < cfg.s
    if degenerate:
        leftover = np.setdiff1d(np.arange(grid_size), chosen, assume_unique=False)
        fill_order = np.lexsort((leftover, -imaging[leftover]))
        chosen.extend(leftover[fill_order][: cfg.s - len(chosen)])

    peak_indices = np.array(sorted(chosen), dtype=int)
    positions = grid[peak_indices]

    if cfg.refine and not degenerate:
        def corr_at(w: float) -> float:
            phi = np.exp(-2j * np.pi * np.arange(pencil + 1) * w)
            energy = float(np.sum(np.abs(signal_basis.conj().T @ phi) ** 2))
            return math.sqrt(max(1.0 - energy / (pencil + 1), 0.0))

        refined = []
        for g in peak_indices:
            lo = (g - 1) / grid_size
            hi = (g + 1) / grid_size
            refined.append(_golden_refine(corr_at, lo, hi) % 1.0)
        positions = np.array(refined)

    s = cfg.s
    gap = float("inf")
    if singular_values.size > s and singular_values[s] > 0:
        gap = float(singular_values[s - 1] / singular_values[s])

    return MusicResult(
        recovered=SupportSet(positions),
        grid=grid,
        correlation=corr,
        imaging=imaging,
        singular_values=singular_values,
        peak_indices=peak_indices,
        gap=gap,
        degenerate=degenerate,
    )


@dataclass(frozen=True)
class PerturbationReport:
    """Monte-Carlo audit of the correlation perturbation inequality."""

    trials: int
    checked: int
    precondition_failures: int
    violations: int
    max_ratio: float      # worst observed (sup deviation)/(bound), checked trials
    mean_ratio: float


def perturbation_check(
    signal: SpikeSignal,
    m: int,
    pencil: int,
    sigma: float,
    trials: int,
    seed: int,
) -> PerturbationReport:
    """Verify that whenever 2*||H(eta)|| < x_min*s_min(Phi_L)*s_min(Phi_{M-L}),
    the sup deviation of the correlation is at most
    2*||H(eta)|| / (x_min*s_min(Phi_L)*s_min(Phi_{M-L}))."""
    cfg = MusicConfig(s=signal.support.size, l=pencil)
    pencil, grid_size = cfg.resolve(m)
    clean = synthesize(signal, m, 0.0, seed)
    grid = np.arange(grid_size) / grid_size
    clean_basis, _ = _noise_projector(clean, cfg.s, pencil)
    base_corr = _correlation_from_projector(clean_basis, grid)

    smin_left = sigma_extremes(vandermonde(signal.support, pencil))[0]
    smin_right = sigma_extremes(vandermonde(signal.support, m - pencil))[0]
    denom = signal.x_min * smin_left * smin_right

    checked = 0
    failures = 0
    violations = 0
    ratios = []
    for t in range(trials):
        noisy = synthesize(signal, m, sigma, derive_seed(seed, t))
        hankel_norm = float(np.linalg.norm(hankel(noisy.noise, pencil), ord=2))
        if 2.0 * hankel_norm >= denom:
            failures += 1
            continue
        checked += 1
        bound = 2.0 * hankel_norm / denom
        noisy_basis, _ = _noise_projector(noisy, cfg.s, pencil)
        deviation = float(
            np.max(np.abs(_correlation_from_projector(noisy_basis, grid) - base_corr))
        )
        ratio = deviation / bound if bound > 0 else (0.0 if deviation == 0 else math.inf)
        ratios.append(ratio)
        if deviation > bound * (1.0 + 1e-9):
            violations += 1

    return PerturbationReport(
        trials=trials,
        checked=checked,
        precondition_failures=failures,
        violations=violations,
        max_ratio=max(ratios) if ratios else 0.0,
        mean_ratio=float(np.mean(ratios)) if ratios else 0.0,
    )


@dataclass(frozen=True)
class ToleranceReport:
    """Empirical success rate at the noise-tolerance threshold."""

    sigma: float
    eps: float
    trials: int
    successes: int
    empirical_rate: float
    required_rate: float   # theoretical probability minus 3-sigma sampling slack
    hypotheses_satisfied: bool

    @property
    def passed(self) -> bool:
        return self.empirical_rate >= self.required_rate


def theorem34_check(
    signal: SpikeSignal,
    m: int,
    nu: float,
    eps: float,
    trials: int,
    seed: int,
    sigma_fraction: float = 0.999,
) -> ToleranceReport:
    """Set sigma just below the noise-tolerance threshold and measure how
    often the correlation moves by at most eps (pencil length M/2)."""
    support = signal.support
    dec = support.decompose_clumps(m)
    if dec is None:
        raise ValueError("scene must satisfy the clump model")
    alpha = m * min_separation(support) if support.size > 1 else 1.0
    report = music_noise_tolerance(
        [len(c) for c in dec.clumps],
        alpha,
        m,
        nu,
        eps,
        interclump_dist=dec.min_interclump_dist if dec.num_clumps > 1 else None,
    )
    sigma = sigma_fraction * report.value * signal.x_min
    cfg = MusicConfig(s=support.size, l=m // 2)
    pencil, grid_size = cfg.resolve(m)
    grid = np.arange(grid_size) / grid_size
    clean = synthesize(signal, m, 0.0, seed)
    clean_basis, _ = _noise_projector(clean, cfg.s, pencil)
    base_corr = _correlation_from_projector(clean_basis, grid)

    successes = 0
    for t in range(trials):
        noisy = synthesize(signal, m, sigma, derive_seed(seed, t))
        noisy_basis, _ = _noise_projector(noisy, cfg.s, pencil)
        deviation = float(
            np.max(np.abs(_correlation_from_projector(noisy_basis, grid) - base_corr))
        )
        if deviation <= eps:
            successes += 1

    prob = 1.0 - (m + 2) ** (-(nu - 1.0))
    slack = 3.0 * math.sqrt(max(prob * (1.0 - prob), 1e-12) / trials)
    return ToleranceReport(
        sigma=sigma,
        eps=eps,
        trials=trials,
        successes=successes,
        empirical_rate=successes / trials,
        required_rate=prob - slack,
        hypotheses_satisfied=report.hypotheses_satisfied,
    )


def support_error(truth: SupportSet, recovered: SupportSet) -> float:
    """Bottleneck matching error between true and recovered supports."""
    return bottleneck_distance(truth, recovered)
