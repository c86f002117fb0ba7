"""Steering vectors, Vandermonde/Hankel matrices, synthesis, and subspaces.

Measurements follow y_k = sum_j x_j exp(-2*pi*i*k*w_j) + eta_k for
k = 0..M.  Noise is circularly-symmetric complex Gaussian with per-entry
standard deviation sigma (variance sigma^2/2 in each real component).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import (
    BadPencilParameterError,
    NumericFailureError,
)
from .torus import SupportSet

# Singular values below this multiple of sigma_max sit at the double-precision
# round-off floor and are flagged by the sweep drivers.
NUMERICAL_FLOOR = 1e-13


@dataclass(frozen=True)
class SpikeSignal:
    """Discrete measure: support nodes plus nonzero complex amplitudes."""

    support: SupportSet
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.atleast_1d(np.asarray(self.amplitudes, dtype=complex))
        if amps.size != self.support.size:
            raise ValueError("amplitude count must match support size")
        if np.any(np.abs(amps) == 0):
            raise ValueError("amplitudes must be nonzero")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def x_min(self) -> float:
        return float(np.min(np.abs(self.amplitudes)))

    @property
    def x_max(self) -> float:
        return float(np.max(np.abs(self.amplitudes)))


@dataclass(frozen=True)
class Measurements:
    """Noisy Fourier samples y of length M+1 with an optional noise record."""

    y: np.ndarray
    m: int
    noise: np.ndarray | None = None
    seed: int | None = None

    def __post_init__(self):
        y = np.asarray(self.y, dtype=complex)
        if y.size != self.m + 1:
            raise ValueError(f"expected {self.m + 1} samples, got {y.size}")
        y.setflags(write=False)
        object.__setattr__(self, "y", y)
        if self.noise is not None:
            eta = np.asarray(self.noise, dtype=complex)
            if eta.size != self.m + 1:
                raise ValueError("noise record length must be M+1")
            eta.setflags(write=False)
            object.__setattr__(self, "noise", eta)


@dataclass(frozen=True)
class SvdResult:
    """Rank-S split of a matrix into signal and noise subspaces."""

    singular_values: np.ndarray
    signal_left: np.ndarray   # U, first S left singular vectors
    noise_left: np.ndarray    # W, orthonormal complement of U
    signal_right: np.ndarray
    noise_right: np.ndarray


def steering_vector(omega: float, length: int) -> np.ndarray:
    """Frequency samples exp(-2*pi*i*m*omega) for m = 0..length."""
    return np.exp(-2j * np.pi * np.arange(length + 1) * omega)


def vandermonde(support: SupportSet, m: int) -> np.ndarray:
    """(M+1) x S matrix whose columns are steering vectors of the nodes."""
    return np.exp(-2j * np.pi * np.outer(np.arange(m + 1), support.points))


def sigma_extremes(a: np.ndarray) -> tuple[float, float]:
    """Smallest and largest singular values from a full double-precision SVD."""
    if a.size == 0:
        raise ValueError("matrix must be nonempty")
    try:
        s = np.linalg.svd(a, compute_uv=False)
    except np.linalg.LinAlgError as exc:
        raise NumericFailureError(f"SVD failed for shape {a.shape}") from exc
    return float(s[-1]), float(s[0])


def spectral_norm(a: np.ndarray) -> float:
    """Largest singular value."""
    return sigma_extremes(a)[1]


def below_numerical_floor(sigma_min: float, sigma_max: float) -> bool:
    """True when sigma_min is dominated by double-precision round-off."""
    return sigma_min < NUMERICAL_FLOOR * sigma_max


def hankel(y, pencil: int) -> np.ndarray:
    """Hankel matrix H[i, j] = y[i + j] of shape (L+1) x (M-L+1)."""
    if isinstance(y, Measurements):
        data, m = y.y, y.m
    else:
        data = np.asarray(y, dtype=complex)
        m = data.size - 1
    if not 1 <= pencil <= m:
        raise BadPencilParameterError(
            f"pencil parameter L={pencil} outside [1, {m}]"
        )
    rows = np.arange(pencil + 1)[:, None]
    cols = np.arange(m - pencil + 1)[None, :]
    return data[rows + cols]


def synthesize(
    signal: SpikeSignal, m: int, sigma: float, seed: int
) -> Measurements:
    """Sample the first M+1 Fourier coefficients of the signal plus noise.

    The noise record is always populated; sigma = 0 yields exact zeros on
    the same RNG path, so runs differing only in sigma share phases.
    """
    clean = vandermonde(signal.support, m) @ signal.amplitudes
    rng = np.random.default_rng(seed)
    draws = rng.standard_normal((m + 1, 2))
    eta = sigma / np.sqrt(2.0) * (draws[:, 0] + 1j * draws[:, 1])
    return Measurements(y=clean + eta, m=m, noise=eta, seed=seed)


def noise_space(h: np.ndarray, s: int) -> SvdResult:
    """Split H into the rank-S signal space and its orthogonal complement.

    The left complement must be nonempty (S < L+1); the right complement may
    be empty, which happens at the minimal pencil M-L+1 = S.
    """
    if s < 1 or s > min(h.shape) or s >= h.shape[0]:
        raise BadPencilParameterError(
            f"sparsity S={s} must satisfy 1 <= S <= min{h.shape} and S < {h.shape[0]}"
        )
    try:
        u, sv, vh = np.linalg.svd(h, full_matrices=True)
    except np.linalg.LinAlgError as exc:
        raise NumericFailureError(f"SVD failed for shape {h.shape}") from exc
    return SvdResult(
        singular_values=sv,
        signal_left=u[:, :s],
        noise_left=u[:, s:],
        signal_right=vh[:s].conj().T,
        noise_right=vh[s:].conj().T,
    )
