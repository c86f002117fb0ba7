"""Trigonometric polynomials with nonnegative frequencies.

A polynomial of degree at most M is stored as its M+1 Fourier coefficients
h(0..M); evaluation is f(w) = sum_m h(m) exp(2*pi*i*m*w) and the L2 norm on
the torus equals the Euclidean norm of the coefficients (Parseval).
"""

from __future__ import annotations

import numpy as np


class TrigPoly:
    """Polynomial on the torus spanned by exp(2*pi*i*m*w), m >= 0."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        c = np.atleast_1d(np.asarray(coeffs, dtype=complex))
        if c.ndim != 1 or c.size == 0:
            raise ValueError("coefficients must be a nonempty 1-d array")
        c.setflags(write=False)
        self.coeffs = c

    @property
    def degree(self) -> int:
        return self.coeffs.size - 1

    def max_frequency(self, tol: float = 0.0) -> int:
        """Highest frequency with |coefficient| > tol (0 for the zero poly)."""
        nonzero = np.flatnonzero(np.abs(self.coeffs) > tol)
        return int(nonzero[-1]) if nonzero.size else 0

    def l2_norm(self) -> float:
        return float(np.linalg.norm(self.coeffs))

    def __call__(self, omega):
        return self.evaluate(omega)

    def evaluate(self, omega):
        """Pointwise evaluation at scalar or array arguments."""
        w = np.asarray(omega, dtype=float)
        phases = np.exp(2j * np.pi * np.multiply.outer(w, np.arange(self.coeffs.size)))
        values = phases @ self.coeffs
        if w.ndim == 0:
            return complex(values)
        return values

    def evaluate_uniform(self, grid_size: int) -> np.ndarray:
        """Values on {g/G} via an inverse FFT; needs G >= degree + 1."""
        if grid_size < self.coeffs.size:
            raise ValueError("uniform grid must have at least degree+1 points")
        padded = np.zeros(grid_size, dtype=complex)
        padded[: self.coeffs.size] = self.coeffs
        return np.fft.ifft(padded) * grid_size

    def shifted(self, offset: float) -> "TrigPoly":
        """Coefficients of w -> f(w - offset)."""
        m = np.arange(self.coeffs.size)
        return TrigPoly(self.coeffs * np.exp(-2j * np.pi * m * offset))

    def __mul__(self, other):
        if isinstance(other, TrigPoly):
            return TrigPoly(np.convolve(self.coeffs, other.coeffs))
        return TrigPoly(self.coeffs * other)

    __rmul__ = __mul__

    def __add__(self, other: "TrigPoly") -> "TrigPoly":
        n = max(self.coeffs.size, other.coeffs.size)
        out = np.zeros(n, dtype=complex)
        out[: self.coeffs.size] += self.coeffs
        out[: other.coeffs.size] += other.coeffs
        return TrigPoly(out)

    def power(self, exponent: int) -> "TrigPoly":
        if exponent < 1:
            raise ValueError("exponent must be a positive integer")
        out = self
        for _ in range(exponent - 1):
            out = out * self
        return out


def fejer(p: int) -> TrigPoly:
    """Modulated normalized Fejer kernel exp(2*pi*i*P*w) * F_P(w).

    The result lives in degree 2P with the triangular weights
    (P+1-|k-P|)/(P+1)^2 at frequencies k = 0..2P; its value at 0 is 1.
    """
    if p < 1:
        raise ValueError("kernel order must be a positive integer")
    k = np.arange(2 * p + 1)
    weights = (p + 1 - np.abs(k - p)) / (p + 1) ** 2
    return TrigPoly(weights.astype(complex))


def eval_poly(poly: TrigPoly, points) -> np.ndarray:
    """Pointwise evaluation at an arbitrary list of torus points."""
    return poly.evaluate(np.asarray(points, dtype=float))


def eval_poly_uniform(poly: TrigPoly, grid_size: int) -> np.ndarray:
    """Evaluation on the uniform grid {g/G} using the FFT path."""
    return poly.evaluate_uniform(grid_size)
