"""Interpolating dual certificates and the duality lower bound.

Two constructions, both degree-budgeted to stay inside P(M):

* clump certificates: one polynomial per node that is 1 at its node, 0 at
  the rest of its clump, small off-clump, and has L2 norm controlled by the
  node complexity.  Built as a Lagrange-like factor on a coarse frequency
  times a high power of a narrow Fejer kernel.
* grid certificates: one polynomial per node of an on-grid set that
  interpolates the Kronecker delta on the whole set, with an aggregate norm
  controlled by the worst-case grid constant.

Pairing either family with the minimal right singular vector of the
Vandermonde matrix produces a certified lower bound for sigma_min.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bounds import Hypothesis, clump_separation_threshold, theta_constant
from .exceptions import ModelViolationError
from .torus import SupportSet, complexity, decompose_clumps, torus_dist
from .trigpoly import TrigPoly, fejer
from .vandermonde import vandermonde


def _apply_lagrange_factor(
    coeffs: np.ndarray, freq: int, omega_node: float, omega_other: float
) -> np.ndarray:
    """Multiply by (e^(2*pi*i*Q*w) - e^(2*pi*i*Q*w_k)) normalized to 1 at w_j.

    The factor has exactly two nonzero coefficients (at 0 and Q), so the
    product is a shift-and-add instead of a dense convolution.
    """
    denom = np.exp(2j * np.pi * freq * omega_node) - np.exp(
        2j * np.pi * freq * omega_other
    )
    c0 = -np.exp(2j * np.pi * freq * omega_other) / denom
    cq = 1.0 / denom
    out = np.zeros(coeffs.size + freq, dtype=complex)
    out[: coeffs.size] = c0 * coeffs
    out[freq : freq + coeffs.size] += cq * coeffs
    return out


def certificate_I(support: SupportSet, m: int, j: int) -> TrigPoly:
    """Clump certificate for node j: delta on the home clump, small elsewhere.

    Singleton clumps use a modulated Fejer kernel of order floor(M/2) so the
    degree stays within M; larger clumps multiply a Lagrange-like polynomial
    on frequency floor(M/lam) with the lam-th power of a Fejer kernel of
    order floor(M/(2*lam^2)).
    """
    dec = decompose_clumps(support, m)
    if dec is None:
        raise ModelViolationError(f"support does not satisfy the clump model at M={m}")
    pts = support.points
    home = next(c for c in dec.clumps if j in c)
    lam = len(home)
    node = pts[j]

    if lam == 1:
        return fejer(m // 2).shifted(node)

    q = m // lam
    p = m // (2 * lam * lam)
    if p < 1:
        raise ModelViolationError(
            f"clump certificate needs M >= 2*lambda^2 (M={m}, lambda={lam})"
        )
    coeffs = fejer(p).shifted(node).power(lam).coeffs
    for k in home:
        if k != j:
            coeffs = _apply_lagrange_factor(coeffs, q, node, pts[k])
    return TrigPoly(coeffs)


def clump_separation_report(support: SupportSet, m: int) -> Hypothesis:
    """Hypothesis entry for the inter-clump separation needed by the
    clump-certificate guarantees (trivially satisfied for one clump)."""
    dec = decompose_clumps(support, m)
    if dec is None:
        raise ModelViolationError(f"support does not satisfy the clump model at M={m}")
    if dec.num_clumps == 1:
        return Hypothesis(
            condition="inter-clump dist >= complexity separation threshold",
            lhs=math.inf,
            rhs=0.0,
            satisfied=True,
        )
    threshold = clump_separation_threshold(support, m)
    return Hypothesis(
        condition="inter-clump dist >= complexity separation threshold",
        lhs=dec.min_interclump_dist,
        rhs=threshold,
        satisfied=bool(dec.min_interclump_dist >= threshold),
    )


def _require_on_grid(support: SupportSet, n: int) -> np.ndarray:
    idx = np.round(support.points * n)
    if np.max(np.abs(support.points * n - idx)) > 1e-9:
        raise ValueError("support must lie on the 1/N grid")
    return idx.astype(int) % n


def grid_windows(support: SupportSet, m: int, j: int):
    """Near/mid windows of node j: indices within 1/M and within S/(2M)."""
    pts = support.points
    s = support.size
    d = torus_dist(pts, pts[j])
    gamma = np.flatnonzero(d < 1.0 / m)          # includes j itself
    tau = np.flatnonzero(d < s / (2.0 * m))      # includes j itself
    return gamma, tau


def certificate_H_grid(support: SupportSet, m: int, n: int, j: int) -> TrigPoly:
    """Grid certificate for node j: Kronecker delta on the whole set.

    Lagrange-like factors use frequency floor(M/S) inside the S/(2M) window
    and floor(1/(2*dist)) outside it; the product is localized by a Fejer
    kernel of order floor(M/(2S)).
    """
    _require_on_grid(support, n)
    pts = support.points
    s = support.size
    node = pts[j]
    _, tau = grid_windows(support, m, j)
    tau_set = set(int(t) for t in tau)

    p = m // (2 * s)
    if p < 1:
        raise ValueError(f"grid certificate needs M >= 2*S (M={m}, S={s})")
    coeffs = fejer(p).shifted(node).coeffs
    for k in range(s):
        if k == j:
            continue
        if k in tau_set:
            freq = m // s
        else:
            freq = int(1.0 / (2.0 * torus_dist(pts[k], node)))
        coeffs = _apply_lagrange_factor(coeffs, freq, node, pts[k])
    return TrigPoly(coeffs)


def grid_hypotheses(m: int, n: int, s: int) -> tuple[Hypothesis, ...]:
    """Hypotheses under which the grid-certificate norm bound is guaranteed."""
    return (
        Hypothesis("S >= 2", s, 2, s >= 2),
        Hypothesis("M >= 2*S", m, 2 * s, m >= 2 * s),
        Hypothesis("N >= pi*M*S", n, math.pi * m * s, n >= math.pi * m * s),
    )


def grid_certificate_norm_budget(m: int, n: int, s: int) -> float:
    """Guaranteed bound on the aggregate L2 norm of the grid certificates."""
    return (1.0 / theta_constant(m, s)) / math.sqrt(m) * (n / m) ** (s - 1)


def evaluate_E(support: SupportSet, m: int, n: int) -> float:
    """Crowding functional controlling the aggregate grid-certificate norm.

    E = sum_j floor(M/S)^(2-2*tau_j) * pi^(2-2*gamma_j)
        * 4^(S - 2*tau_j + gamma_j) * prod over the mid window of 1/dist^2.
    """
    _require_on_grid(support, n)
    pts = support.points
    s = support.size
    floor_ms = m // s
    total = 0.0
    for j in range(s):
        gamma_idx, tau_idx = grid_windows(support, m, j)
        gamma_j = gamma_idx.size
        tau_j = tau_idx.size
        prod = 1.0
        for k in tau_idx:
            if k != j:
                prod /= torus_dist(pts[k], pts[j]) ** 2
        total += (
            float(floor_ms) ** (-2 * tau_j + 2)
            * (1.0 / math.pi**2) ** (gamma_j - 1)
            * 4.0 ** (s - 2 * tau_j + gamma_j)
            * prod
        )
    return total


def evaluate_E_consecutive(m: int, n: int, s: int) -> float:
    """Closed form of the crowding functional on S consecutive grid nodes."""
    from .bounds import interaction_sum

    return (
        float(m // s) ** (-2 * s + 2)
        * float(n) ** (2 * s - 2)
        * (1.0 / math.pi) ** (2 * s - 2)
        * float(interaction_sum(s))
    )


@dataclass(frozen=True)
class DualityBound:
    """Certified lower bound for sigma_min from a certificate combination."""

    value: float
    residual_norm: float
    combination_norm: float


def duality_lower_bound(
    support: SupportSet,
    m: int,
    mode: str = "clump",
    n: int | None = None,
    detailed: bool = False,
):
    """Lower-bound sigma_min by pairing certificates with the numerically
    minimal right singular vector.

    The residual eps collects interpolation defects of the certificate
    combination at the nodes; the bound (1 - ||eps||) / ||combination|| is
    sound whenever ||eps|| < 1 and reported as 0 otherwise.
    """
    if mode not in ("clump", "grid"):
        raise ValueError("mode must be 'clump' or 'grid'")
    phi = vandermonde(support, m)
    _, _, vh = np.linalg.svd(phi)
    v = vh[-1].conj()
    # fix the irrelevant global phase for reproducibility
    k = int(np.argmax(np.abs(v)))
    v = v * np.exp(-1j * np.angle(v[k]))

    if mode == "clump":
        certs = [certificate_I(support, m, j) for j in range(support.size)]
    else:
        if n is None:
            raise ValueError("grid mode requires the grid size N")
        certs = [certificate_H_grid(support, m, n, j) for j in range(support.size)]

    combo = certs[0] * v[0]
    for j in range(1, support.size):
        combo = combo + certs[j] * v[j]
    residual = combo.evaluate(support.points) - v
    eps_norm = float(np.linalg.norm(residual))
    if eps_norm >= 1.0:
        value = 0.0
    else:
        value = (1.0 - eps_norm) / combo.l2_norm()
    if detailed:
        return DualityBound(
            value=value, residual_norm=eps_norm, combination_norm=combo.l2_norm()
        )
    return value
