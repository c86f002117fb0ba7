"""Shared random-scene builders for the test suite.

Scenes are constructed to satisfy the hypotheses of the bound they test,
with the tightest constraint (the inter-clump separation requirement)
driving the choice of M.
"""

from __future__ import annotations

import math

import numpy as np

from superres.torus import SupportSet


def _build_support(gaps_alpha, inter_gaps, m, start):
    """Assemble clump positions from per-clump gap lists (units of 1/M)."""
    nodes = []
    pos = start
    for gaps, inter in zip(gaps_alpha, inter_gaps):
        nodes.append(pos)
        for g in gaps:
            pos += g / m
            nodes.append(pos)
        pos += inter / m
    return SupportSet(nodes)


def random_sep1_scene(rng, equispaced=False, max_clumps=3, max_lam=3):
    """Scene satisfying the clump model and the complexity-based separation
    requirement (what Theorem-2.1-style bounds and the clump certificates
    need).  Returns (support, m)."""
    a = int(rng.integers(1, max_clumps + 1))
    lams = [int(rng.integers(1, max_lam + 1)) for _ in range(a)]
    s = sum(lams)
    alpha = float(rng.uniform(0.18, 0.42))
    gaps_alpha = []
    for lam in lams:
        if equispaced:
            gaps_alpha.append([alpha] * (lam - 1))
        else:
            gaps_alpha.append(
                [float(rng.uniform(alpha, 0.45)) for _ in range(lam - 1)]
            )
    # worst-case eq:sep1 threshold in units of 1/M, overestimating rho by
    # the equispaced value (1/(pi*alpha))^(lam-1)
    t_alpha = 0.0
    for lam in lams:
        rho_cap = (1.0 / (math.pi * alpha)) ** (lam - 1)
        t_alpha = max(t_alpha, 10.0 * lam**2.5 * (s * rho_cap) ** (1.0 / (2 * lam)))
    span_alpha = max(sum(g) for g in gaps_alpha) if any(gaps_alpha) else 0.0
    m_min = max(
        2 * s * s,
        int(math.ceil(a * (t_alpha * 1.3 + span_alpha) / 0.85)),
        8,
    )
    m = int(m_min * rng.uniform(1.0, 1.6)) + 1
    inter = [t_alpha * float(rng.uniform(1.05, 1.4)) for _ in range(a)]
    start = float(rng.uniform(0.0, 1.0))
    return _build_support(gaps_alpha, inter, m, start), m


def random_sep2_scene(rng, equispaced=False, max_clumps=3, max_lam=3):
    """Scene satisfying the spacing-parameter separation requirement
    (Theorem-2.2-style).  Returns (support, m, alpha, lams, interclump)."""
    a = int(rng.integers(1, max_clumps + 1))
    lams = [int(rng.integers(1, max_lam + 1)) for _ in range(a)]
    s = sum(lams)
    alpha = float(rng.uniform(0.18, 0.42))
    gaps_alpha = []
    for lam in lams:
        if equispaced:
            gaps_alpha.append([alpha] * (lam - 1))
        else:
            gaps_alpha.append(
                [float(rng.uniform(alpha, 0.45)) for _ in range(lam - 1)]
            )
    t_alpha = max(
        20.0 * math.sqrt(s) * lam**2.5 / math.sqrt(alpha) for lam in lams
    )
    span_alpha = max(sum(g) for g in gaps_alpha) if any(gaps_alpha) else 0.0
    m_min = max(
        s * s,
        int(math.ceil(a * (t_alpha * 1.3 + span_alpha) / 0.85)),
        8,
    )
    m = int(m_min * rng.uniform(1.0, 1.5)) + 1
    inter_gap = t_alpha * float(rng.uniform(1.05, 1.3))
    inter = [inter_gap] * a
    start = float(rng.uniform(0.0, 1.0))
    support = _build_support(gaps_alpha, inter, m, start)
    # alpha parameter for the bound must match the realized separation
    alpha_used = m * support.min_separation() if s > 1 else alpha
    return support, m, alpha_used, lams, inter_gap / m


def random_equispaced_upper_scene(rng, max_lam=4):
    """Equispaced clump passing the upper-bound spacing hypothesis, plus a
    few far-away extra nodes.  Returns (support, m, lam, alpha)."""
    from superres.bounds import derivative_constant

    lam = int(rng.integers(1, max_lam + 1))
    m = int(rng.integers(50, 400))
    c = derivative_constant(lam)
    threshold = math.inf if c == 0 else 1.0 / (c * math.sqrt(m + 1))
    alpha = float(min(threshold, 0.45) * rng.uniform(0.3, 1.0))
    start = float(rng.uniform(0.0, 0.3))
    nodes = [start + k * alpha / m for k in range(lam)]
    for _ in range(int(rng.integers(0, 3))):
        nodes.append(start + 0.3 + float(rng.uniform(0.0, 0.4)))
    return SupportSet(nodes), m, lam, alpha


def random_grid_subset(rng, s_choices=(2, 3)):
    """Random on-grid support with the grid-certificate hypotheses.
    Returns (support, m, n, s)."""
    s = int(rng.choice(s_choices))
    m = int(rng.integers(2 * s, 41))
    n = int(math.ceil(math.pi * m * s) * rng.uniform(1.0, 3.0)) + 1
    idx = np.sort(rng.choice(n, size=s, replace=False))
    return SupportSet(idx / n), m, n, s
