"""Geometry on the torus T = [0, 1): separation, clumps, complexity, matching.

Node sets live on the unit circle with the wrap-around metric.  A support
set decomposes into "clumps" relative to a cutoff 1/M: maximal chains of
nodes with neighbor gaps below 1/M, valid when every chain fits in an open
interval of length 1/M and distinct chains are more than 1/M apart.  The
per-node complexity multiplies 1/(pi*M*gap) over all neighbors closer than
1/M and measures local crowding.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .exceptions import CardinalityMismatchError, DegenerateSupportError

# Nodes closer than this are treated as coincident.
COINCIDENCE_TOL = 1e-12


def wrap(x):
    """Canonicalize positions to [0, 1) via x - floor(x)."""
    return np.asarray(x, dtype=float) - np.floor(np.asarray(x, dtype=float))


def torus_dist(a, b):
    """Wrap-around distance |a - b|_T in [0, 1/2].  Accepts scalars or arrays."""
    d = np.abs(np.asarray(a, dtype=float) - np.asarray(b, dtype=float)) % 1.0
    out = np.minimum(d, 1.0 - d)
    if np.ndim(out) == 0:
        return float(out)
    return out


@dataclass(frozen=True)
class ClumpDecomposition:
    """Partition of a support set into localized clumps relative to M."""

    clumps: tuple[tuple[int, ...], ...]
    m: int
    min_interclump_dist: float

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.clumps)

    @property
    def num_clumps(self) -> int:
        return len(self.clumps)


class SupportSet:
    """Strictly increasing node set on the torus with cached geometry."""

    def __init__(self, points):
        pts = np.sort(wrap(np.atleast_1d(np.asarray(points, dtype=float))))
        if pts.size == 0:
            raise DegenerateSupportError("support set must contain at least one node")
        if pts.size > 1:
            gaps = np.diff(pts)
            wrap_gap = pts[0] + 1.0 - pts[-1]
            if min(gaps.min(initial=np.inf), wrap_gap) < COINCIDENCE_TOL:
                raise DegenerateSupportError(
                    "support nodes must be pairwise distinct (torus gap >= 1e-12)"
                )
        self._points = pts
        self._points.setflags(write=False)
        self._clump_cache: dict[int, ClumpDecomposition | None] = {}

    @property
    def points(self) -> np.ndarray:
        return self._points

    @property
    def size(self) -> int:
        return int(self._points.size)

    def __len__(self) -> int:
        return self.size

    def __iter__(self):
        return iter(self._points)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SupportSet):
            return NotImplemented
        return self.size == other.size and bool(
            np.all(torus_dist(self._points, other._points) < COINCIDENCE_TOL)
        )

    def __repr__(self) -> str:
        return f"SupportSet({np.array2string(self._points, separator=', ')})"

    def min_separation(self) -> float:
        return min_separation(self)

    def decompose_clumps(self, m: int) -> ClumpDecomposition | None:
        if m not in self._clump_cache:
            self._clump_cache[m] = _decompose(self._points, m)
        return self._clump_cache[m]

    def complexities(self, m: int) -> np.ndarray:
        return complexity(self, m)


def min_separation(support: SupportSet) -> float:
    """Smallest pairwise torus distance; needs at least two nodes."""
    pts = support.points
    if pts.size < 2:
        raise DegenerateSupportError("minimum separation needs at least 2 nodes")
    gaps = np.diff(pts)
    wrap_gap = pts[0] + 1.0 - pts[-1]
    return float(min(gaps.min(), wrap_gap))


def srf(support: SupportSet, m: int) -> float:
    """Super-resolution factor 1/(M * Delta); equals N/M for 1/N-grid sets."""
    return 1.0 / (m * min_separation(support))


def _decompose(pts: np.ndarray, m: int) -> ClumpDecomposition | None:
    """Greedy gap-chaining decomposition; None when the result is invalid."""
    if m < 1:
        raise ValueError("m must be a positive integer")
    s = pts.size
    cutoff = 1.0 / m
    if s == 1:
        return ClumpDecomposition(clumps=((0,),), m=m, min_interclump_dist=np.inf)

    gaps = np.append(np.diff(pts), pts[0] + 1.0 - pts[-1])  # gaps[i]: i -> i+1 (mod s)
    cut = gaps >= cutoff  # chain across gaps strictly below 1/M
    if not cut.any():
        # single chain covering the circle; span is 1 minus the widest gap
        span = 1.0 - gaps.max()
        if span < cutoff:
            return ClumpDecomposition(
                clumps=(tuple(range(s)),), m=m, min_interclump_dist=np.inf
            )
        return None

    # start each clump right after a cut gap
    starts = (np.flatnonzero(cut) + 1) % s
    clumps: list[tuple[int, ...]] = []
    for start in sorted(starts):
        member = [int(start)]
        i = int(start)
        while not cut[i]:
            i = (i + 1) % s
            member.append(i)
        clumps.append(tuple(member))

    # validity: every clump spans less than 1/M ...
    for member in clumps:
        span = sum(gaps[i] for i in member[:-1])
        if span >= cutoff:
            return None
    # ... and adjacent clumps are strictly more than 1/M apart
    inter = [float(gaps[member[-1]]) for member in clumps]
    min_inter = min(inter)
    if min_inter <= cutoff:
        return None
    # order clumps by leftmost point, breaking the circular ordering at the
    # clump containing the smallest index
    clumps.sort(key=lambda c: pts[c[0]] if c[0] <= c[-1] else pts[c[0]] - 1.0)
    return ClumpDecomposition(
        clumps=tuple(clumps), m=m, min_interclump_dist=min_inter
    )


def decompose_clumps(support: SupportSet, m: int) -> ClumpDecomposition | None:
    """Localized-clump partition of the support relative to M, or None."""
    return support.decompose_clumps(m)


def complexity(support: SupportSet, m: int) -> np.ndarray:
    """Per-node crowding rho_j: product of 1/(pi*M*gap) over neighbors within 1/M."""
    pts = support.points
    cutoff = 1.0 / m
    rho = np.ones(pts.size)
    for j in range(pts.size):
        d = torus_dist(pts, pts[j])
        near = (d > 0) & (d < cutoff)
        if near.any():
            rho[j] = float(np.prod(1.0 / (np.pi * m * d[near])))
    return rho


def bottleneck_distance(a: SupportSet, b: SupportSet) -> float:
    """Min over bijections of the max node displacement, via cyclic alignment.

    Both sets are sorted circular sequences; an optimal bottleneck matching
    can be taken order-preserving, so only the S cyclic shifts are tested.
    """
    if a.size != b.size:
        raise CardinalityMismatchError(
            f"support sets differ in size: {a.size} vs {b.size}"
        )
    pa, pb = a.points, b.points
    s = a.size
    best = np.inf
    for shift in range(s):
        cost = float(np.max(torus_dist(pa, np.roll(pb, -shift))))
        if cost < best:
            best = cost
    return best


def bottleneck_distance_exhaustive(a: SupportSet, b: SupportSet) -> float:
    """All-permutations oracle for the bottleneck distance (S <= 8)."""
    if a.size != b.size:
        raise CardinalityMismatchError(
            f"support sets differ in size: {a.size} vs {b.size}"
        )
    if a.size > 8:
        raise ValueError("exhaustive oracle limited to S <= 8")
    pa, pb = a.points, b.points
    best = np.inf
    for perm in itertools.permutations(range(a.size)):
        cost = float(np.max(torus_dist(pa, pb[list(perm)])))
        if cost < best:
            best = cost
    return best
