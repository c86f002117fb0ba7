"""Deterministic seed derivation for Monte-Carlo sweeps.

Every (cell, trial) of a sweep gets its own 64-bit seed derived from the
base seed and the cell coordinates through a splitmix64-style mix, so
results do not depend on execution order or parallel scheduling.  Cell
coordinates that are grid values (SRF, sigma) enter through their IEEE-754
bit patterns, so refining a grid leaves the surviving cells' seeds intact.
"""

from __future__ import annotations

import struct

_MASK = (1 << 64) - 1


def mix64(x: int) -> int:
    """splitmix64 finalizer: one-to-one scramble of a 64-bit integer."""
    x = (x + 0x9E3779B97F4A7C15) & _MASK
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK
    return (x ^ (x >> 31)) & _MASK


def derive_seed(base: int, *indices: int) -> int:
    """Fold cell indices into a base seed, one mix round per index."""
    state = mix64(base & _MASK)
    for idx in indices:
        state = mix64(state ^ mix64((idx + 1) & _MASK))
    return state


def float_key(x: float) -> int:
    """Stable 64-bit coordinate for a float grid value."""
    return int.from_bytes(struct.pack("<d", float(x)), "little")
