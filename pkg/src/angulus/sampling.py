"""Deterministic uniform sampling of directions on the unit sphere.

Samples are generated in fixed-size blocks. Block ``k`` draws from a Philox
stream keyed by the seed with ``k`` in the high counter word, so sample
``j`` depends only on ``(seed, j)``. Any partition of the index range
across workers therefore gives identical counts.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, NamedTuple

import numpy as np

from .errors import DomainError

BLOCK = 1 << 16


class Estimate(NamedTuple):
    value: float
    stderr: float
    samples: int


def sphere_block(seed: int, block: int, size: int = BLOCK) -> np.ndarray:
    """``size`` unit vectors of block ``block``, shape ``(size, 3)``."""
    bitgen = np.random.Philox(key=seed, counter=[0, 0, 0, block])
    u = np.random.Generator(bitgen).random((size, 2))
    z = 2.0 * u[:, 0] - 1.0  # uniform cosine of the polar angle
    phi = 2.0 * math.pi * u[:, 1]
    rho = np.sqrt(np.maximum(0.0, 1.0 - z * z))
    return np.column_stack((rho * np.cos(phi), rho * np.sin(phi), z))


def uniform_sphere(samples: int, seed: int) -> np.ndarray:
    blocks = [sphere_block(seed, k, min(BLOCK, samples - k * BLOCK))
              for k in range(-(-samples // BLOCK))]
    return np.concatenate(blocks) if blocks else np.empty((0, 3))


def count_inside(inside: Callable[[np.ndarray], np.ndarray], samples: int, seed: int,
                 workers: int = 1) -> int:
    """Number of the first ``samples`` directions for which ``inside`` holds."""
    def one(k):
        pts = sphere_block(seed, k, min(BLOCK, samples - k * BLOCK))
        return int(np.count_nonzero(inside(pts)))

    nblocks = -(-samples // BLOCK)
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            return sum(pool.map(one, range(nblocks)))
    return sum(map(one, range(nblocks)))


def area_estimate(inside, samples: int, seed: int, workers: int = 1) -> Estimate:
    """Area of a region of the unit sphere by hit-or-miss sampling."""
    if samples < 1:
        raise DomainError("samples must be >= 1", invariant="samples >= 1")
    if seed < 0:
        raise DomainError("seed must be non-negative", invariant="seed >= 0")
    hits = count_inside(inside, samples, seed, workers)
    f = hits / samples
    return Estimate(4 * math.pi * f, 4 * math.pi * math.sqrt(f * (1 - f) / samples), samples)
