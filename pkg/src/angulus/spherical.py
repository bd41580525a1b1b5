"""Spherical triangles given by their three sides, and their area.

Two independent routes to the area (the angle excess) are provided: the
interior angles summed minus pi, and l'Huilier's formula straight from the
sides. A Monte Carlo estimate over an explicit embedding serves as a third,
statistical check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DegeneracyError, DomainError
from .sampling import Estimate, area_estimate

__all__ = [
    "CLAMP_TOLERANCE",
    "AngleTriple",
    "SphericalTriangle",
    "angles_from_sides",
    "embed_triangle",
    "excess_from_angles",
    "excess_lhuilier",
    "excess_report",
    "flat_limit_ratio",
    "geodesic_distance",
    "heron_euclidean",
    "make_triangle",
    "monte_carlo_excess",
]

CLAMP_TOLERANCE = 1e-12
PRODUCT_TOLERANCE = 1e-15


@dataclass(frozen=True)
class SphericalTriangle:
    a: float
    b: float
    c: float

    @property
    def sides(self) -> tuple[float, float, float]:
        return (self.a, self.b, self.c)


class AngleTriple(NamedTuple):
    A: float
    B: float
    C: float
    clamp_used: float = 0.0


def make_triangle(a: float, b: float, c: float) -> SphericalTriangle:
    """Validate three great-circle sides (radians) as a triangle in a half-sphere."""
    sides = (float(a), float(b), float(c))
    for name, x in zip("abc", sides):
        if not (0.0 < x < math.pi):
            raise DomainError(f"side {name} = {x!r} outside (0, pi)", invariant="side range")
    for i in range(3):
        others = sides[(i + 1) % 3] + sides[(i + 2) % 3]
        if not sides[i] < others:
            raise DomainError(
                f"triangle inequality violated: {sides[i]!r} >= {others!r}",
                invariant="triangle inequality",
            )
    if not sum(sides) < 2 * math.pi:
        raise DomainError(
            f"perimeter {sum(sides)!r} >= 2*pi", invariant="perimeter < 2*pi"
        )
    return SphericalTriangle(*sides)


def _semiperimeter(t: SphericalTriangle) -> float:
    # summing in sorted order keeps results identical under permutation
    return math.fsum(sorted(t.sides)) / 2


def angles_from_sides(t: SphericalTriangle) -> AngleTriple:
    """Interior angles, ``A`` opposite ``a`` and so on.

    Evaluated with the half-angle tangent form of the law of cosines, which
    keeps full accuracy for angles near 0 or pi. The plain cosine-law values
    are still formed to measure how far they stray outside ``[-1, 1]``;
    more than ``CLAMP_TOLERANCE`` raises :class:`DegeneracyError`.
    """
    a, b, c = t.sides
    s = _semiperimeter(t)
    sin_s = math.sin(s)
    diffs = {x: math.sin(s - x) for x in (a, b, c)}

    clamp = 0.0
    out = []
    for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
        cos_x = (math.cos(x) - math.cos(y) * math.cos(z)) / (math.sin(y) * math.sin(z))
        clamp = max(clamp, abs(cos_x) - 1.0)
        out.append(2.0 * math.atan2(math.sqrt(max(0.0, diffs[y] * diffs[z])),
                                    math.sqrt(max(0.0, sin_s * diffs[x]))))
    if clamp > CLAMP_TOLERANCE:
        raise DegeneracyError(f"law of cosines out of range by {clamp:.3g}")
    return AngleTriple(*out, clamp_used=max(clamp, 0.0))


def excess_from_angles(angles) -> float:
    """``A + B + C - pi``: the triangle's area on the unit sphere."""
    A, B, C = angles[:3]
    for name, x in zip("ABC", (A, B, C)):
        if not (0.0 < x < math.pi):
            raise DomainError(f"angle {name} = {x!r} outside (0, pi)", invariant="angle range")
    e = math.fsum(sorted((A, B, C))) - math.pi
    if e <= 0:
        raise DegeneracyError(f"non-positive angle excess {e!r}")
    return e


def excess_lhuilier(t: SphericalTriangle) -> float:
    """Angle excess from the sides alone (l'Huilier)."""
    a, b, c = sorted(t.sides)
    s = (a + b + c) / 2
    prod = (math.tan(s / 2) * math.tan((s - a) / 2)
            * math.tan((s - b) / 2) * math.tan((s - c) / 2))
    if prod < 0:
        if prod < -PRODUCT_TOLERANCE:
            raise DegeneracyError(f"negative l'Huilier product {prod!r}")
        prod = 0.0
    return 4.0 * math.atan(math.sqrt(prod))


def heron_euclidean(a: float, b: float, c: float) -> float:
    """Planar triangle area from its sides; 0 for a collinear triple."""
    a, b, c = sorted((float(a), float(b), float(c)), reverse=True)
    if c < 0:
        raise DomainError("side lengths must be non-negative", invariant="side range")
    if a > b + c:
        raise DomainError("triangle inequality violated", invariant="triangle inequality")
    # Kahan's arrangement, stable for needle-shaped triangles
    prod = (a + (b + c)) * (c - (a - b)) * (c + (a - b)) * (a + (b - c))
    return 0.25 * math.sqrt(max(0.0, prod))


def flat_limit_ratio(a: float, b: float, c: float, eps: float) -> float:
    """Spherical excess of the sides scaled by ``eps``, over ``eps**2`` times the planar area.

    Tends to 1 as ``eps`` shrinks, with an ``O(eps**2)`` deviation.
    """
    area = heron_euclidean(a, b, c)
    if area == 0.0:
        raise DomainError("degenerate planar triangle has zero area", invariant="non-degenerate")
    t = make_triangle(eps * a, eps * b, eps * c)
    return excess_lhuilier(t) / (eps * eps * area)


def embed_triangle(t: SphericalTriangle) -> np.ndarray:
    """Unit vectors for the vertices, rows ``A, B, C``, positively oriented.

    ``A`` sits at the north pole and ``B`` on the meridian through +x; ``C``
    is placed at distance ``b`` from ``A`` at azimuth equal to the angle at ``A``.
    """
    angle_a = angles_from_sides(t).A
    return np.array([
        [0.0, 0.0, 1.0],
        [math.sin(t.c), 0.0, math.cos(t.c)],
        [math.sin(t.b) * math.cos(angle_a), math.sin(t.b) * math.sin(angle_a), math.cos(t.b)],
    ])


def geodesic_distance(u, v) -> float:
    u, v = np.asarray(u, float), np.asarray(v, float)
    return math.atan2(float(np.linalg.norm(np.cross(u, v))), float(np.dot(u, v)))


def monte_carlo_excess(t: SphericalTriangle, samples: int, seed: int = 0,
                       workers: int = 1) -> Estimate:
    """Hit-or-miss area of the embedded triangle, deterministic for a seed."""
    A, B, C = embed_triangle(t)
    normals = np.array([np.cross(B, C), np.cross(C, A), np.cross(A, B)])

    def inside(x):
        return (x @ normals.T >= 0.0).all(axis=1)

    return area_estimate(inside, samples, seed, workers)


def excess_report(t: SphericalTriangle, method: str = "lhuilier", samples: int = 10**6,
                  seed: int = 0) -> list[dict]:
    """Result records ``{"method", "excess_sr", "stderr", "clamp_budget_used"}``."""
    methods = ["girard", "lhuilier"] if method == "both" else [method]
    out = []
    for m in methods:
        if m == "girard":
            angles = angles_from_sides(t)
            out.append({"method": m, "excess_sr": excess_from_angles(angles), "stderr": None,
                        "clamp_budget_used": angles.clamp_used})
        elif m == "lhuilier":
            out.append({"method": m, "excess_sr": excess_lhuilier(t), "stderr": None,
                        "clamp_budget_used": 0.0})
        elif m == "mc":
            est = monte_carlo_excess(t, samples, seed)
            out.append({"method": m, "excess_sr": est.value, "stderr": est.stderr,
                        "clamp_budget_used": 0.0})
        else:
            raise DomainError(f"unknown method {m!r}", invariant="method")
    return out
