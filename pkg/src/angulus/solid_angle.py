"""Solid angles of convex polyhedral vertices, measured in steradians.

A solid angle is the area it cuts out of the unit sphere around its apex.
A trihedral vertex with face angles ``f1, f2, f3`` cuts out the spherical
triangle with those sides. A regular vertex with ``n`` faces of apex angle
``alpha`` cuts out a regular spherical n-gon, whose area is its angle sum
minus ``(n - 2) * pi``.
"""

from __future__ import annotations

import enum
import json
import math
import os
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import NamedTuple, Sequence

import numpy as np

from .errors import DegeneracyError, DomainError
from .sampling import Estimate, area_estimate
from .spherical import SphericalTriangle, embed_triangle, excess_lhuilier

__all__ = [
    "CORPUS_ENV",
    "PlatonicSolid",
    "RegularVertexFigure",
    "TrihedralAngle",
    "TripleProduct",
    "VertexEntry",
    "default_corpus",
    "dihedral_oracle_solid_angle",
    "load_corpus",
    "monte_carlo_solid_angle",
    "platonic_table",
    "platonic_vertex_figure",
    "regular_vertex_edges",
    "regular_vertex_solid_angle",
    "trihedral_edges",
    "trihedral_solid_angle",
    "triple_product_solid_angle",
    "validate_trihedral",
]

CORPUS_ENV = "ANGULUS_CORPUS"
FULL_SPHERE = 4 * math.pi


@dataclass(frozen=True)
class TrihedralAngle:
    f1: float
    f2: float
    f3: float

    @property
    def faces(self):
        return (self.f1, self.f2, self.f3)


def validate_trihedral(f1: float, f2: float, f3: float) -> TrihedralAngle:
    faces = (float(f1), float(f2), float(f3))
    for i, f in enumerate(faces, 1):
        if not (0.0 < f < math.pi):
            raise DomainError(f"face angle f{i} = {f!r} outside (0, pi)",
                              invariant="face angle range")
    for i in range(3):
        others = faces[(i + 1) % 3] + faces[(i + 2) % 3]
        if not faces[i] < others:
            raise DomainError(
                f"face angle f{i + 1} = {faces[i]!r} is not less than the other two combined",
                invariant="face angle triangle inequality",
            )
    if not sum(faces) < 2 * math.pi:
        raise DomainError(f"face angles sum to {sum(faces)!r} >= 2*pi",
                          invariant="face angle sum < 2*pi")
    return TrihedralAngle(*faces)


def trihedral_solid_angle(t: TrihedralAngle) -> float:
    return excess_lhuilier(SphericalTriangle(*t.faces))


def trihedral_edges(t: TrihedralAngle) -> np.ndarray:
    """Unit edge vectors realizing the face angles, positively oriented."""
    return embed_triangle(SphericalTriangle(*t.faces))


class TripleProduct(NamedTuple):
    steradians: float
    degenerate: bool


def triple_product_solid_angle(u, v, w) -> TripleProduct:
    """Solid angle of the cone on three unit vectors.

    ``tan(omega/2) = |u.(v x w)| / (1 + u.v + v.w + w.u)``, evaluated with
    ``atan2`` so cones wider than a hemisphere's quarter come out right.
    """
    u, v, w = (np.asarray(x, dtype=float) for x in (u, v, w))
    num = abs(float(np.dot(u, np.cross(v, w))))
    den = 1.0 + float(np.dot(u, v) + np.dot(v, w) + np.dot(w, u))
    if num == 0.0:
        return TripleProduct(0.0, True)
    return TripleProduct(2.0 * math.atan2(num, den), False)


@dataclass(frozen=True)
class RegularVertexFigure:
    """``n`` congruent faces with apex angle ``alpha`` around a vertex."""

    n: int
    alpha: float

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 3:
            raise DomainError(f"need at least 3 faces, got {self.n!r}", invariant="n >= 3")
        if not self.alpha > 0:
            raise DomainError(f"apex angle {self.alpha!r} must be positive", invariant="alpha > 0")
        if not self.n * self.alpha < 2 * math.pi:
            raise DomainError(
                f"n*alpha = {self.n * self.alpha!r} >= 2*pi: flat or reflex vertex is not a solid angle",
                invariant="n*alpha < 2*pi",
            )


def _edge_polar_angle(fig: RegularVertexFigure) -> float:
    s2 = (1.0 - math.cos(fig.alpha)) / (1.0 - math.cos(2 * math.pi / fig.n))
    if s2 > 1.0:
        raise DomainError(f"vertex figure not realizable (sin^2 = {s2!r} > 1)",
                          invariant="realizability")
    phi = math.asin(math.sqrt(s2))
    if phi >= math.pi / 2:
        raise DomainError("vertex is flat, not a solid angle", invariant="n*alpha < 2*pi")
    return phi


def regular_vertex_edges(fig: RegularVertexFigure) -> np.ndarray:
    """Edge unit vectors at a common polar angle and evenly spaced azimuths."""
    phi = _edge_polar_angle(fig)
    az = 2 * np.pi * np.arange(fig.n) / fig.n
    return np.column_stack((np.sin(phi) * np.cos(az), np.sin(phi) * np.sin(az),
                            np.full(fig.n, np.cos(phi))))


def _vertex_angle(prev, here, nxt) -> float:
    t1 = prev - np.dot(prev, here) * here
    t2 = nxt - np.dot(nxt, here) * here
    return math.atan2(float(np.linalg.norm(np.cross(t1, t2))), float(np.dot(t1, t2)))


def regular_vertex_solid_angle(fig: RegularVertexFigure) -> float:
    """Area of the regular spherical polygon cut out by the vertex figure."""
    e = regular_vertex_edges(fig)
    theta = _vertex_angle(e[-1], e[0], e[1])  # all vertices are equivalent
    omega = fig.n * theta - (fig.n - 2) * math.pi
    if omega <= 0:
        raise DegeneracyError(f"non-positive polygon excess {omega!r}")
    return omega


def dihedral_oracle_solid_angle(fig: RegularVertexFigure) -> float:
    """Closed form through the dihedral angle, ``sin(theta/2) = cos(pi/n) / cos(alpha/2)``."""
    theta = 2 * math.asin(math.cos(math.pi / fig.n) / math.cos(fig.alpha / 2))
    return fig.n * theta - (fig.n - 2) * math.pi


class PlatonicSolid(enum.Enum):
    TETRAHEDRON = "tetrahedron"
    CUBE = "cube"
    OCTAHEDRON = "octahedron"
    DODECAHEDRON = "dodecahedron"
    ICOSAHEDRON = "icosahedron"


_PLATONIC = {
    PlatonicSolid.TETRAHEDRON: (3, math.pi / 3),
    PlatonicSolid.CUBE: (3, math.pi / 2),
    PlatonicSolid.OCTAHEDRON: (4, math.pi / 3),
    PlatonicSolid.DODECAHEDRON: (3, 3 * math.pi / 5),
    PlatonicSolid.ICOSAHEDRON: (5, math.pi / 3),
}


def platonic_vertex_figure(solid: PlatonicSolid | str) -> RegularVertexFigure:
    return RegularVertexFigure(*_PLATONIC[PlatonicSolid(solid)])


class VertexEntry(NamedTuple):
    name: str
    figure: RegularVertexFigure


def _parse_corpus(data, source) -> list[VertexEntry]:
    if not isinstance(data, list):
        raise DomainError(f"{source}: corpus must be a JSON list", invariant="corpus schema")
    out = []
    for i, item in enumerate(data):
        try:
            name = item["name"]
            n = item["faces_at_vertex"]
            alpha = item["apex_angle_rad"]
        except (TypeError, KeyError) as exc:
            raise DomainError(f"{source}[{i}]: missing field {exc}", invariant="corpus schema")
        if not isinstance(name, str) or isinstance(n, bool) or not isinstance(n, int) \
                or isinstance(alpha, bool) or not isinstance(alpha, (int, float)):
            raise DomainError(f"{source}[{i}]: wrong field types", invariant="corpus schema")
        out.append(VertexEntry(name, RegularVertexFigure(n, float(alpha))))
    return out


def load_corpus(path: str | os.PathLike) -> list[VertexEntry]:
    """Read ``[{"name", "faces_at_vertex", "apex_angle_rad"}, ...]`` from a JSON file."""
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except OSError as exc:
        raise DomainError(f"cannot read corpus {path}: {exc.strerror}", invariant="corpus file")
    except json.JSONDecodeError as exc:
        raise DomainError(f"{path}: invalid JSON ({exc.msg})", invariant="corpus schema")
    return _parse_corpus(data, str(path))


def default_corpus() -> list[VertexEntry]:
    """The five Platonic vertices, or the corpus named by ``$ANGULUS_CORPUS``."""
    override = os.environ.get(CORPUS_ENV)
    if override:
        return load_corpus(override)
    text = resources.files("angulus").joinpath("data/platonic.json").read_text()
    return _parse_corpus(json.loads(text), "platonic.json")


def monte_carlo_solid_angle(edges: Sequence, samples: int, seed: int = 0,
                            workers: int = 1) -> Estimate:
    """Hit-or-miss solid angle of the convex cone on consecutive edge vectors."""
    e = np.asarray(edges, dtype=float)
    if e.ndim != 2 or e.shape[1] != 3 or len(e) < 3:
        raise DomainError("need at least 3 edge vectors in R^3", invariant="n >= 3")
    norms = np.linalg.norm(e, axis=1)
    if np.any(norms == 0):
        raise DomainError("zero edge vector", invariant="non-degenerate edges")
    e = e / norms[:, None]
    normals = np.cross(e, np.roll(e, -1, axis=0))
    n = len(e)
    side = np.array([[np.dot(normals[k], e[j]) for j in range(n)] for k in range(n)])
    off = ~(np.eye(n, dtype=bool) | np.roll(np.eye(n, dtype=bool), 1, axis=1))
    if np.all(side[off] > 0):
        pass
    elif np.all(side[off] < 0):
        normals = -normals
    else:
        raise DomainError("edges do not bound a convex cone in order", invariant="convexity")

    def inside(x):
        return (x @ normals.T >= 0.0).all(axis=1)

    return area_estimate(inside, samples, seed, workers)


def platonic_table(samples: int = 10**6, seed: int = 0,
                   corpus: Sequence[VertexEntry] | None = None) -> list[dict]:
    """Solid angle of each vertex figure, with oracle and optional Monte Carlo columns.

    ``samples=0`` skips sampling.
    """
    rows = []
    for name, fig in corpus if corpus is not None else default_corpus():
        omega = regular_vertex_solid_angle(fig)
        row = {
            "solid": name,
            "n": fig.n,
            "alpha": fig.alpha,
            "solid_angle_sr": omega,
            "fraction_of_sphere": omega / FULL_SPHERE,
            "oracle_sr": dihedral_oracle_solid_angle(fig),
        }
        if samples:
            est = monte_carlo_solid_angle(regular_vertex_edges(fig), samples, seed)
            row["mc_sr"], row["mc_stderr"] = est.value, est.stderr
        rows.append(row)
    return rows
