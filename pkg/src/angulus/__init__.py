"""Exact anthyphairesis, side and diameter numbers, and solid angles of convex vertices."""

from .anthyphairesis import (
    EventuallyPeriodic,
    Finite,
    Truncated,
    Verdict,
    anth_integers,
    anth_magnitudes,
    gnomon_check,
    logos_equal,
    verify_mean_proportional,
)
from .errors import DegeneracyError, DomainError
from .magnitudes import QuadraticSurd, compare, floor_of, normalize_surd, parse_magnitude
from .side_diameter import AngleClass, generate, pythagorean_classify
from .solid_angle import (
    PlatonicSolid,
    RegularVertexFigure,
    platonic_table,
    regular_vertex_solid_angle,
    trihedral_solid_angle,
    validate_trihedral,
)
from .spherical import excess_from_angles, excess_lhuilier, make_triangle

__version__ = "0.1.0"
