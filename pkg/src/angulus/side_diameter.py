"""Side and diameter numbers and the acute/obtuse approximation of the right angle.

The pairs follow ``p1 = q1 = 1``, ``p' = p + q``, ``q' = 2p + q``. The apex
angle ``omega_n`` of the isosceles triangle ``(p_n, p_n, q_n)`` alternates
around the right angle because ``q_n**2 - 2 p_n**2 = (-1)**n``.
"""

from __future__ import annotations

import csv
import enum
import io
import json
import math
from dataclasses import dataclass
from typing import Iterable

from .anthyphairesis import anth_integers
from .errors import DomainError
from .magnitudes import as_magnitude, compare, sign

__all__ = [
    "AngleClass",
    "SideDiameterPair",
    "anth_check",
    "apex_angle",
    "classify_isosceles_apex",
    "generate",
    "pell_residual",
    "pythagorean_classify",
    "right_angle_gap",
    "signed_right_angle_offset",
    "table_rows",
    "to_csv",
    "to_json",
]

TABLE_COLUMNS = ("n", "p", "q", "pell_residual", "angle_class", "apex_angle_rad", "gap_rad")


class AngleClass(enum.Enum):
    ACUTE = "acute"
    RIGHT = "right"
    OBTUSE = "obtuse"
    UNDETERMINED = "undetermined"


@dataclass(frozen=True)
class SideDiameterPair:
    n: int
    p: int
    q: int


def generate(N: int) -> list[SideDiameterPair]:
    """The first ``N`` side/diameter pairs, exact."""
    if N < 1:
        raise DomainError(f"count must be >= 1, got {N}", invariant="N >= 1")
    out = []
    p = q = 1
    for n in range(1, N + 1):
        out.append(SideDiameterPair(n, p, q))
        p, q = p + q, 2 * p + q
    return out


def _pair(n: int) -> SideDiameterPair:
    if n < 1:
        raise DomainError(f"index must be >= 1, got {n}", invariant="n >= 1")
    return generate(n)[-1]


def pell_residual(pair: SideDiameterPair) -> int:
    return pair.q * pair.q - 2 * pair.p * pair.p


def classify_isosceles_apex(p, q) -> AngleClass:
    """Kind of the angle between the two equal sides ``p`` of triangle ``(p, p, q)``.

    Decided by the exact sign of ``q**2 - 2 p**2``; accepts ints, fractions,
    surds or magnitude strings.
    """
    p, q = as_magnitude(p), as_magnitude(q)
    if sign(q) <= 0 or compare(q, 2 * p) >= 0:
        raise DomainError(
            "degenerate isosceles triangle: need 0 < q < 2p", invariant="triangle inequality"
        )
    c = compare(q * q, 2 * p * p)
    return {-1: AngleClass.ACUTE, 0: AngleClass.RIGHT, 1: AngleClass.OBTUSE}[int(c)]


def apex_angle(p: float, q: float) -> float:
    if not (0 < q < 2 * p):
        raise DomainError("apex angle needs 0 < q < 2p", invariant="triangle inequality")
    return 2.0 * math.asin(q / (2.0 * p))


def signed_right_angle_offset(n: int, p: int | None = None) -> float:
    """``omega_n - pi/2`` to full relative precision.

    From the Pell identity, ``cos(omega_n) = -(-1)**n / (2 p_n**2)`` so the
    offset is ``asin((-1)**n / (2 p_n**2))``.
    """
    if p is None:
        p = _pair(n).p
    s = 1 if n % 2 == 0 else -1
    return s * math.asin(1.0 / (2.0 * p * p))


def right_angle_gap(n: int) -> float:
    """``|omega_n - pi/2|``."""
    return abs(signed_right_angle_offset(n))


def pythagorean_classify(omega: float, N_max: int) -> AngleClass:
    """Classify ``omega`` by comparison with ``omega_1 .. omega_{2 N_max}``.

    Acute if below some odd-indexed ``omega``, obtuse if above some
    even-indexed one, otherwise undetermined. The bounded search is the
    computable form of a definition quantified over every index, so angles
    within the last gap of ``pi/2`` come back UNDETERMINED.
    """
    if not (0 < omega < math.pi):
        raise DomainError("omega must lie in (0, pi)", invariant="0 < omega < pi")
    if N_max < 1:
        raise DomainError("N_max must be >= 1", invariant="N_max >= 1")
    half_pi = math.pi / 2
    for pair in generate(2 * N_max):
        w = half_pi + signed_right_angle_offset(pair.n, pair.p)
        if pair.n % 2 and omega < w:
            return AngleClass.ACUTE
        if pair.n % 2 == 0 and omega > w:
            return AngleClass.OBTUSE
    return AngleClass.UNDETERMINED


def anth_check(pair: SideDiameterPair) -> tuple[int, ...]:
    """Quotients of ``Anth(q_n, p_n)``; these should read ``[1, 2, ..., 2]``."""
    return anth_integers(pair.q, pair.p).quotients


def table_rows(N: int) -> list[dict]:
    rows = []
    for pair in generate(N):
        rows.append({
            "n": pair.n,
            "p": pair.p,
            "q": pair.q,
            "pell_residual": pell_residual(pair),
            "angle_class": classify_isosceles_apex(pair.p, pair.q).value,
            "apex_angle_rad": math.pi / 2 + signed_right_angle_offset(pair.n, pair.p),
            "gap_rad": abs(signed_right_angle_offset(pair.n, pair.p)),
        })
    return rows


def to_json(rows: Iterable[dict]) -> str:
    return json.dumps(list(rows))


def to_csv(rows: Iterable[dict]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=TABLE_COLUMNS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()
