"""Anthyphairesis (reciprocal subtraction) on exact magnitudes.

Commensurable pairs end after finitely many steps with their greatest
common measure. Pairs whose ratio is a quadratic surd never end, but the
run is eventually periodic; it is detected by recording the states
``(P + sqrt(D))/Q`` of the surd engine until one repeats.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Sequence, Union

from .errors import DomainError, HypothesisViolation
from .magnitudes import (
    Magnitude,
    QuadraticSurd,
    as_magnitude,
    compare,
    floor_of,
    format_magnitude,
    sign,
)

__all__ = [
    "DEFAULT_MAX_TERMS",
    "AnthOutcome",
    "EventuallyPeriodic",
    "Finite",
    "GnomonReport",
    "PQState",
    "Truncated",
    "Verdict",
    "anth_integers",
    "anth_magnitudes",
    "cf_step",
    "convergents",
    "expand",
    "gnomon_check",
    "logos_equal",
    "outcome_to_dict",
    "outcome_to_json",
    "verify_mean_proportional",
]

DEFAULT_MAX_TERMS = 64


@dataclass(frozen=True)
class Finite:
    quotients: tuple[int, ...]
    gcd: Magnitude
    kind: str = field(default="finite", init=False)


@dataclass(frozen=True)
class EventuallyPeriodic:
    preperiod: tuple[int, ...]
    period: tuple[int, ...]
    kind: str = field(default="periodic", init=False)


@dataclass(frozen=True)
class Truncated:
    quotients: tuple[int, ...]
    kind: str = field(default="truncated", init=False)


AnthOutcome = Union[Finite, EventuallyPeriodic, Truncated]


class PQState(NamedTuple):
    """The number ``(P + sqrt(D)) / Q`` with ``Q`` dividing ``D - P**2``."""

    P: int
    Q: int
    D: int

    def floor(self) -> int:
        s = math.isqrt(self.D)  # D is never a perfect square here
        if self.Q > 0:
            return (self.P + s) // self.Q
        return (-self.P - s - 1) // (-self.Q)


def cf_step(state: PQState) -> tuple[int, PQState]:
    """One continued-fraction step: emit the integer part, invert the rest."""
    P, Q, D = state
    a = state.floor()
    P1 = a * Q - P
    Q1 = (D - P1 * P1) // Q
    return a, PQState(P1, Q1, D)


def _pq_from_surd(x: QuadraticSurd) -> PQState:
    # (p + q sqrt d)/r == (p r + sqrt(q^2 d r^2)) / r^2 for q > 0
    D = x.q * x.q * x.d * x.r * x.r
    if x.q > 0:
        P, Q = x.p * x.r, x.r * x.r
    else:
        P, Q = -x.p * x.r, -x.r * x.r
    return PQState(P, Q, D)


def _primitive_root(word: Sequence[int]) -> tuple[int, ...]:
    """Shortest ``u`` with ``word == u * k``."""
    n = len(word)
    for length in range(1, n + 1):
        if n % length == 0 and tuple(word[:length]) * (n // length) == tuple(word):
            return tuple(word[:length])
    return tuple(word)


def anth_integers(a: int, b: int) -> Finite:
    """Euclid's division chain for integers ``a >= b > 0``."""
    if b <= 0 or a < b:
        raise DomainError(f"anth_integers needs a >= b > 0, got ({a}, {b})", invariant="a >= b > 0")
    quotients = []
    while b:
        k, rem = divmod(a, b)
        quotients.append(k)
        a, b = b, rem
    return Finite(tuple(quotients), Fraction(a))


def _check_operands(a, b):
    a, b = as_magnitude(a), as_magnitude(b)
    if sign(a) <= 0 or sign(b) <= 0:
        raise DomainError("anthyphairesis needs positive magnitudes", invariant="a, b > 0")
    compare(a, b)  # raises on mismatched radicands
    return a, b


def anth_magnitudes(a, b, max_terms: int = DEFAULT_MAX_TERMS) -> AnthOutcome:
    """Anthyphairesis of ``a`` to ``b``.

    Returns :class:`Finite` for a rational ratio, :class:`EventuallyPeriodic`
    for a surd ratio, or :class:`Truncated` if ``max_terms`` quotients were
    produced without reaching either conclusion.

    The remainders ``gamma_{k+1} = gamma_{k-1} - I_k * gamma_k`` are carried
    along exactly and must strictly decrease; a violation means a wrong
    quotient and raises ``ArithmeticError``.
    """
    if max_terms < 1:
        raise DomainError("max_terms must be >= 1", invariant="max_terms >= 1")
    a, b = _check_operands(a, b)
    ratio = a / b

    prev, cur = a, b
    quotients: list[int] = []

    def push(k):
        nonlocal prev, cur
        rem = prev - k * cur
        if sign(rem) < 0 or compare(rem, cur) >= 0:
            raise ArithmeticError(f"remainder chain broken at quotient {len(quotients)}")
        quotients.append(k)
        prev, cur = cur, rem

    if not isinstance(ratio, QuadraticSurd):
        while len(quotients) < max_terms:
            push(floor_of(prev / cur))
            if sign(cur) == 0:
                return Finite(tuple(quotients), prev)
        return Truncated(tuple(quotients))

    state = _pq_from_surd(ratio)
    seen: dict[PQState, int] = {}
    while len(quotients) < max_terms and state not in seen:
        seen[state] = len(quotients)
        k, state = cf_step(state)
        push(k)
    if state in seen:
        start = seen[state]
        return EventuallyPeriodic(tuple(quotients[:start]), _primitive_root(quotients[start:]))
    return Truncated(tuple(quotients))


def expand(outcome: AnthOutcome, n: int) -> list[int]:
    """First ``n`` quotients (fewer if the outcome is finite or truncated)."""
    if isinstance(outcome, EventuallyPeriodic):
        out = list(outcome.preperiod)
        while len(out) < n:
            out.extend(outcome.period)
        return out[:n]
    return list(outcome.quotients[:n])


def convergents(quotients: Sequence[int]) -> list[Fraction]:
    """Successive convergents ``[I0], [I0; I1], ...`` as exact fractions."""
    h0, h1 = 1, 0
    k0, k1 = 0, 1
    out = []
    for a in quotients:
        h0, h1 = a * h0 + h1, h0
        k0, k1 = a * k0 + k1, k0
        out.append(Fraction(h0, k0))
    return out


class Verdict(enum.Enum):
    EQUAL = "equal"
    NOT_EQUAL = "not_equal"
    UNDECIDED = "undecided"


def logos_equal(a, b, c, d, max_terms: int = DEFAULT_MAX_TERMS) -> Verdict:
    """Decide whether ``Anth(a, b) == Anth(c, d)``.

    Undecided only when a truncated run agrees with the other side on every
    quotient available.
    """
    left = anth_magnitudes(a, b, max_terms)
    right = anth_magnitudes(c, d, max_terms)
    if isinstance(left, Finite) and isinstance(right, Finite):
        return Verdict.EQUAL if left.quotients == right.quotients else Verdict.NOT_EQUAL
    if isinstance(left, EventuallyPeriodic) and isinstance(right, EventuallyPeriodic):
        same = (left.preperiod, left.period) == (right.preperiod, right.period)
        return Verdict.EQUAL if same else Verdict.NOT_EQUAL
    if not isinstance(left, Truncated) and not isinstance(right, Truncated):
        return Verdict.NOT_EQUAL  # one ends, the other never does

    n = max(len(left.quotients) if not isinstance(left, EventuallyPeriodic) else 0,
            len(right.quotients) if not isinstance(right, EventuallyPeriodic) else 0)
    if expand(left, n) != expand(right, n):
        return Verdict.NOT_EQUAL
    if isinstance(left, Finite) or isinstance(right, Finite):
        # a finished run against one still going past max_terms: lengths differ
        return Verdict.NOT_EQUAL
    return Verdict.UNDECIDED


def verify_mean_proportional(A: int, B: int, C: int, a, b, c, d) -> bool:
    """Whether ``a*d == b*c`` given ``A a^2 = B ab + C b^2`` and ``A c^2 = B cd + C d^2``.

    Both quadratic relations are checked first; failing either raises
    :class:`HypothesisViolation`, since the conclusion is only claimed
    under them. Under valid hypotheses the answer should always be True.
    """
    a, b, c, d = (as_magnitude(x) for x in (a, b, c, d))
    for x, y, label in ((a, b, "(a, b)"), (c, d, "(c, d)")):
        if sign(A * x * x - B * x * y - C * y * y) != 0:
            raise HypothesisViolation(
                f"{label} does not satisfy {A}x^2 = {B}xy + {C}y^2",
                invariant="quadratic hypothesis",
            )
    return sign(a * d - b * c) == 0


class GnomonReport(NamedTuple):
    gnomon_preserved: bool
    right_angle: bool


def gnomon_check(a, b) -> GnomonReport:
    """Test the gnomon relation ``b*c2 == c1**2`` against ``a**2 == 2*b**2``.

    ``c1 = a - b`` and ``c2 = b - 2*c1`` are the first two remainders when
    the diagonal-to-side pattern ``[1; 2, ...]`` is assumed. The two flags
    coincide for every admissible input.
    """
    a, b = _check_operands(a, b)
    if compare(a, b) <= 0:
        raise DomainError("gnomon_check needs a > b > 0", invariant="a > b > 0")
    c1 = a - b
    c2 = b - 2 * c1
    if sign(c2) <= 0:
        raise DomainError(
            f"second remainder c2 = {format_magnitude(c2)} is not positive (a >= 3b/2)",
            invariant="c2 > 0",
        )
    return GnomonReport(sign(b * c2 - c1 * c1) == 0, sign(a * a - 2 * b * b) == 0)


def outcome_to_dict(outcome: AnthOutcome) -> dict:
    if isinstance(outcome, EventuallyPeriodic):
        return {
            "kind": outcome.kind,
            "quotients": list(outcome.preperiod),
            "period": list(outcome.period),
            "gcd": None,
        }
    gcd = format_magnitude(outcome.gcd) if isinstance(outcome, Finite) else None
    return {"kind": outcome.kind, "quotients": list(outcome.quotients), "period": [], "gcd": gcd}


def outcome_to_json(outcome: AnthOutcome) -> str:
    return json.dumps(outcome_to_dict(outcome))
