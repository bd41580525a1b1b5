"""Exact magnitudes: rationals and quadratic surds ``(p + q*sqrt(d))/r``.

Rationals are plain :class:`fractions.Fraction`. Surds live in a single
quadratic field Q(sqrt(d)) per computation; mixing radicands raises
:class:`~angulus.errors.FieldMismatchError` instead of approximating.
Nothing in this module ever produces a float except ``float(x)``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import DomainError, FieldMismatchError, MagnitudeSyntaxError

__all__ = [
    "Magnitude",
    "Ordering",
    "QuadraticSurd",
    "archimedean_witness",
    "as_magnitude",
    "compare",
    "floor_of",
    "format_magnitude",
    "isqrt",
    "normalize_surd",
    "parse_magnitude",
    "radicand",
    "sign",
]


class Ordering(enum.IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


def isqrt(n: int) -> int:
    """Largest ``k`` with ``k*k <= n``."""
    if n < 0:
        raise DomainError(f"isqrt of negative integer {n}", invariant="n >= 0")
    return math.isqrt(n)


def _squarefree_split(d: int) -> tuple[int, int]:
    """Return ``(s, f)`` with ``d == s*s*f`` and ``f`` squarefree."""
    s, f = 1, 1
    k = 2
    while k * k <= d:
        e = 0
        while d % k == 0:
            d //= k
            e += 1
        s *= k ** (e // 2)
        if e % 2:
            f *= k
        k += 1 if k == 2 else 2
    return s, f * d


@dataclass(frozen=True, eq=True)
class QuadraticSurd:
    """The irrational number ``(p + q*sqrt(d)) / r`` in canonical form.

    Build instances through :func:`normalize_surd` or arithmetic; the
    constructor only checks the canonical-form invariants.
    """

    p: int
    q: int
    d: int
    r: int

    def __post_init__(self):
        if self.r <= 0 or self.q == 0 or self.d <= 1:
            raise DomainError(f"non-canonical surd {self!r}", invariant="canonical form")
        if math.gcd(self.p, self.q, self.r) != 1:
            raise DomainError(f"non-canonical surd {self!r}", invariant="gcd(p, q, r) = 1")

    # -- conversions ---------------------------------------------------
    def __float__(self) -> float:
        return (self.p + self.q * math.sqrt(self.d)) / self.r

    def __str__(self) -> str:
        return format_magnitude(self)

    def conjugate(self) -> QuadraticSurd:
        return QuadraticSurd(self.p, -self.q, self.d, self.r)

    # -- arithmetic ----------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, QuadraticSurd):
            if other.d != self.d:
                raise FieldMismatchError(self.d, other.d)
            return other.p, other.q, other.r
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            return other.numerator, 0, other.denominator
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        p, q, r = o
        return _make(self.p * r + p * self.r, self.q * r + q * self.r, self.d, self.r * r)

    __radd__ = __add__

    def __neg__(self):
        return QuadraticSurd(-self.p, -self.q, self.d, self.r)

    def __pos__(self):
        return self

    def __abs__(self):
        return -self if sign(self) < 0 else self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        p, q, r = o
        return _make(self.p * r - p * self.r, self.q * r - q * self.r, self.d, self.r * r)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        p, q, r = o
        return _make(
            self.p * p + self.q * q * self.d, self.p * q + self.q * p, self.d, self.r * r
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        p, q, r = o
        if p == 0 and q == 0:
            raise ZeroDivisionError("division by zero magnitude")
        # multiply through by the conjugate of the divisor
        norm = p * p - q * q * self.d
        return _make(
            (self.p * p - self.q * q * self.d) * r,
            (self.q * p - self.p * q) * r,
            self.d,
            self.r * norm,
        )

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        p, q, r = o
        if q:
            return _make(p, q, self.d, r) / self
        norm = self.p * self.p - self.q * self.q * self.d
        return _make(p * self.r * self.p, -p * self.r * self.q, self.d, r * norm)

    # -- ordering ------------------------------------------------------
    def __lt__(self, other):
        return _cmp_or_notimpl(self, other, lambda c: c < 0)

    def __le__(self, other):
        return _cmp_or_notimpl(self, other, lambda c: c <= 0)

    def __gt__(self, other):
        return _cmp_or_notimpl(self, other, lambda c: c > 0)

    def __ge__(self, other):
        return _cmp_or_notimpl(self, other, lambda c: c >= 0)


Magnitude = Union[Fraction, QuadraticSurd]


def _cmp_or_notimpl(x, y, test):
    if not isinstance(y, (int, Fraction, QuadraticSurd)):
        return NotImplemented
    return test(compare(x, y))


def _make(p: int, q: int, d: int, r: int) -> Magnitude:
    """Canonicalize assuming ``d`` is already squarefree and ``d > 1``."""
    if r == 0:
        raise ZeroDivisionError("zero denominator")
    if q == 0:
        return Fraction(p, r)
    if r < 0:
        p, q, r = -p, -q, -r
    g = math.gcd(p, q, r)
    return QuadraticSurd(p // g, q // g, d, r // g)


def normalize_surd(p: int, q: int, d: int, r: int) -> Magnitude:
    """Canonical form of ``(p + q*sqrt(d))/r``.

    Square factors leave the radicand, common factors cancel and ``r`` is
    made positive. Collapses to a :class:`Fraction` whenever the value is
    rational.

    >>> normalize_surd(0, 2, 8, 2)
    QuadraticSurd(p=0, q=2, d=2, r=1)
    >>> normalize_surd(1, 1, 4, 1)
    Fraction(3, 1)
    """
    if r == 0:
        raise DomainError("invalid denominator r = 0", invariant="r != 0")
    if d < 0:
        raise DomainError(f"negative radicand {d} is unsupported", invariant="d >= 0")
    if q == 0 or d == 0:
        return Fraction(p, r)
    s, f = _squarefree_split(d)
    if f == 1:
        return Fraction(p + q * s, r)
    return _make(p, q * s, f, r)


def as_magnitude(x) -> Magnitude:
    """Coerce ints, Fractions, surds and magnitude strings. Floats are rejected."""
    if isinstance(x, QuadraticSurd):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a magnitude")
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, str):
        return parse_magnitude(x)
    raise TypeError(f"cannot use {type(x).__name__} as an exact magnitude")


def radicand(x: Magnitude) -> int | None:
    return x.d if isinstance(x, QuadraticSurd) else None


def sign(x: Magnitude) -> int:
    """Exact sign of a magnitude: -1, 0 or 1."""
    if isinstance(x, QuadraticSurd):
        sp = (x.p > 0) - (x.p < 0)
        sq = (x.q > 0) - (x.q < 0)
        if sp == 0 or sp == sq:
            return sq
        # p and q*sqrt(d) have opposite signs: the larger square wins
        pp, qqd = x.p * x.p, x.q * x.q * x.d
        return sp if pp > qqd else sq
    x = Fraction(x)
    return (x > 0) - (x < 0)


def compare(x: Magnitude, y: Magnitude) -> Ordering:
    """Exact ordering of two magnitudes from the same field (or rationals)."""
    dx, dy = radicand(x), radicand(y)
    if dx is not None and dy is not None and dx != dy:
        raise FieldMismatchError(dx, dy)
    return Ordering(sign(x - y))


def floor_of(x: Magnitude) -> int:
    """Greatest integer ``<= x``, computed with integer square roots only."""
    if not isinstance(x, QuadraticSurd):
        return math.floor(Fraction(x))
    root = math.isqrt(x.q * x.q * x.d)  # q*sqrt(d) is irrational, never equal to root
    m = root if x.q > 0 else -root - 1
    # floor((t)/r) == floor(t)//r for integer r > 0
    return (x.p + m) // x.r


def archimedean_witness(a: Magnitude, b: Magnitude) -> int:
    """Minimal natural number ``n`` with ``n*a > b``."""
    a, b = as_magnitude(a), as_magnitude(b)
    if sign(a) <= 0 or sign(b) <= 0:
        raise DomainError("archimedean witness needs a > 0 and b > 0", invariant="positivity")
    compare(a, b)  # surfaces field mismatch
    return floor_of(b / a) + 1


# -- text form ---------------------------------------------------------

def format_magnitude(x: Magnitude) -> str:
    """Render in the grammar accepted by :func:`parse_magnitude`."""
    if not isinstance(x, QuadraticSurd):
        x = Fraction(x)
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    root = f"sqrt({x.d})"
    if abs(x.q) == 1:
        qterm = root
    else:
        qterm = f"{abs(x.q)}*{root}"
    if x.p == 0:
        num = qterm if x.q > 0 else f"-{qterm}"
    else:
        num = f"{x.p}{'+' if x.q > 0 else '-'}{qterm}"
    if x.r == 1:
        return num
    return f"({num})/{x.r}"


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = self._tokenize(text)
        self.i = 0

    def _tokenize(self, text):
        tokens = []
        j = 0
        while j < len(text):
            ch = text[j]
            if ch.isspace():
                j += 1
            elif ch.isdigit():
                k = j
                while k < len(text) and text[k].isdigit():
                    k += 1
                tokens.append(("int", int(text[j:k]), j + 1))
                j = k
            elif text.startswith("sqrt", j):
                tokens.append(("sqrt", None, j + 1))
                j += 4
            elif ch in "+-*/()":
                tokens.append((ch, None, j + 1))
                j += 1
            else:
                raise MagnitudeSyntaxError(f"unexpected character {ch!r}", text, j + 1)
        tokens.append(("end", None, len(text) + 1))
        return tokens

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind):
        tok = self.tokens[self.i]
        if tok[0] != kind:
            what = "end of input" if tok[0] == "end" else repr(tok[0])
            raise MagnitudeSyntaxError(f"expected {kind!r}, found {what}", self.text, tok[2])
        self.i += 1
        return tok

    def parse(self):
        if self.peek()[0] == "end":
            raise MagnitudeSyntaxError("empty magnitude", self.text, 1)
        value = self.expr()
        self.take("end")
        return value

    def expr(self):
        value = self.term()
        while self.peek()[0] in "+-":
            op = self.take(self.peek()[0])[0]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.factor()
        while self.peek()[0] in "*/":
            op, _, col = self.take(self.peek()[0])
            rhs = self.factor()
            if op == "*":
                value = value * rhs
            else:
                if sign(rhs) == 0:
                    raise DomainError(
                        f"zero denominator at column {col}: {self.text!r}", invariant="r != 0"
                    )
                value = value / rhs
        return value

    def factor(self):
        kind = self.peek()[0]
        if kind == "-":
            self.take("-")
            return -self.factor()
        if kind == "+":
            self.take("+")
            return self.factor()
        return self.primary()

    def primary(self):
        kind, val, col = self.peek()
        if kind == "int":
            self.take("int")
            return Fraction(val)
        if kind == "(":
            self.take("(")
            value = self.expr()
            self.take(")")
            return value
        if kind == "sqrt":
            self.take("sqrt")
            self.take("(")
            arg = self.expr()
            self.take(")")
            if isinstance(arg, QuadraticSurd):
                raise MagnitudeSyntaxError("nested square roots are not quadratic", self.text, col)
            if arg < 0:
                raise DomainError(
                    f"negative radicand at column {col}: {self.text!r}", invariant="d >= 0"
                )
            # sqrt(n/m) = sqrt(n*m)/m
            return normalize_surd(0, 1, arg.numerator * arg.denominator, arg.denominator)
        what = "end of input" if kind == "end" else repr(kind)
        raise MagnitudeSyntaxError(f"unexpected {what}", self.text, col)


def parse_magnitude(text: str) -> Magnitude:
    """Parse ``"17"``, ``"7/5"``, ``"sqrt(2)"``, ``"(1+sqrt(5))/2"`` and similar.

    The grammar is ordinary arithmetic over integers and ``sqrt(...)``; the
    result is exact and must stay inside one quadratic field.
    """
    return _Parser(text).parse()
