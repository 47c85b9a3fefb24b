"""Exact continued fractions, Gauss cylinders and Stern-Brocot cells.

Rationals are :class:`fractions.Fraction`; no floating point is used here.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from numbers import Rational as _RationalABC
from typing import Iterable, Sequence

from .errors import DomainError

Rational = Fraction
CFWord = tuple  # tuple[int, ...] of partial quotients a_1..a_n


def as_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, _RationalABC)):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise DomainError(f"not a rational: {x!r}") from exc
    raise DomainError(f"expected an exact rational, got {type(x).__name__}")


@total_ordering
@dataclass(frozen=True, eq=False)
class Dyadic:
    """The exact value ``num / 2**exp`` with ``num`` odd (or zero, exp 0)."""

    num: int
    exp: int = 0

    def __post_init__(self):
        if self.exp < 0:
            raise DomainError("dyadic exponent must be nonnegative")
        num, exp = self.num, self.exp
        if num == 0:
            exp = 0
        else:
            tz = min((num & -num).bit_length() - 1, exp)
            num >>= tz
            exp -= tz
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "exp", exp)

    @classmethod
    def from_fraction(cls, x) -> "Dyadic":
        if isinstance(x, Dyadic):
            return x
        x = as_rational(x)
        d = x.denominator
        if d & (d - 1):
            raise DomainError(f"{x} is not dyadic")
        return cls(x.numerator, d.bit_length() - 1)

    @classmethod
    def from_string(cls, s: str) -> "Dyadic":
        """Parse ``"k/2^m"``, ``"p/q"`` with q a power of two, or a decimal."""
        s = s.strip()
        if "/2^" in s:
            k, m = s.split("/2^", 1)
            try:
                return cls(int(k), int(m))
            except ValueError as exc:
                raise DomainError(f"not a dyadic: {s!r}") from exc
        return cls.from_fraction(as_rational(s))

    def to_fraction(self) -> Fraction:
        return Fraction(self.num, 1 << self.exp)

    def __float__(self) -> float:
        return float(self.to_fraction())

    def _coerce(self, other) -> "Dyadic":
        if isinstance(other, Dyadic):
            return other
        if isinstance(other, int):
            return Dyadic(other, 0)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        e = max(self.exp, other.exp)
        return Dyadic((self.num << (e - self.exp)) + (other.num << (e - other.exp)), e)

    __radd__ = __add__

    def __neg__(self):
        return Dyadic(-self.num, self.exp)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def half(self) -> "Dyadic":
        return Dyadic(self.num, self.exp + 1)

    def __eq__(self, other):
        if isinstance(other, Dyadic):
            return self.num == other.num and self.exp == other.exp
        if isinstance(other, (int, Fraction)):
            return self.to_fraction() == other
        return NotImplemented

    def __lt__(self, other):
        if isinstance(other, Dyadic):
            other = other.to_fraction()
        if isinstance(other, (int, Fraction)):
            return self.to_fraction() < other
        return NotImplemented

    def __hash__(self):
        return hash(self.to_fraction())

    def __str__(self):
        return f"{self.num}/{1 << self.exp}"

    def power_form(self) -> str:
        return f"{self.num}/2^{self.exp}"


def _check_word(w: Iterable[int]) -> tuple[int, ...]:
    w = tuple(int(a) for a in w)
    if any(a < 1 for a in w):
        raise DomainError(f"continued fraction digits must be >= 1, got {w}")
    return w


def convergents(w: Sequence[int]) -> tuple[int, int, int, int]:
    """Return ``(p_n, q_n, p_{n-1}, q_{n-1})`` for ``[0; a_1, ..., a_n]``."""
    p, q, pp, qq = 0, 1, 1, 0
    for a in w:
        p, q, pp, qq = a * p + pp, a * q + qq, p, q
    return p, q, pp, qq


def cf_from_rational(x) -> CFWord:
    """Canonical continued fraction digits of a rational in [0, 1].

    The last digit is at least 2 except for ``1 = [1]``; zero is the empty word.
    """
    x = as_rational(x)
    if not 0 <= x <= 1:
        raise DomainError(f"{x} is outside [0, 1]")
    p, q = x.numerator, x.denominator
    digits = []
    while p:
        a, r = divmod(q, p)
        digits.append(a)
        p, q = r, p
    return tuple(digits)


def rational_from_cf(w: Iterable[int]) -> Fraction:
    w = _check_word(w)
    p, q, _, _ = convergents(w)
    return Fraction(p, q)


def canonical(w: Iterable[int]) -> CFWord:
    """Fold a trailing digit 1 into its predecessor: [.., a, 1] -> [.., a+1]."""
    w = list(_check_word(w))
    if len(w) >= 2 and w[-1] == 1:
        w.pop()
        w[-1] += 1
    return tuple(w)


@dataclass(frozen=True)
class FareyCell:
    """A Stern-Brocot interval ``[p/q, p2/q2]`` with ``p2*q - p*q2 == 1``.

    Its mu-mass is exactly ``2**-depth``.
    """

    p: int
    q: int
    p2: int
    q2: int
    depth: int = 0

    def __post_init__(self):
        if self.p2 * self.q - self.p * self.q2 != 1 or self.q < 1 or self.q2 < 1:
            raise DomainError("endpoints are not unimodular neighbours")

    @classmethod
    def root(cls) -> "FareyCell":
        return cls(0, 1, 1, 1, 0)

    @property
    def left(self) -> Fraction:
        return Fraction(self.p, self.q)

    @property
    def right(self) -> Fraction:
        return Fraction(self.p2, self.q2)

    @property
    def mediant(self) -> Fraction:
        return Fraction(self.p + self.p2, self.q + self.q2)

    @property
    def diameter(self) -> Fraction:
        return Fraction(1, self.q * self.q2)

    @property
    def mass(self) -> Dyadic:
        return Dyadic(1, self.depth)

    def contains(self, x) -> bool:
        """Half-open membership ``left < x <= right`` (cylinder convention)."""
        x = as_rational(x)
        return self.left < x <= self.right

    def split(self) -> tuple["FareyCell", "FareyCell"]:
        return farey_split(self)


def farey_split(c: FareyCell) -> tuple[FareyCell, FareyCell]:
    mp, mq = c.p + c.p2, c.q + c.q2
    return (
        FareyCell(c.p, c.q, mp, mq, c.depth + 1),
        FareyCell(mp, mq, c.p2, c.q2, c.depth + 1),
    )


def gauss_cylinder(w: Iterable[int]) -> FareyCell:
    """Interval of points whose expansion starts with ``w``, as a Farey cell.

    Endpoints are ``p_n/q_n`` and ``(p_n + p_{n-1})/(q_n + q_{n-1})``; the
    depth is the digit sum, so the mass is ``2**-(a_1 + ... + a_n)``.
    Membership follows the half-open ``(left, right]`` convention.
    """
    w = _check_word(w)
    if not w:
        raise DomainError("gauss_cylinder needs a nonempty word")
    p, q, pp, qq = convergents(w)
    a, b = (p, q), (p + pp, q + qq)
    if len(w) % 2 == 0:
        lo, hi = a, b
    else:
        lo, hi = b, a
    return FareyCell(lo[0], lo[1], hi[0], hi[1], sum(w))
