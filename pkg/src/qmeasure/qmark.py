"""Minkowski's question mark function and its inverse (Conway's box).

Exact on rationals and dyadics via the alternating Salem series over the
continued fraction digits; tolerance-controlled on floats.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .contfrac import Dyadic, as_rational, cf_from_rational, convergents
from .errors import DomainError


@dataclass(frozen=True)
class ApproxReal:
    value: float
    tol: float  # certified bound on |value - true value|


def salem_sum(w) -> Dyadic:
    """Sum of (-1)**(k-1) * 2**(1 - (a_1 + ... + a_k)) over the word ``w``.

    Accepts non-canonical words; ``[.., a, 1]`` and ``[.., a+1]`` agree.
    """
    w = tuple(w)
    if not w:
        return Dyadic(0)
    total = sum(w)
    num, s = 0, 0
    for k, a in enumerate(w):
        if a < 1:
            raise DomainError("continued fraction digits must be >= 1")
        s += a
        term = 1 << (total - s)
        num += term if k % 2 == 0 else -term
    return Dyadic(num, total - 1)


def qmark_exact(x) -> Dyadic:
    x = as_rational(x)
    if not 0 <= x <= 1:
        raise DomainError(f"{x} is outside [0, 1]")
    return salem_sum(cf_from_rational(x))


def _digits(x: Fraction):
    p, q = x.numerator, x.denominator
    while p:
        a, r = divmod(q, p)
        yield a
        p, q = r, p


def _exact_or_float(x) -> Fraction:
    if isinstance(x, float):
        if not math.isfinite(x):
            raise DomainError(f"non-finite input {x}")
        return Fraction(x)
    return as_rational(x)


def qmark_approx(x, tol: float) -> ApproxReal:
    """Evaluate ``?(x)`` to within ``tol`` by truncating the Salem series.

    The returned ``tol`` is the certified bound: the truncation tail plus the
    rounding of the exact partial sum to a double.
    """
    if not tol > 0:
        raise DomainError("tol must be positive")
    x = _exact_or_float(x)
    if not 0 <= x <= 1:
        raise DomainError(f"{x} is outside [0, 1]")
    partial = Fraction(0)
    s, sign, tail = 0, 1, 0.0
    for a in _digits(x):
        s += a
        if s > 1 - math.log2(tol):
            # alternating series: the first omitted term bounds the tail
            tail = math.ldexp(1.0, max(1 - s, -1100))
            break
        partial += Fraction(sign, 1 << (s - 1))
        sign = -sign
    value = float(partial)
    rounding = abs(Fraction(value) - partial)
    return ApproxReal(value, tail + float(rounding) * (1 + 2 ** -52))


def _binary_runs(y: Dyadic) -> list[int]:
    """Run lengths of the terminating binary expansion 0.b_1 b_2 ... b_e."""
    bits = format(y.num, "b").zfill(y.exp)
    runs, prev, count = [], "0", 0
    for b in bits:
        if b == prev:
            count += 1
        else:
            runs.append(count)
            prev, count = b, 1
    runs.append(count)
    return runs  # runs[0] = leading zeros, then alternating 1s/0s


def box_exact(y) -> Fraction:
    """Inverse of :func:`qmark_exact` on dyadic rationals in [0, 1]."""
    y = Dyadic.from_fraction(y)
    if not 0 <= y <= 1:
        raise DomainError(f"{y} is outside [0, 1]")
    if y == 0:
        return Fraction(0)
    if y == 1:
        return Fraction(1)
    runs = _binary_runs(y)
    word = [runs[0] + 1] + runs[1:]
    p, q, _, _ = convergents(word)
    return Fraction(p, q)


def box_approx(y, tol: float) -> ApproxReal:
    """Inverse question mark of a real ``y``, decoding binary runs lazily.

    Decoding stops once the cylinder of the completed runs is narrower than
    ``tol``; the convergent lies inside that cylinder with the true inverse.
    """
    if not tol > 0:
        raise DomainError("tol must be positive")
    yf = _exact_or_float(y)
    if not 0 <= yf <= 1:
        raise DomainError(f"{yf} is outside [0, 1]")
    if yf in (0, 1):
        return ApproxReal(float(yf), 0.0)
    if yf.denominator & (yf.denominator - 1) == 0:
        runs = _binary_runs(Dyadic.from_fraction(yf))
        exact = True
    else:
        runs = _runs_of(yf)
        exact = False
    p, q, pp, qq = 0, 1, 1, 0
    for i, r in enumerate(runs):
        a = r + 1 if i == 0 else r
        p, q, pp, qq = a * p + pp, a * q + qq, p, q
        last = exact and i == len(runs) - 1
        width = Fraction(1, q * (q + qq))
        if last or width < tol:
            break
    value = Fraction(p, q)
    v = float(value)
    bound = 0.0 if last else float(width)
    return ApproxReal(v, bound + float(abs(Fraction(v) - value)) * (1 + 2 ** -52))


def _runs_of(y: Fraction):
    """Lazily yield completed binary runs of a non-dyadic rational in (0, 1)."""
    num, den = y.numerator, y.denominator
    prev, count = "0", 0
    while True:
        num *= 2
        bit = "1" if num >= den else "0"
        if bit == "1":
            num -= den
        if bit == prev:
            count += 1
        else:
            yield count
            prev, count = bit, 1
