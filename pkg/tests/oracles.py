"""Reference computations that share no code path with the package."""
from __future__ import annotations

import cmath
import math
from fractions import Fraction


def stern_brocot_values(max_den: int) -> dict[Fraction, Fraction]:
    """?(x) for every rational in [0, 1] with denominator <= max_den.

    Uses only ?(0) = 0, ?(1) = 1 and ?(mediant) = average of the neighbours.
    """
    values = {Fraction(0): Fraction(0), Fraction(1): Fraction(1)}
    stack = [(0, 1, Fraction(0), 1, 1, Fraction(1))]
    while stack:
        p, q, vl, p2, q2, vr = stack.pop()
        mq = q + q2
        if mq > max_den:
            continue
        mp = p + p2
        vm = (vl + vr) / 2
        values[Fraction(mp, mq)] = vm
        stack.append((p, q, vl, mp, mq, vm))
        stack.append((mp, mq, vm, p2, q2, vr))
    return values


def stern_brocot_value(x: Fraction) -> Fraction:
    """?(x) by descending the Stern-Brocot tree to x."""
    lo, hi = (0, 1, Fraction(0)), (1, 1, Fraction(1))
    if x == 0:
        return Fraction(0)
    if x == 1:
        return Fraction(1)
    while True:
        mp, mq = lo[0] + hi[0], lo[1] + hi[1]
        vm = (lo[2] + hi[2]) / 2
        m = Fraction(mp, mq)
        if m == x:
            return vm
        if x < m:
            hi = (mp, mq, vm)
        else:
            lo = (mp, mq, vm)


def riemann_stieltjes_bracket(f, depth: int) -> tuple[float, float]:
    """Lower/upper sums of an increasing f over all depth-``depth`` cells."""
    lo = hi = 0.0
    stack = [(0, 1, 1, 1, 0)]
    lo_terms, hi_terms = [], []
    while stack:
        p, q, p2, q2, m = stack.pop()
        if m == depth:
            w = 2.0 ** -m
            lo_terms.append(w * f(p / q))
            hi_terms.append(w * f(p2 / q2))
            continue
        mp, mq = p + p2, q + q2
        stack.append((p, q, mp, mq, m + 1))
        stack.append((mp, mq, p2, q2, m + 1))
    return math.fsum(lo_terms), math.fsum(hi_terms)


def fourier_by_parts(n: int, qvals: list[Fraction]) -> tuple[complex, float]:
    """mu^(n) = 1 + 2 pi i n int_0^1 ?(x) exp(-2 pi i n x) dx on a uniform grid.

    ``qvals[j]`` is ?(j/K).  On each grid cell ? is replaced by the average of
    its endpoint values; monotonicity bounds the error by pi |n| / K.
    """
    k = len(qvals) - 1
    h = 1.0 / k
    total = 0j
    for j in range(k):
        a = j * h
        avg = float(qvals[j] + qvals[j + 1]) / 2
        # exact integral of exp(-2 pi i n x) over [a, a + h]
        seg = (cmath.exp(-2j * math.pi * n * (a + h)) - cmath.exp(-2j * math.pi * n * a)) / (
            -2j * math.pi * n
        )
        total += avg * seg
    return 1 + 2j * math.pi * n * total, math.pi * abs(n) * h
