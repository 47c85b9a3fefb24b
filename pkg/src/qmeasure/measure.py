"""The Stieltjes measure mu = d? on [0, 1].

Interval masses are exact.  Integrals use worst-first refinement of
Stern-Brocot cells: a cell of depth m carries mass exactly 2**-m and its
mediant splits that mass in half, so the mediant is the node.
"""
from __future__ import annotations

import heapq
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .contfrac import Dyadic, as_rational, rational_from_cf
from .errors import BudgetExhausted, DomainError
from .qmark import qmark_exact

DEFAULT_BUDGET = 10_000_000
KINNEY_LIPSCHITZ = 1 / math.log(2)


@dataclass(frozen=True)
class Integrand:
    """``func`` together with metadata that bounds its variation.

    ``lipschitz`` must hold on all of [0, 1].  ``osc_cap`` is a global bound
    on ``|f(x) - f(y)|``; ``oscillation(a, b)``, when given, bounds it on the
    closed cell ``[a, b]`` (exact rational endpoints).
    """

    func: Callable[[float], float]
    lipschitz: float
    osc_cap: float = math.inf
    oscillation: Optional[Callable[[Fraction, Fraction], float]] = None


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    err_bound: float
    cells_used: int


@dataclass(frozen=True)
class DimensionEstimate:
    dim: float
    err_bound: float
    integral: QuadratureResult


def mu_interval(a, b) -> Dyadic:
    """Exact mass of the interval between ``a`` and ``b`` (endpoints carry none)."""
    a, b = as_rational(a), as_rational(b)
    if a > b:
        raise DomainError(f"empty interval: {a} > {b}")
    return qmark_exact(b) - qmark_exact(a)


def _cell_bound(f: Integrand, p, q, p2, q2, m) -> float:
    b = f.osc_cap
    if f.lipschitz < math.inf:
        b = min(b, f.lipschitz / (q * q2))
    if f.oscillation is not None and b > 0:
        b = min(b, f.oscillation(Fraction(p, q), Fraction(p2, q2)))
    return math.ldexp(b, -m)


def integrate_mu(f: Integrand, tol: float, budget: int = DEFAULT_BUDGET) -> QuadratureResult:
    """Integrate ``f`` against mu with a certified bound on the measure-side error.

    Each leaf cell contributes ``f(mediant) * 2**-m``.  Since the mediant is
    the mu-median of its cell, ``min(L * diam, osc) * 2**-m`` bounds the
    cell's error with a factor-two margin that also absorbs the rounding of
    the node to a double.  The worst cell is split (leftmost first on ties)
    until the summed bound is at most ``tol``.
    """
    if not tol > 0:
        raise DomainError("tol must be positive")
    if not f.lipschitz >= 0:
        raise DomainError("lipschitz bound must be nonnegative")
    seq = 0
    heap = []
    total = 0.0

    def push(p, q, p2, q2, m):
        nonlocal seq, total
        b = _cell_bound(f, p, q, p2, q2, m)
        heapq.heappush(heap, (-b, p / q, seq, p, q, p2, q2, m))
        seq += 1
        total += b

    push(0, 1, 1, 1, 0)
    while True:
        if total <= tol:
            total = math.fsum(-c[0] for c in heap)
            if total <= tol:
                break
        if len(heap) >= budget:
            raise BudgetExhausted(
                f"cell budget {budget} exhausted at error bound {total:.3g} > tol {tol:.3g}",
                partial=_collect(f, heap),
            )
        nb, _, _, p, q, p2, q2, m = heapq.heappop(heap)
        total += nb
        mp, mq = p + p2, q + q2
        push(p, q, mp, mq, m + 1)
        push(mp, mq, p2, q2, m + 1)
    return _collect(f, heap)


def _collect(f: Integrand, heap) -> QuadratureResult:
    value = math.fsum(
        math.ldexp(f.func((p + p2) / (q + q2)), -m) for _, _, _, p, q, p2, q2, m in heap
    )
    bound = math.fsum(-c[0] for c in heap)
    return QuadratureResult(value, bound, len(heap))


def kinney_integrand() -> Integrand:
    return Integrand(lambda x: math.log2(1.0 + x), KINNEY_LIPSCHITZ, osc_cap=1.0)


def kinney_dimension(tol: float, budget: int = DEFAULT_BUDGET) -> DimensionEstimate:
    """Hausdorff dimension of mu as ``1 / (2 * integral of log2(1 + x) dmu)``.

    The bound on ``dim`` is the exact worst case over the integral's bracket,
    ``e / (2 I (I - e))``.
    """
    try:
        integral = integrate_mu(kinney_integrand(), tol, budget)
    except BudgetExhausted as exc:
        exc.partial = _dimension(exc.partial)
        raise
    return _dimension(integral)


def _dimension(integral: QuadratureResult) -> DimensionEstimate:
    i, e = integral.value, integral.err_bound
    if not e < i:
        raise DomainError("integral is not bracketed away from zero")
    return DimensionEstimate(1 / (2 * i), e / (2 * i * (i - e)), integral)


def _geometric_digit(rng: random.Random) -> int:
    # 1 + number of failures before the first success of a fair coin;
    # each bit of a 64-bit word is one flip
    k = 1
    while True:
        bits = rng.getrandbits(64)
        if bits:
            return k + (bits & -bits).bit_length() - 1
        k += 64


def sample_word(rng: random.Random, mass_tol: float) -> tuple[int, ...]:
    """Digits with P(a = k) = 2**-k until the cylinder mass drops below ``mass_tol``."""
    word, s = [], 0
    while 2.0 ** -s >= mass_tol:
        a = _geometric_digit(rng)
        word.append(a)
        s += a
    return tuple(word)


def sample_mu(seed: int, mass_tol: float, count: int = 1) -> list[Fraction]:
    """Draw ``count`` points distributed as mu (to cylinder mass ``mass_tol``)."""
    if not 0 < mass_tol < 1:
        raise DomainError("mass_tol must lie in (0, 1)")
    if count < 0:
        raise DomainError("count must be nonnegative")
    rng = random.Random(seed)
    return [rational_from_cf(sample_word(rng, mass_tol)) for _ in range(count)]


def gauss_map(x) -> Fraction:
    """``x -> 1/x mod 1`` on [0, 1), with G(0) = 0."""
    x = as_rational(x)
    if not 0 <= x < 1:
        raise DomainError(f"{x} is outside [0, 1)")
    if x == 0:
        return Fraction(0)
    y = 1 / x
    return y - math.floor(y)
