"""Fourier-Stieltjes coefficients ``mu^(n) = int exp(-2 pi i n x) dmu(x)``.

A cell of depth m and diameter d contributes ``exp(-2 pi i n c) * 2**-m`` at
its mediant c.  Because c is the mu-median of the cell,
``2**-m * min(2, pi |n| d)`` bounds the cell's error.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import _kernels as K
from .errors import BudgetExhausted, DomainError, IllConditionedFit
from .measure import DEFAULT_BUDGET

_U = 2.0 ** -52


@dataclass(frozen=True)
class FourierCoefficient:
    n: int
    re: float
    im: float
    err_bound: float
    converged: bool = True

    @property
    def abs(self) -> float:
        return math.hypot(self.re, self.im)


@dataclass(frozen=True)
class DecayEstimate:
    eta: float
    intercept: float
    block_maxima: tuple  # ((j, M_j), ...)
    residual: float


def _next_eps(eps: float, bound: float, target: float) -> float:
    # the summed bound scales roughly like sqrt(eps)
    guess = eps * (target / bound) ** 2 * 0.8
    return min(max(guess, eps * 1e-4), eps * 0.5)


def _refine(sweep, tol: float):
    """Drive threshold sweeps until the bound meets ``tol`` or the budget stops us.

    ``sweep(eps)`` returns ``(bound, slack, over_budget, payload)``.  After a
    sweep overruns the budget the threshold is bisected (geometrically)
    between the finest sweep that fit and the one that did not.  Returns
    ``(payload, met)`` for the finest sweep that fit, or ``(None, False)``.
    """
    eps, best, fit_eps, fail_eps = 2.0, None, None, None
    while True:
        bound, slack, over, payload = sweep(eps)
        if over:
            fail_eps = eps
        else:
            best, fit_eps = payload, eps
            if bound + slack <= tol:
                return best, True
        if fail_eps is None:
            eps = _next_eps(eps, bound, tol - 4 * slack)
        elif fit_eps is None or fit_eps / fail_eps < 1.05:
            return best, False
        else:
            eps = math.sqrt(fit_eps * fail_eps)


def _check_args(tol: float, budget: int) -> None:
    if not tol > 0:
        raise DomainError("tol must be positive")
    if budget < 1:
        raise DomainError("budget must be at least one cell")


def _sweep_status(status: int) -> None:
    if status == K.OVERFLOW:
        raise OverflowError("Stern-Brocot denominators exceeded the compiled range")


def fourier_coeff(n: int, tol: float, budget: int = DEFAULT_BUDGET) -> FourierCoefficient:
    """One coefficient by adaptive mediant quadrature with a certified bound."""
    _check_args(tol, budget)
    n = int(n)
    if n == 0:
        return FourierCoefficient(0, 1.0, 0.0, 0.0)
    def sweep(eps):
        re, im, bound, leaves, status = K.sweep_direct(n, eps, budget)
        _sweep_status(status)
        # recursive summation over the leaves plus per-term rounding
        slack = (leaves + 32) * _U
        err = bound + slack
        return bound, slack, status == K.OVER_BUDGET, FourierCoefficient(n, re, im, err, err <= tol)

    row, met = _refine(sweep, tol)
    if not met:
        raise BudgetExhausted(f"cell budget {budget} exhausted for n={n}", partial=row)
    return row


def _taylor_order(theta: float, floor: float = 1e-17) -> tuple[int, float]:
    order, term = 0, theta
    while term > floor:
        order += 1
        term *= theta / (order + 1)
    return order, term


def _bucket_bounds(ns: np.ndarray, w_sum: np.ndarray, wd_sum: np.ndarray) -> np.ndarray:
    # sum of min(a_i, b_i) <= min(sum a_i, sum b_i) within each bucket
    nz = w_sum > 0
    w, wd = w_sum[nz], wd_sum[nz]
    out = np.empty(len(ns))
    for start in range(0, len(ns), 4096):
        chunk = np.abs(ns[start:start + 4096]).astype(float)[:, None]
        out[start:start + 4096] = np.minimum(2.0 * w, math.pi * chunk * wd).sum(axis=1)
    return out


def coeff_table(
    n_min: int,
    n_max: int,
    tol: float,
    budget: int = DEFAULT_BUDGET,
    method: str = "batched",
    workers: int | None = None,
) -> list[FourierCoefficient]:
    """Coefficients for every n in ``[n_min, n_max]``, in increasing n.

    ``method="batched"`` refines one shared partition until the bound holds
    for the largest ``|n|`` (the bound is monotone in ``|n|``, so it holds
    for all rows) and evaluates every row at once: mediant weights are binned
    on a uniform grid, ``exp(-2 pi i n x)`` is Taylor-expanded around each bin
    centre, and each Taylor order is one FFT.  The truncation remainder is
    added to each row's bound.

    ``method="direct"`` runs :func:`fourier_coeff` per row, optionally on a
    thread pool.

    A row whose bound exceeds ``tol`` because the budget ran out is returned
    with ``converged=False``; the table is never aborted.
    """
    _check_args(tol, budget)
    n_min, n_max = int(n_min), int(n_max)
    if n_min > n_max:
        raise DomainError(f"empty range [{n_min}, {n_max}]")
    if method == "direct":
        return _direct_table(range(n_min, n_max + 1), tol, budget, workers)
    if method != "batched":
        raise DomainError(f"unknown method {method!r}")
    ns = np.arange(n_min, n_max + 1)
    nref = int(np.abs(ns).max())
    if nref == 0:
        return [FourierCoefficient(0, 1.0, 0.0, 0.0)]

    nbins = 1 << max(4, (4 * nref).bit_length())
    theta = math.pi * nref / nbins
    order, trunc = _taylor_order(theta)

    def slack(leaves):
        return trunc + 10 * (leaves + 200) * _U + 2 * math.pi * nref * _U

    def sweep(eps):
        leaves, status, w_sum, wd_sum = K.sweep_buckets(nref, eps, budget)
        _sweep_status(status)
        bound = float(_bucket_bounds(np.array([nref]), w_sum, wd_sum)[0])
        return bound, slack(leaves), status == K.OVER_BUDGET, (eps, leaves, w_sum, wd_sum)

    best, _ = _refine(sweep, tol)
    if best is None:
        raise BudgetExhausted(f"cell budget {budget} too small for a single sweep")
    eps, leaves, w_sum, wd_sum = best
    mom, _ = K.sweep_moments(nref, eps, nbins, order)
    spectra = np.fft.fft(mom, axis=1)
    idx = np.mod(ns, nbins)
    step = -2j * math.pi * ns / nbins
    acc = np.zeros(len(ns), complex)
    factor = np.ones(len(ns), complex)
    for k in range(order + 1):
        acc += factor * spectra[k, idx]
        factor = factor * step / (k + 1)
    vals = acc * np.exp(-1j * math.pi * ns / nbins)
    errs = _bucket_bounds(ns, w_sum, wd_sum) + slack(leaves)

    rows = []
    for n, v, e in zip(ns.tolist(), vals.tolist(), errs.tolist()):
        if n == 0:
            rows.append(FourierCoefficient(0, 1.0, 0.0, 0.0))
        else:
            rows.append(FourierCoefficient(n, v.real, v.imag, e, e <= tol))
    return rows


def _direct_row(n: int, tol: float, budget: int) -> FourierCoefficient:
    try:
        return fourier_coeff(n, tol, budget)
    except BudgetExhausted as exc:
        if exc.partial is None:
            return FourierCoefficient(n, math.nan, math.nan, math.inf, False)
        return exc.partial


def _direct_table(ns: Iterable[int], tol: float, budget: int, workers) -> list[FourierCoefficient]:
    ns = list(ns)
    if workers == 1 or len(ns) == 1:
        return [_direct_row(n, tol, budget) for n in ns]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda n: _direct_row(n, tol, budget), ns))


def block_maxima(table: Sequence[FourierCoefficient], j_min: int, j_max: int):
    """``(j, M_j, err_j)`` with M_j the largest |mu^(n)| over n in [2**j, 2**(j+1))."""
    by_n = {r.n: r for r in table}
    out = []
    for j in range(j_min, j_max + 1):
        block = [by_n.get(n) for n in range(1 << j, 1 << (j + 1))]
        if any(r is None for r in block):
            raise DomainError(f"table does not cover block j={j}")
        top = max(block, key=lambda r: r.abs)
        out.append((j, top.abs, top.err_bound))
    return out


def fit_decay(table: Sequence[FourierCoefficient], j_min: int, j_max: int) -> DecayEstimate:
    """Least-squares slope of log M_j against j log 2; ``eta`` is minus the slope."""
    if j_min < 0 or j_max <= j_min:
        raise DomainError("need 0 <= j_min < j_max")
    blocks = block_maxima(table, j_min, j_max)
    for j, mj, err in blocks:
        if not mj > 0 or mj <= err:
            raise IllConditionedFit(f"block j={j}: maximum {mj:.3g} not above its bound {err:.3g}")
    x = np.array([j * math.log(2) for j, _, _ in blocks])
    y = np.log([mj for _, mj, _ in blocks])
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    return DecayEstimate(
        eta=float(-slope),
        intercept=float(intercept),
        block_maxima=tuple((j, mj) for j, mj, _ in blocks),
        residual=float(np.sqrt(np.mean(resid ** 2))),
    )
