"""Compiled Stern-Brocot sweeps for the Fourier coefficients.

Every sweep refines the tree depth-first and keeps a cell as a leaf once
``2**-m * min(2, pi * nref * diam) <= eps``.  Child bounds are at most half
the parent's, so the leaves of a threshold sweep are exactly the frontier a
worst-first refinement reaches when it stops at ``eps``.
"""
from __future__ import annotations

import math

import numba
import numpy as np

STACK = 8192
# diam = 1/(q q2); leaves are bucketed by log2(q q2) at this many slots per octave
BUCKETS_PER_OCTAVE = 32
N_BUCKETS = 64 * BUCKETS_PER_OCTAVE + 1
Q_LIMIT = 1 << 30

# status codes
OK = 0
OVER_BUDGET = 1
OVERFLOW = 2


@numba.njit(cache=True)
def _bucket(qq):
    return int(math.log2(qq) * BUCKETS_PER_OCTAVE)


@numba.njit(cache=True)
def sweep_buckets(nref, eps, budget):
    """Leaf count and per-bucket sums of mass and mass*diam."""
    w_sum = np.zeros(N_BUCKETS)
    wd_sum = np.zeros(N_BUCKETS)
    st = np.empty((STACK, 5), np.int64)
    st[0, 0] = 0
    st[0, 1] = 1
    st[0, 2] = 1
    st[0, 3] = 1
    st[0, 4] = 0
    top = 1
    leaves = 0
    while top > 0:
        top -= 1
        p = st[top, 0]
        q = st[top, 1]
        p2 = st[top, 2]
        q2 = st[top, 3]
        m = st[top, 4]
        qq = float(q) * float(q2)
        w = math.ldexp(1.0, -m)
        b = w * min(2.0, math.pi * nref / qq)
        if b > eps:
            if q + q2 > Q_LIMIT or top + 2 > STACK:
                return leaves, OVERFLOW, w_sum, wd_sum
            st[top, 2] = p + p2
            st[top, 3] = q + q2
            st[top, 4] = m + 1
            st[top + 1, 0] = p + p2
            st[top + 1, 1] = q + q2
            st[top + 1, 2] = p2
            st[top + 1, 3] = q2
            st[top + 1, 4] = m + 1
            top += 2
        else:
            leaves += 1
            if leaves > budget:
                return leaves, OVER_BUDGET, w_sum, wd_sum
            k = _bucket(qq)
            w_sum[k] += w
            wd_sum[k] += w / qq
    return leaves, OK, w_sum, wd_sum


@numba.njit(cache=True, nogil=True)
def sweep_direct(n, eps, budget):
    """Mediant-rule sum of exp(-2 pi i n x) dmu for one frequency.

    The phase is reduced exactly as ``(n * p) mod q`` (nonnegative residue)
    before division.
    Returns ``(re, im, bound, leaves, status)``.
    """
    nabs = abs(n)
    st = np.empty((STACK, 5), np.int64)
    st[0, 0] = 0
    st[0, 1] = 1
    st[0, 2] = 1
    st[0, 3] = 1
    st[0, 4] = 0
    top = 1
    leaves = 0
    re = 0.0
    im = 0.0
    bound = 0.0
    while top > 0:
        top -= 1
        p = st[top, 0]
        q = st[top, 1]
        p2 = st[top, 2]
        q2 = st[top, 3]
        m = st[top, 4]
        qq = float(q) * float(q2)
        w = math.ldexp(1.0, -m)
        b = w * min(2.0, math.pi * nabs / qq)
        if b > eps:
            if q + q2 > Q_LIMIT or top + 2 > STACK:
                return re, im, bound, leaves, OVERFLOW
            st[top, 2] = p + p2
            st[top, 3] = q + q2
            st[top, 4] = m + 1
            st[top + 1, 0] = p + p2
            st[top + 1, 1] = q + q2
            st[top + 1, 2] = p2
            st[top + 1, 3] = q2
            st[top + 1, 4] = m + 1
            top += 2
        else:
            leaves += 1
            if leaves > budget:
                return re, im, bound, leaves, OVER_BUDGET
            mp = p + p2
            mq = q + q2
            r = ((n % mq) * mp) % mq
            theta = 2.0 * math.pi * (r / mq)
            re += w * math.cos(theta)
            im -= w * math.sin(theta)
            bound += b
    return re, im, bound, leaves, OK


@numba.njit(cache=True)
def sweep_moments(nref, eps, nbins, order):
    """Binned local moments of mu over the threshold partition.

    Row k of the result holds, per uniform bin j of width 1/nbins,
    ``sum 2**-m * (nbins * (x - centre_j))**k`` over leaf mediants x.
    """
    mom = np.zeros((order + 1, nbins))
    st = np.empty((STACK, 5), np.int64)
    st[0, 0] = 0
    st[0, 1] = 1
    st[0, 2] = 1
    st[0, 3] = 1
    st[0, 4] = 0
    top = 1
    leaves = 0
    while top > 0:
        top -= 1
        p = st[top, 0]
        q = st[top, 1]
        p2 = st[top, 2]
        q2 = st[top, 3]
        m = st[top, 4]
        qq = float(q) * float(q2)
        w = math.ldexp(1.0, -m)
        b = w * min(2.0, math.pi * nref / qq)
        if b > eps:
            st[top, 2] = p + p2
            st[top, 3] = q + q2
            st[top, 4] = m + 1
            st[top + 1, 0] = p + p2
            st[top + 1, 1] = q + q2
            st[top + 1, 2] = p2
            st[top + 1, 3] = q2
            st[top + 1, 4] = m + 1
            top += 2
        else:
            leaves += 1
            mp = p + p2
            mq = q + q2
            # exact bin index and offset: x*nbins = (mp*nbins)/mq
            j, rem = divmod(mp * nbins, mq)
            delta = rem / mq - 0.5
            t = w
            for k in range(order + 1):
                mom[k, j] += t
                t *= delta
    return mom, leaves
