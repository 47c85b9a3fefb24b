import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from oracles import riemann_stieltjes_bracket
from qmeasure import (
    BudgetExhausted,
    DomainError,
    Dyadic,
    Integrand,
    cf_from_rational,
    gauss_map,
    integrate_mu,
    kinney_dimension,
    mu_interval,
    qmark_exact,
    sample_mu,
)
from qmeasure.measure import kinney_integrand, sample_word

F = Fraction
# Jensen bracket for the Kinney integral: log2(1+x) >= x gives 1/2 from below,
# concavity with mean 1/2 gives log2(3/2) from above
KINNEY_INTEGRAL_BRACKET = (0.5, math.log2(1.5))
DIM_BRACKET = (1 / (2 * math.log2(1.5)), 1.0)


@pytest.mark.parametrize(
    "a, b, mass", [(F(1, 2), F(1), F(1, 2)), (F(0), F(1), F(1)), (F(1, 3), F(1, 2), F(1, 4))]
)
def test_mu_interval(a, b, mass):
    assert mu_interval(a, b) == mass


def test_mu_interval_reversed():
    with pytest.raises(DomainError):
        mu_interval(F(1, 2), F(1, 3))


def test_integrate_constant_is_exact():
    r = integrate_mu(Integrand(lambda x: 1.0, 0.0), 1e-12)
    assert (r.value, r.err_bound, r.cells_used) == (1.0, 0.0, 1)


def test_integrate_identity_is_one_half():
    r = integrate_mu(Integrand(lambda x: x, 1.0), 1e-5)
    assert r.err_bound <= 1e-5
    assert abs(r.value - 0.5) <= r.err_bound


def test_integrate_kinney_integrand_in_bracket():
    r = integrate_mu(kinney_integrand(), 1e-5)
    lo, hi = KINNEY_INTEGRAL_BRACKET
    assert lo - r.err_bound <= r.value <= hi + r.err_bound


def test_kinney_integral_against_riemann_stieltjes_oracle():
    # log2(1+x) is increasing: lower/upper sums over depth-16 cells bracket it
    lo, hi = riemann_stieltjes_bracket(lambda x: math.log2(1 + x), 16)
    r = integrate_mu(kinney_integrand(), 1e-5)
    assert lo - r.err_bound <= r.value <= hi + r.err_bound
    assert hi - lo < 0.05


def test_piecewise_constant_exact_after_depth():
    # constant on each depth-2 cell: breakpoints 1/3, 1/2, 2/3
    cuts = [F(1, 3), F(1, 2), F(2, 3)]
    levels = [0.25, -1.0, 3.0, 7.5]

    def f(x):
        return levels[sum(x > c for c in cuts)]

    def osc(a, b):
        return 0.0 if not any(a < c < b for c in cuts) else 8.5

    r = integrate_mu(Integrand(f, math.inf, osc_cap=8.5, oscillation=osc), 1e-9)
    assert r.err_bound == 0 and r.cells_used == 4
    assert r.value == sum(levels) / 4


def test_err_bound_monotone_in_tol():
    bounds = [integrate_mu(kinney_integrand(), t).err_bound for t in (1e-2, 1e-3, 1e-4, 1e-5)]
    assert all(b2 <= b1 for b1, b2 in zip(bounds, bounds[1:]))


def test_budget_exhausted_carries_partial():
    with pytest.raises(BudgetExhausted) as info:
        integrate_mu(kinney_integrand(), 1e-9, budget=100)
    part = info.value.partial
    assert part.cells_used == 100 and part.err_bound > 1e-9


def test_integrate_domain():
    with pytest.raises(DomainError):
        integrate_mu(kinney_integrand(), 0.0)


def test_kinney_dimension_bracket_and_consistency():
    d1 = kinney_dimension(1e-3)
    d2 = kinney_dimension(1e-5)
    for d in (d1, d2):
        assert DIM_BRACKET[0] <= d.dim <= DIM_BRACKET[1]
        assert d.dim > 0.5
        assert d.dim == 1 / (2 * d.integral.value)
    assert abs(d1.dim - d2.dim) <= d1.err_bound + d2.err_bound


def test_kinney_dimension_budget_partial():
    with pytest.raises(BudgetExhausted) as info:
        kinney_dimension(1e-9, budget=1000)
    assert info.value.partial.dim > 0.5


def test_gauss_map_examples():
    assert gauss_map(F(2, 5)) == F(1, 2)
    assert gauss_map(F(1, 3)) == 0
    assert gauss_map(0) == 0
    assert cf_from_rational(gauss_map(F(3, 10))) == cf_from_rational(F(3, 10))[1:]


@given(st.fractions(min_value=0, max_value=1, max_denominator=10**6))
def test_gauss_map_shifts_digits(x):
    if x == 1:
        return
    w = cf_from_rational(x)
    assert cf_from_rational(gauss_map(x)) == w[1:]


def test_gauss_map_domain():
    with pytest.raises(DomainError):
        gauss_map(F(1))


@pytest.mark.parametrize("x", [F(0), F(1, 2), F(2, 7), F(13, 17), F(99, 100)])
def test_g_invariance_partial_sums(x):
    k_max = 40
    total = sum((qmark_exact(F(1, k)) - qmark_exact(1 / (k + x)) for k in range(1, k_max + 1)), Dyadic(0))
    assert abs((total - qmark_exact(x)).to_fraction()) <= F(1, 2 ** k_max)


def test_sampler_deterministic():
    assert sample_mu(7, 1e-6, 50) == sample_mu(7, 1e-6, 50)
    assert sample_mu(7, 1e-6, 50) != sample_mu(8, 1e-6, 50)


def test_sampler_stops_below_mass_tol():
    rng = random.Random(3)
    for _ in range(200):
        w = sample_word(rng, 1e-4)
        assert 2.0 ** -sum(w) < 1e-4 <= 2.0 ** -sum(w[:-1])


def test_first_digit_marginal():
    rng = random.Random(11)
    m = 40_000
    counts = {}
    for _ in range(m):
        a = sample_word(rng, 0.9)[0]
        counts[a] = counts.get(a, 0) + 1
    for k in range(1, 7):
        p = 2.0 ** -k
        # five standard deviations of a binomial proportion
        assert abs(counts.get(k, 0) / m - p) <= 5 * math.sqrt(p * (1 - p) / m)


def test_pushforward_is_uniform():
    xs = sample_mu(2024, 1e-9, 5000)
    us = sorted(float(qmark_exact(x)) for x in xs)
    m = len(us)
    ks = max(max((i + 1) / m - u, u - i / m) for i, u in enumerate(us))
    assert ks < 1.63 / math.sqrt(m)  # 1% critical value


def test_sampler_domain():
    with pytest.raises(DomainError):
        sample_mu(0, 1.5)
