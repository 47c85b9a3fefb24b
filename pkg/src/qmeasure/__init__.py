"""Minkowski's question mark function, its Stieltjes measure, and Salem's problem."""
from .contfrac import (
    CFWord,
    Dyadic,
    FareyCell,
    Rational,
    cf_from_rational,
    farey_split,
    gauss_cylinder,
    rational_from_cf,
)
from .errors import BudgetExhausted, DomainError, IllConditionedFit
from .fourier import DecayEstimate, FourierCoefficient, coeff_table, fit_decay, fourier_coeff
from .measure import (
    DimensionEstimate,
    Integrand,
    QuadratureResult,
    gauss_map,
    integrate_mu,
    kinney_dimension,
    mu_interval,
    sample_mu,
)
from .qmark import ApproxReal, box_approx, box_exact, qmark_approx, qmark_exact

__version__ = "0.1.0"
