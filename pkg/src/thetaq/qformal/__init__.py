"""Exact truncated q-series engine (Q = q**(1/4), Gaussian-rational coefficients)."""

from .checks import (
    DEFAULT_ORDERS,
    EXACT_CHECKS,
    ExactIdentity,
    ExactReport,
    MonomialFactor,
    PochFactor,
    Term,
    ThetaFactor,
    Witness,
    check_identities,
    exact_identities,
    verify_doubling,
    verify_prop_t2,
    verify_prop_t3,
    verify_prop_t4_ssn,
    verify_quarter_pi_squared,
    verify_riemann_L,
    verify_shift_half_period,
    verify_shift_half_pi,
    verify_triple_product,
)
from .expand import pochhammer_qseries, qpoch_series, theta1_quarter_pi_squared, theta_qseries, triple_sum_series
from .gaussian import GaussianRational, i_power
from .series import LaurentPoly, QSeries, qs_add, qs_mul, qs_neg, qs_scale, qs_sub
