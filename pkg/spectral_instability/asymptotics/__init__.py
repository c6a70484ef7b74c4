"""
Closed-form asymptotics: saddle point, phase, growth rate, Weyl law and thresholds.
"""

from .params import THETA_CONSTRAINT, OscillatorParams
from .phase import (
    branch_points,
    laplace_integral,
    laplace_leading_constant,
    laplace_prefactor,
    phi,
    phi_prime,
    phi_second_derivative,
    saddle_x,
    wkb_action,
)
from .rates import (
    AsymptoticReport,
    asymptotic_report,
    davies_kuijlaars_c1,
    h_of_modulus,
    rate_c,
    rate_threshold,
    semigroup_threshold,
    weyl_coefficient,
    weyl_exponent,
    weyl_modulus,
)

__all__ = [
    "THETA_CONSTRAINT",
    "AsymptoticReport",
    "OscillatorParams",
    "asymptotic_report",
    "branch_points",
    "davies_kuijlaars_c1",
    "h_of_modulus",
    "laplace_integral",
    "laplace_leading_constant",
    "laplace_prefactor",
    "phi",
    "phi_prime",
    "phi_second_derivative",
    "rate_c",
    "rate_threshold",
    "saddle_x",
    "semigroup_threshold",
    "weyl_coefficient",
    "weyl_exponent",
    "weyl_modulus",
]
