"""Periodically time-varying fractional (PtvARFIMA) processes.

Closed-form periodic autocovariances and autocorrelations, seeded simulation,
AR inversion and periodic sample moments.
"""

__version__ = "0.1.0"

from .acvf import (
    AcvfTable,
    DecayLaw,
    acf_exact,
    acvf_asymptotic,
    acvf_exact,
    acvf_hypergeometric,
    acvf_series,
    acvf_signed,
    acvf_table,
    decay_law,
)
from .estimate import periodicity_check, sample_periodic_acf, sample_periodic_acvf
from .model import PtvArfimaModel, d_at_offset, new_model, season_of
from .simulate import residuals, simulate_ensemble, simulate_path
from .special_functions import (
    gamma_ratio,
    gauss_2f1_at_one,
    pi_coeffs,
    psi_coeffs,
    signed_log_gamma,
)
