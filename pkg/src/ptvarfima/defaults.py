"""Every default the CLI and the verification pipeline rely on, in one place.

============================  ==========  ==========================================
name                          value       meaning
============================  ==========  ==========================================
truncation                    5000        MA/AR weights kept (M); bias ~ M**(2d-1)
burn_in                       = M         discarded leading outputs
n                             4096        path length for Monte-Carlo checks
replicates                    500         ensemble size R
seed                          0           master seed
max_lag                       100         lags in tables and figures
series_terms                  1_000_000   terms in the brute-force MA product sum
tol.exact_vs_hypergeometric   1e-12       relative
tol.series_fig1               0.05        relative, d = (0.3, 0.4), h <= 20
tol.series_small_d            1e-4        relative, d = (0.05, 0.10), h <= 20
tol.hosking                   1e-12       relative
tol.period_two_branches       1e-12       relative
tol.asymptotic_1e4            0.01        |gamma h^alpha / C - 1| at h ~ 1e4
tol.asymptotic_1e6            0.001       same at h ~ 1e6
tol.monte_carlo_sigma         3.0         ensemble standard errors
tol.gladyshev_sigma           3.0         |z| threshold of the periodicity check
tol.inversion_corr            0.99        minimum corr(eps_hat, eps)
============================  ==========  ==========================================

The M default is a compromise for desk-scale runs. The variance lost to
truncation is about ``M**(2d-1) / ((1-2d) Gamma(d)**2)``; at ``d = 0.4`` and
``M = 5000`` that is roughly 9% of the variance, so raise M as d nears 1/2.
"""

from __future__ import annotations

from .model import PtvArfimaModel

TRUNCATION = 5000
N = 4096
REPLICATES = 500
SEED = 0
MAX_LAG = 100
SERIES_TERMS = 1_000_000
MC_MAX_LAG = 5
INVERSION_N = 15000

TOLERANCES: dict[str, float] = {
    "exact_vs_hypergeometric": 1e-12,
    "series_fig1": 0.05,
    "series_small_d": 1e-4,
    "hosking": 1e-12,
    "period_two_branches": 1e-12,
    "asymptotic_1e4": 0.01,
    "asymptotic_1e6": 0.001,
    "monte_carlo_sigma": 3.0,
    "gladyshev_sigma": 3.0,
    "inversion_corr": 0.99,
}

FIG1 = PtvArfimaModel(2, (0.3, 0.4), (1.0, 1.0))
FIG2 = PtvArfimaModel(2, (0.09, 0.49), (1.0, 1.0))
SMALL_D = PtvArfimaModel(2, (0.05, 0.10), (1.0, 1.0))
