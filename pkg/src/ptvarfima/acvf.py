"""Periodic autocovariance and autocorrelation of the PtvARFIMA process.

Lag convention: ``gamma_i(h) = Cov(X_t, X_{t+h})`` for any ``t`` in season
``i``. The second factor therefore carries the memory parameter of season
``i + h``. With ``a = d_i``, ``b = d_{i+h}``::

    gamma_i(h) = sigma_i^2 * G(1-a-b) G(b+h) / (G(b) G(1-b) G(1+h-a))

The same quantity is available three ways: the Gamma closed form
(:func:`acvf_exact`), Gauss's hypergeometric sum (:func:`acvf_hypergeometric`)
and a brute-force product sum over MA weights (:func:`acvf_series`). The last
one shares no code with the other two and serves as their oracle.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Literal, TextIO

import numpy as np

from . import special_functions as sf
from .model import PtvArfimaModel, season_of

__all__ = [
    "DecayLaw",
    "AcvfTable",
    "acvf_exact",
    "acvf_series",
    "acvf_hypergeometric",
    "acvf_period_two",
    "acf_exact",
    "acvf_asymptotic",
    "decay_law",
    "acvf_table",
    "acvf_signed",
    "METHODS",
]

Method = Literal["exact", "series", "asymptotic", "hypergeometric"]
METHODS: tuple[str, ...] = ("exact", "series", "asymptotic", "hypergeometric")
DEFAULT_SERIES_TERMS = 1_000_000


@dataclass(frozen=True)
class DecayLaw:
    """``gamma_i(h) ~ C * h**(-alpha)`` along lags ``h == residue (mod p)``."""

    season: int
    residue: int
    C: float
    alpha: float


def _pair(model: PtvArfimaModel, i: int, h: int) -> tuple[float, float]:
    return model.d_of(i), model.d_at_offset(i, h)


def _check_lag(h: int) -> int:
    if int(h) != h or h < 0:
        raise ValueError(f"lag must be a non-negative integer, got {h!r}")
    return int(h)


def _log_gamma(x: float) -> float:
    # all arguments reaching here are positive for admissible d
    return sf.signed_log_gamma(x).log_abs


def _leading_constant(sigma2: float, a: float, b: float) -> float:
    if b == 0.0:
        return 0.0
    return sigma2 * math.exp(_log_gamma(1.0 - a - b) - _log_gamma(b) - _log_gamma(1.0 - b))


def acvf_exact(model: PtvArfimaModel, i: int, h: int) -> float:
    """Closed-form ``gamma_i(h)`` for ``h >= 0``."""
    h = _check_lag(h)
    a, b = _pair(model, i, h)
    s2 = model.sigma2_of(i)
    if b == 0.0:
        # white-noise partner season: only the j = 0 weight is non-zero
        return s2 if h == 0 else 0.0
    return _leading_constant(s2, a, b) * sf.gamma_ratio(b + h, 1.0 + h - a)


@lru_cache(maxsize=32)
def _psi_array(d: float, n: int) -> np.ndarray:
    arr = sf.psi_coeffs(d, n).values
    arr.setflags(write=False)
    return arr


def acvf_series(
    model: PtvArfimaModel,
    i: int,
    h: int,
    n_terms: int = DEFAULT_SERIES_TERMS,
    seasonal_noise: bool = False,
) -> float:
    """Truncated MA product sum ``sigma_i^2 * sum_{j<n_terms} psi_j(d_i) psi_{j+h}(d_{i+h})``.

    The truncation error decays like ``n_terms**(d_i + d_{i+h} - 1)``.

    Args:
        seasonal_noise: weight term ``j`` by the variance of the season of
            ``eps_{t-j}`` instead of the single factor ``sigma_i^2``. Off by
            default; the closed forms correspond to ``False``.
    """
    h = _check_lag(h)
    if int(n_terms) != n_terms or n_terms < 1:
        raise ValueError(f"n_terms must be a positive integer, got {n_terms!r}")
    n_terms = int(n_terms)
    a, b = _pair(model, i, h)
    left = _psi_array(a, n_terms)
    right = _psi_array(b, n_terms + h)[h:]
    if not seasonal_noise:
        return model.sigma2_of(i) * float(np.dot(left, right))
    p = model.period
    sig = np.asarray(model.sigma2)
    # season of t - j is i - j (mod p)
    weights = sig[(i - 1 - np.arange(n_terms)) % p]
    return float(np.dot(left * weights, right))


def acvf_hypergeometric(model: PtvArfimaModel, i: int, h: int) -> float:
    """``sigma_i^2 * psi_h(d_{i+h}) * 2F1(d_i, d_{i+h} + h; 1 + h; 1)``."""
    h = _check_lag(h)
    a, b = _pair(model, i, h)
    s2 = model.sigma2_of(i)
    if b == 0.0:
        prefactor = 1.0 if h == 0 else 0.0
    else:
        prefactor = sf.gamma_ratio(b + h, h + 1.0) * math.exp(-_log_gamma(b))
    return s2 * prefactor * sf.gauss_2f1_at_one(a, b + h, 1.0 + h)


def acvf_period_two(model: PtvArfimaModel, i: int, h: int) -> float:
    """The odd/even split of ``gamma_i(h)`` written out for period two."""
    if model.period != 2:
        raise ValueError("acvf_period_two requires a period-2 model")
    h = _check_lag(h)
    di = model.d_of(i)
    s2 = model.sigma2_of(i)
    if h % 2:
        dn = model.d_of(3 - i)
        num = (1.0 - di - dn, dn + h)
        den = (dn, 1.0 - dn, 1.0 + h - di)
    else:
        num = (1.0 - 2.0 * di, di + h)
        den = (di, 1.0 - di, 1.0 + h - di)
    if den[0] == 0.0:
        return s2 if h == 0 else 0.0
    log_val = sum(_log_gamma(x) for x in num) - sum(_log_gamma(x) for x in den)
    return s2 * math.exp(log_val)


def acf_exact(model: PtvArfimaModel, i: int, h: int) -> float:
    """Periodic autocorrelation ``gamma_i(h) / gamma_i(0)`` in closed form."""
    h = _check_lag(h)
    if h == 0:
        return 1.0
    a, b = _pair(model, i, h)
    if b == 0.0:
        return 0.0
    log_const = (
        2.0 * _log_gamma(1.0 - a)
        + _log_gamma(1.0 - a - b)
        - _log_gamma(1.0 - 2.0 * a)
        - _log_gamma(b)
        - _log_gamma(1.0 - b)
    )
    return math.exp(log_const) * sf.gamma_ratio(b + h, 1.0 + h - a)


def decay_law(model: PtvArfimaModel, i: int, k: int) -> DecayLaw:
    """Hyperbolic decay constant and exponent for season ``i``, lags ``h == k (mod p)``."""
    if not 0 <= k < model.period:
        raise ValueError(f"residue k={k} outside [0, {model.period})")
    a, b = _pair(model, i, k)
    return DecayLaw(i, k, _leading_constant(model.sigma2_of(i), a, b), 1.0 - a - b)


def acvf_asymptotic(model: PtvArfimaModel, i: int, h: int) -> float:
    """Large-lag approximation ``C * h**(-alpha)``; defined for ``h >= 1``."""
    h = _check_lag(h)
    if h < 1:
        raise ValueError("asymptotic autocovariance is defined for h >= 1 only")
    law = decay_law(model, i, h % model.period)
    return law.C * h ** (-law.alpha)


def acvf_signed(model: PtvArfimaModel, i: int, h: int) -> float:
    """``Cov(X_t, X_{t+h})`` for any integer ``h``, using covariance symmetry."""
    if h >= 0:
        return acvf_exact(model, i, h)
    return acvf_exact(model, season_of(i + h, model.period), -h)


@dataclass
class AcvfTable:
    """``values[i-1, k]`` holds ``gamma_i(lags[k])``; ``rho`` likewise when requested."""

    model: PtvArfimaModel
    lags: np.ndarray
    values: np.ndarray
    method: str
    n_terms: int | None = None
    rho: np.ndarray | None = field(default=None)

    @property
    def max_lag(self) -> int:
        return int(self.lags[-1])

    def season(self, i: int) -> np.ndarray:
        return self.values[i - 1]

    def write_csv(self, fh: TextIO) -> None:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["season", "lag", "gamma", "rho", "method"])
        for i in self.model.seasons():
            for k, h in enumerate(self.lags):
                rho = "" if self.rho is None else _fmt(self.rho[i - 1, k])
                w.writerow([i, int(h), _fmt(self.values[i - 1, k]), rho, self.method])

    def to_csv(self) -> str:
        buf = io.StringIO()
        self.write_csv(buf)
        return buf.getvalue()


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def acvf_table(
    model: PtvArfimaModel,
    max_lag: int,
    method: Method = "exact",
    n_terms: int | None = None,
    acf: bool = False,
    min_lag: int = 0,
) -> AcvfTable:
    """Evaluate ``gamma_i(h)`` for every season and ``min_lag <= h <= max_lag``.

    With ``acf=True`` the table also carries ``rho_i(h)``: the closed form for
    ``exact``, otherwise the method's own ``gamma_i(h) / gamma_i(0)`` (the
    asymptotic method borrows the exact variance, having none of its own).
    """
    if int(max_lag) != max_lag or max_lag < 0:
        raise ValueError(f"max_lag must be a non-negative integer, got {max_lag!r}")
    if not 0 <= min_lag <= max_lag:
        raise ValueError(f"min_lag={min_lag} must lie in [0, max_lag]")
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; choose from {METHODS}")
    if method == "asymptotic" and min_lag < 1:
        raise ValueError("asymptotic method is defined for h >= 1; pass min_lag >= 1")
    if method == "series" and n_terms is None:
        n_terms = DEFAULT_SERIES_TERMS

    if method == "exact":
        fn = acvf_exact
    elif method == "hypergeometric":
        fn = acvf_hypergeometric
    elif method == "asymptotic":
        fn = acvf_asymptotic
    else:
        def fn(m, i, h):
            return acvf_series(m, i, h, n_terms)

    lags = np.arange(min_lag, int(max_lag) + 1)
    p = model.period
    values = np.empty((p, len(lags)))
    for i in model.seasons():
        for k, h in enumerate(lags):
            values[i - 1, k] = fn(model, i, int(h))

    rho = None
    if acf:
        rho = np.empty_like(values)
        for i in model.seasons():
            if method == "exact":
                rho[i - 1] = [acf_exact(model, i, int(h)) for h in lags]
            else:
                if method == "asymptotic":
                    var = acvf_exact(model, i, 0)
                elif min_lag == 0:
                    var = values[i - 1, 0]
                else:
                    var = fn(model, i, 0)
                rho[i - 1] = values[i - 1] / var
    return AcvfTable(model, lags, values, method, n_terms if method == "series" else None, rho)
