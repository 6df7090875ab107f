"""Gamma-function kernels, fractional-differencing coefficients and Gauss's 2F1(1).

Everything downstream (closed-form autocovariances, the MA/AR filters used by
the simulator) is built from the handful of functions in this module. Gamma
values are always handled in log space so that lags up to ~1e6 stay finite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

__all__ = [
    "PoleError",
    "DivergenceError",
    "SignedLogGamma",
    "CoeffVector",
    "signed_log_gamma",
    "gamma_ratio",
    "psi_coeffs",
    "pi_coeffs",
    "gauss_2f1_at_one",
]

# ln 2 split so that k * _LN2_HI is exact for |k| < 2**21.
_LN2_HI = 6.93147180369123816490e-01
_LN2_LO = 1.90821492927058770002e-10

# B_{2k} / (2k (2k - 1)) for the Stirling series of log Gamma.
_STIRLING = (
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
)

_DIRECT_MAX = 171.0  # math.gamma overflows just above 171.62
_SHIFT_MAX = 341.0
_STIRLING_MIN = 10.0


class PoleError(ValueError):
    """Raised when Gamma is evaluated at a non-positive integer."""


class DivergenceError(ValueError):
    """Raised when the hypergeometric series at z = 1 does not converge."""


@dataclass(frozen=True)
class SignedLogGamma:
    """``Gamma(x) == sign * exp(log_abs)``."""

    log_abs: float
    sign: int

    @property
    def value(self) -> float:
        return self.sign * math.exp(self.log_abs)


@dataclass(frozen=True)
class CoeffVector:
    """Truncated psi (MA) or pi (AR) weights of ``(1 - B)^{-+d}`` for one season."""

    season: int
    kind: Literal["psi", "pi"]
    d: float
    values: np.ndarray

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, j):
        return self.values[j]


def _log_from_mantissa(m: float, e: int) -> float:
    # log(m * 2**e) with the exponent term carried in two parts; m moved to
    # [1, 2) so that exact powers of two (Gamma(1) = Gamma(2) = 1) give 0.
    m, e = 2.0 * m, e - 1
    return math.fsum((e * _LN2_HI, e * _LN2_LO, math.log(m)))


def _log_gamma_positive(x: float) -> float:
    if x < 1e-300:
        return math.lgamma(x)  # Gamma(x) ~ 1/x overflows
    if x <= _DIRECT_MAX:
        m, e = math.frexp(math.gamma(x))
        return _log_from_mantissa(m, e)
    if x <= _SHIFT_MAX:
        # Gamma(x) = Gamma(y) * y (y+1) ... (x-1), renormalising as we go.
        k = math.ceil(x - _DIRECT_MAX + 1.0)
        y = x - k
        m, e = math.frexp(math.gamma(y))
        for i in range(k):
            m, de = math.frexp(m * (y + i))
            e += de
        return _log_from_mantissa(m, e)
    return math.lgamma(x)


def signed_log_gamma(x: float) -> SignedLogGamma:
    """Return ``log|Gamma(x)|`` together with the sign of ``Gamma(x)``.

    Negative arguments go through the reflection formula
    ``Gamma(x) Gamma(1 - x) = pi / sin(pi x)``.

    Raises:
        PoleError: if ``x`` is zero or a negative integer.
    """
    x = float(x)
    if math.isnan(x):
        raise ValueError("signed_log_gamma: x is NaN")
    if x <= 0.0 and x == math.floor(x):
        raise PoleError(f"Gamma has a pole at x={x:g}")
    if x > 0.0:
        return SignedLogGamma(_log_gamma_positive(x), 1)
    s = math.sin(math.pi * x)
    log_abs = math.log(math.pi) - math.log(abs(s)) - _log_gamma_positive(1.0 - x)
    # Gamma(1 - x) > 0 here, so the sign is that of sin(pi x).
    return SignedLogGamma(log_abs, 1 if s > 0 else -1)


def _stirling_tail(x: float) -> float:
    inv = 1.0 / x
    inv2 = inv * inv
    total = 0.0
    power = inv
    for c in _STIRLING:
        total += c * power
        power *= inv2
    return total


def _log_gamma_ratio_large(a: float, b: float) -> float:
    # log Gamma(a) - log Gamma(b) for a, b >= 10 without forming either term:
    # (a - b)(log a - 1) + (b - 1/2) log(a / b) + tail(a) - tail(b).
    diff = a - b
    return (
        diff * (math.log(a) - 1.0)
        + (b - 0.5) * math.log1p(diff / b)
        + (_stirling_tail(a) - _stirling_tail(b))
    )


def gamma_ratio(a: float, b: float) -> float:
    """``Gamma(a) / Gamma(b)``, exponentiating only the log difference.

    Ratios beyond the float range come back as signed infinity.

    Raises:
        PoleError: if either argument is a non-positive integer.
    """
    a = float(a)
    b = float(b)
    if a == b:
        signed_log_gamma(a)  # still reject poles
        return 1.0
    if a >= _STIRLING_MIN and b >= _STIRLING_MIN:
        sign, log_ratio = 1, _log_gamma_ratio_large(a, b)
    else:
        ga = signed_log_gamma(a)
        gb = signed_log_gamma(b)
        sign, log_ratio = ga.sign * gb.sign, ga.log_abs - gb.log_abs
    try:
        return sign * math.exp(log_ratio)
    except OverflowError:
        return sign * math.inf


def _check_memory(d: float, n_terms: int) -> None:
    if not 0.0 <= d < 0.5:
        raise ValueError(f"memory parameter d={d!r} outside [0, 1/2)")
    if int(n_terms) != n_terms or n_terms < 1:
        raise ValueError(f"n_terms must be a positive integer, got {n_terms!r}")


def _recursion(shift: float, n_terms: int) -> np.ndarray:
    # values[j] = values[j-1] * (j - 1 + shift) / j, values[0] = 1.
    out = np.empty(n_terms)
    out[0] = 1.0
    if n_terms > 1:
        j = np.arange(1, n_terms, dtype=float)
        out[1:] = np.cumprod((j - 1.0 + shift) / j)
    return out


def psi_coeffs(d: float, n_terms: int, season: int = 1) -> CoeffVector:
    """MA(inf) weights ``psi_j = Gamma(j + d) / (Gamma(j + 1) Gamma(d))``, j < n_terms."""
    _check_memory(d, n_terms)
    return CoeffVector(season, "psi", float(d), _recursion(d, int(n_terms)))


def pi_coeffs(d: float, n_terms: int, season: int = 1) -> CoeffVector:
    """AR(inf) weights ``pi_j = Gamma(j - d) / (Gamma(j + 1) Gamma(-d))``, j < n_terms."""
    _check_memory(d, n_terms)
    return CoeffVector(season, "pi", float(d), _recursion(-d, int(n_terms)))


def psi_asymptotic_constant(d: float) -> float:
    """Limit of ``psi_j * j**(1 - d)``, i.e. ``1 / Gamma(d)`` (0 for ``d == 0``)."""
    if d == 0.0:
        return 0.0
    return 1.0 / math.gamma(d)


def gauss_2f1_at_one(a: float, b: float, c: float) -> float:
    """Gauss summation: ``2F1(a, b; c; 1) = G(c) G(c-a-b) / (G(c-a) G(c-b))``.

    A zero upper parameter short-circuits to 1 (the series is the constant term).

    Raises:
        DivergenceError: if ``c - a - b <= 0``.
        PoleError: if ``c``, ``c - a`` or ``c - b`` is a non-positive integer.
    """
    if a == 0.0 or b == 0.0:
        return 1.0
    s = c - a - b
    if s <= 0.0:
        raise DivergenceError(f"2F1(a, b; c; 1) diverges: c - a - b = {s:g} <= 0")
    for arg in (c, c - a, c - b):
        if arg <= 0.0 and arg == math.floor(arg):
            raise PoleError(f"2F1 parameter combination hits a Gamma pole at {arg:g}")
    # Pair the large arguments so gamma_ratio can take its Stirling path.
    ca = gamma_ratio(c, c - a)
    g_s = signed_log_gamma(s)
    g_cb = signed_log_gamma(c - b)
    return ca * g_s.sign * g_cb.sign * math.exp(g_s.log_abs - g_cb.log_abs)
