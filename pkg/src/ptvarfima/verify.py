"""End-to-end self-consistency and Monte-Carlo checks behind ``ptvarfima verify``."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterator

import numpy as np

from . import defaults
from .acvf import (
    acf_exact,
    acvf_exact,
    acvf_hypergeometric,
    acvf_period_two,
    acvf_series,
    decay_law,
)
from .estimate import periodicity_check, sample_periodic_acvf
from .model import PtvArfimaModel
from .simulate import residuals, simulate_ensemble, simulate_path


@dataclass(frozen=True)
class CheckResult:
    name: str
    expected: str
    got: float
    tolerance: float
    passed: bool

    def row(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status}  {self.name:<46} expected {self.expected:<28} got {self.got:<12.4g} tol {self.tolerance:g}"


def _max_rel(pairs) -> float:
    return max(abs(a / b - 1.0) if b != 0 else abs(a) for a, b in pairs)


def hosking_acvf(d: float, h: int, sigma2: float = 1.0) -> float:
    """Stationary ARFIMA(0, d, 0) autocovariance by Hosking's product recursion."""
    g = sigma2 * math.gamma(1.0 - 2.0 * d) / math.gamma(1.0 - d) ** 2
    for k in range(1, h + 1):
        g *= (k - 1 + d) / (k - d)
    return g


def theory_checks(model: PtvArfimaModel, tol: dict[str, float]) -> Iterator[CheckResult]:
    seasons = list(model.seasons())
    err = _max_rel(
        (acvf_hypergeometric(model, i, h), acvf_exact(model, i, h))
        for i in seasons
        for h in range(defaults.MAX_LAG + 1)
    )
    t = tol["exact_vs_hypergeometric"]
    yield CheckResult("closed form vs hypergeometric, h<=100", "max rel err <= tol", err, t, err <= t)

    err = _max_rel(
        (acvf_series(model, i, h, defaults.SERIES_TERMS), acvf_exact(model, i, h))
        for i in seasons
        for h in range(21)
    )
    t = tol["series_fig1"]
    yield CheckResult("closed form vs 1e6-term series, h<=20", "max rel err <= tol", err, t, err <= t)

    d = model.d[0]
    hosking = PtvArfimaModel(1, (d,), (1.0,))
    if d > 0:
        err = abs(acf_exact(hosking, 1, 1) / (d / (1 - d)) - 1)
        t = tol["hosking"]
        yield CheckResult(f"Hosking rho(1) = d/(1-d), d={d:g}", "rel err <= tol", err, t, err <= t)
    err = _max_rel((acvf_exact(hosking, 1, h), hosking_acvf(d, h)) for h in range(51))
    t = tol["hosking"]
    yield CheckResult(f"Hosking gamma(h), h<=50, d={d:g}", "max rel err <= tol", err, t, err <= t)

    if model.period == 2:
        err = _max_rel(
            (acvf_period_two(model, i, h), acvf_exact(model, i, h))
            for i in seasons
            for h in range(201)
        )
        t = tol["period_two_branches"]
        yield CheckResult("odd/even p=2 branches vs general form", "max rel err <= tol", err, t, err <= t)

    for base, key in ((10**4, "asymptotic_1e4"), (10**6, "asymptotic_1e6")):
        worst = 0.0
        for i in seasons:
            for k in range(model.period):
                law = decay_law(model, i, k)
                if law.C == 0.0:
                    continue
                h = base + (k - base) % model.period
                worst = max(worst, abs(acvf_exact(model, i, h) * h**law.alpha / law.C - 1))
        t = tol[key]
        yield CheckResult(f"gamma(h) h^alpha / C -> 1 at h~{base:.0e}", "|ratio - 1| <= tol", worst, t, worst <= t)


def monte_carlo_checks(
    model: PtvArfimaModel,
    tol: dict[str, float],
    n: int,
    truncation: int,
    replicates: int,
    seed: int,
) -> Iterator[CheckResult]:
    ens = simulate_ensemble(model, n, truncation, None, replicates, seed)
    X = ens.values()
    L = defaults.MC_MAX_LAG
    g = np.stack([sample_periodic_acvf(x, model.period, L, "zero").gamma for x in X])
    mean = g.mean(axis=0)
    se = g.std(axis=0, ddof=1) / math.sqrt(len(g))
    z = max(
        abs(mean[i - 1, h] - acvf_exact(model, i, h)) / se[i - 1, h]
        for i in model.seasons()
        for h in range(L + 1)
    )
    t = tol["monte_carlo_sigma"]
    yield CheckResult(f"ensemble gamma_hat vs exact, h<={L}", "max |z| <= tol", z, t, z <= t)

    t = tol["gladyshev_sigma"]
    rep = periodicity_check(X, model.period, threshold=t)
    yield CheckResult(
        f"periodicity check at p={model.period}", "consistent", rep.max_abs_z, t, rep.consistent
    )
    if len(set(zip(model.d, model.sigma2))) > 1:
        wrong = model.period + 1
        rep = periodicity_check(X, wrong, threshold=t)
        yield CheckResult(
            f"periodicity check at p={wrong}", "inconsistent", rep.max_abs_z, t, not rep.consistent
        )

    path = simulate_path(model, defaults.INVERSION_N, truncation, None, seed)
    eps_hat = residuals(model, path, truncation)
    eps = path.eps[truncation:]
    corr = float(np.corrcoef(eps_hat, eps)[0, 1])
    t = tol["inversion_corr"]
    yield CheckResult("AR inversion corr(eps_hat, eps)", ">= tol", corr, t, corr >= t)


def run_checks(
    model: PtvArfimaModel = defaults.FIG1,
    tolerances: dict[str, float] | None = None,
    monte_carlo: bool = True,
    n: int = defaults.N,
    truncation: int = defaults.TRUNCATION,
    replicates: int = defaults.REPLICATES,
    seed: int = defaults.SEED,
    progress: Callable[[CheckResult], None] | None = None,
) -> list[CheckResult]:
    tol = dict(defaults.TOLERANCES)
    if tolerances:
        unknown = set(tolerances) - set(tol)
        if unknown:
            raise KeyError(f"unknown tolerance name(s): {sorted(unknown)}")
        tol.update(tolerances)
    results = []
    sources = [theory_checks(model, tol)]
    if monte_carlo:
        sources.append(monte_carlo_checks(model, tol, n, truncation, replicates, seed))
    for src in sources:
        for res in src:
            results.append(res)
            if progress:
                progress(res)
    return results
