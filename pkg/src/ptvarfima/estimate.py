"""Periodic sample moments and a periodicity (Gladyshev) diagnostic.

The first observation of a series belongs to season ``start_season`` (1 by
default); seasons then advance cyclically.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Literal, TextIO

import numpy as np

__all__ = [
    "PeriodicSampleStats",
    "PeriodicityReport",
    "PairDiscrepancy",
    "InsufficientDataError",
    "ZeroVarianceError",
    "sample_periodic_acvf",
    "sample_periodic_acf",
    "periodicity_check",
    "read_series_csv",
]

Centering = Literal["per_season_mean", "zero"]


class InsufficientDataError(ValueError):
    pass


class ZeroVarianceError(ValueError):
    pass


@dataclass(frozen=True)
class PeriodicSampleStats:
    """Sample moments by season.

    ``gamma[i-1, h]`` estimates ``Cov(X_t, X_{t+h})`` over ``t`` in season ``i``
    and was averaged over ``n_pairs[i-1, h]`` products. ``counts[i-1]`` is the
    number of observations falling in season ``i``.
    """

    period: int
    means: np.ndarray
    gamma: np.ndarray
    n_pairs: np.ndarray
    counts: np.ndarray
    centering: str
    rho: np.ndarray | None = None

    @property
    def max_lag(self) -> int:
        return self.gamma.shape[1] - 1

    def write_csv(self, fh: TextIO) -> None:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["season", "lag", "gamma_hat", "rho_hat", "n_pairs"])
        for i in range(self.period):
            for h in range(self.max_lag + 1):
                rho = "" if self.rho is None else format(float(self.rho[i, h]), ".17g")
                w.writerow(
                    [i + 1, h, format(float(self.gamma[i, h]), ".17g"), rho, int(self.n_pairs[i, h])]
                )


def _season_index(n: int, p: int, start_season: int) -> np.ndarray:
    return (np.arange(n) + start_season - 1) % p


def sample_periodic_acvf(
    data,
    p: int,
    max_lag: int,
    centering: Centering = "per_season_mean",
    start_season: int = 1,
) -> PeriodicSampleStats:
    """Per-season sample autocovariances with a pair-count divisor.

    ``gamma_hat_i(h)`` is the mean of ``(X_t - mu_i)(X_{t+h} - mu_{s(t+h)})``
    over every ``t`` in season ``i`` with ``t + h`` still inside the series.
    With ``centering="zero"`` the means are taken as 0.

    Raises:
        InsufficientDataError: if ``len(data) < p * (max_lag + 2)``.
    """
    if int(p) != p or p < 1:
        raise ValueError(f"period must be a positive integer, got {p!r}")
    if int(max_lag) != max_lag or max_lag < 0:
        raise ValueError(f"max_lag must be a non-negative integer, got {max_lag!r}")
    if centering not in ("per_season_mean", "zero"):
        raise ValueError(f"unknown centering {centering!r}")
    x = np.asarray(data, dtype=float)
    if x.ndim != 1:
        raise ValueError("data must be one-dimensional")
    n = len(x)
    p, max_lag = int(p), int(max_lag)
    if n < p * (max_lag + 2):
        raise InsufficientDataError(
            f"need at least p*(max_lag+2) = {p * (max_lag + 2)} observations, got {n}"
        )
    season = _season_index(n, p, start_season)
    counts = np.bincount(season, minlength=p)
    if centering == "per_season_mean":
        means = np.bincount(season, weights=x, minlength=p) / counts
    else:
        means = np.zeros(p)
    dev = x - means[season]

    gamma = np.empty((p, max_lag + 1))
    pairs = np.empty((p, max_lag + 1), dtype=int)
    for h in range(max_lag + 1):
        prod = dev[: n - h] * dev[h:]
        s = season[: n - h]
        pairs[:, h] = np.bincount(s, minlength=p)
        gamma[:, h] = np.bincount(s, weights=prod, minlength=p) / pairs[:, h]
    return PeriodicSampleStats(p, means, gamma, pairs, counts, centering)


def sample_periodic_acf(stats: PeriodicSampleStats) -> PeriodicSampleStats:
    """Attach ``rho_hat_i(h) = gamma_hat_i(h) / gamma_hat_i(0)``.

    Raises:
        ZeroVarianceError: if some season has ``gamma_hat_i(0) <= 0``.
    """
    var = stats.gamma[:, 0]
    bad = np.flatnonzero(~(var > 0))
    if bad.size:
        raise ZeroVarianceError(f"season(s) {list(bad + 1)} have zero sample variance")
    rho = stats.gamma / var[:, None]
    rho[:, 0] = 1.0
    return replace(stats, rho=rho)


@dataclass(frozen=True)
class PairDiscrepancy:
    """Standardised difference between a moment at ``(t, t2)`` and at ``(t + p, t2 + p)``.

    ``kind == "mean"`` compares ``E X_t`` with ``E X_{t+p}`` (then ``t2 == t``).
    """

    kind: str
    t: int
    t2: int
    first: float
    shifted: float
    z: float


@dataclass(frozen=True)
class PeriodicityReport:
    p_candidate: int
    threshold: float
    mode: str
    rows: tuple[PairDiscrepancy, ...]

    @property
    def max_abs_z(self) -> float:
        return max(abs(r.z) for r in self.rows)

    @property
    def consistent(self) -> bool:
        return self.max_abs_z <= self.threshold

    def summary(self) -> str:
        verdict = "consistent" if self.consistent else "inconsistent"
        return (
            f"period {self.p_candidate}: {verdict} "
            f"(max |z| = {self.max_abs_z:.3f}, threshold {self.threshold:g}, {self.mode})"
        )


def _pair_grid(p: int, n_pairs: int) -> list[tuple[int, int]]:
    # (t, t') offsets from the anchor: every start in one cycle, lags 0, 1, 2, ...
    grid = []
    lag = 0
    while len(grid) < n_pairs:
        for t in range(p):
            grid.append((t, t + lag))
            if len(grid) == n_pairs:
                break
        lag += 1
    return grid


def _z(diff_samples: np.ndarray) -> float:
    # z statistic for the mean of a set of (approximately) independent samples
    m = float(diff_samples.mean())
    sd = float(diff_samples.std(ddof=1))
    if sd == 0.0:
        return 0.0 if m == 0.0 else math.copysign(math.inf, m)
    return m / (sd / math.sqrt(len(diff_samples)))


def _discrepancies(
    units: np.ndarray, p: int, grid: list[tuple[int, int]], batches: int | None
) -> list[PairDiscrepancy]:
    # units: (K, W) array, rows are exchangeable copies of a window
    def reduce(v: np.ndarray) -> np.ndarray:
        if batches is None:
            return v
        k = len(v) // batches
        return v[: k * batches].reshape(batches, k).mean(axis=1)

    centred = units - units.mean(axis=0)
    rows = []
    for t in range(p):
        d = units[:, t] - units[:, t + p]
        rows.append(
            PairDiscrepancy(
                "mean", t, t, float(units[:, t].mean()), float(units[:, t + p].mean()), _z(reduce(d))
            )
        )
    for t, t2 in grid:
        a = centred[:, t] * centred[:, t2]
        b = centred[:, t + p] * centred[:, t2 + p]
        rows.append(
            PairDiscrepancy("cov", t, t2, float(a.mean()), float(b.mean()), _z(reduce(a - b)))
        )
    return rows


def periodicity_check(
    data,
    p_candidate: int,
    n_pairs: int = 10,
    threshold: float = 3.0,
    block_cycles: int = 4,
    batches: int = 20,
    anchor: int = 0,
) -> PeriodicityReport:
    """Test ``E X_{t+p} = E X_t`` and ``Cov(X_{t+p}, X_{t'+p}) = Cov(X_t, X_{t'})``.

    ``data`` is either an ``(R, n)`` ensemble of independent paths or a single
    path. For an ensemble, moments at fixed times are estimated across
    replicates, starting at column ``anchor``. A single path is cut into
    consecutive blocks of ``block_cycles * p_candidate`` points that act as
    replicates; their standard errors come from ``batches`` batch means
    because blocks of a long-memory series are far from independent. The
    block construction only sees true periods that divide the block length.

    Each comparison yields a z statistic; the candidate is flagged
    inconsistent when any ``|z|`` exceeds ``threshold``.
    """
    if int(p_candidate) != p_candidate or p_candidate < 1:
        raise ValueError(f"p_candidate must be a positive integer, got {p_candidate!r}")
    if n_pairs < 1:
        raise ValueError("n_pairs must be >= 1")
    p = int(p_candidate)
    grid = _pair_grid(p, int(n_pairs))
    span = max(t2 for _, t2 in grid) + p + 1

    x = np.asarray(data, dtype=float)
    if x.ndim == 2:
        if x.shape[0] < 3:
            raise InsufficientDataError("ensemble mode needs at least 3 replicates")
        if x.shape[1] < anchor + span:
            raise InsufficientDataError(
                f"paths of length {x.shape[1]} too short for {n_pairs} pairs at period {p}"
            )
        units = x[:, anchor : anchor + span]
        rows = _discrepancies(units, p, grid, None)
        return PeriodicityReport(p, float(threshold), "ensemble", tuple(rows))
    if x.ndim != 1:
        raise ValueError("data must be a path or an (R, n) ensemble")

    width = max(p * int(block_cycles), span)
    width = -(-width // p) * p
    n_blocks = len(x) // width
    if n_blocks < 2 * batches:
        raise InsufficientDataError(
            f"single-path mode needs {2 * batches} blocks of {width} points, "
            f"got {n_blocks}"
        )
    units = x[: n_blocks * width].reshape(n_blocks, width)
    rows = _discrepancies(units, p, grid, int(batches))
    return PeriodicityReport(p, float(threshold), "blocks", tuple(rows))


def read_series_csv(path: str | Path) -> tuple[np.ndarray, int | None]:
    """Load a path CSV (``t,season,x[,eps]``) or a single numeric column.

    Returns the values and, for path CSVs, the season of the first row.
    """
    with open(path, newline="") as fh:
        rows = [r for r in csv.reader(fh) if r and any(c.strip() for c in r)]
    if not rows:
        raise InsufficientDataError(f"{path}: no data")
    header = [c.strip() for c in rows[0]]
    if "x" in header:
        ix = header.index("x")
        values = np.array([float(r[ix]) for r in rows[1:]])
        start = int(rows[1][header.index("season")]) if "season" in header and len(rows) > 1 else None
        return values, start
    if len(header) != 1:
        raise ValueError(f"{path}: expected a path CSV with an 'x' column or a single column")
    try:
        float(header[0])
        body = rows
    except ValueError:
        body = rows[1:]
    return np.array([float(r[0]) for r in body]), None
