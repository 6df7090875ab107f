"""Seeded sample paths from the truncated causal (MA) representation.

``X_t = sum_{j=0}^{M} psi_j(d_{s(t)}) eps_{t-j}`` with independent Gaussian
``eps_t`` of variance ``sigma2[s(t)]``. The Gaussian law and the truncated-MA
scheme are choices of this package; the model itself only asks for zero-mean
white noise with finite variance.

Each season's filter is applied to the one shared noise stream, so points that
are close in time see overlapping noise exactly as the MA form prescribes.
"""

from __future__ import annotations

import csv
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import TextIO

import numpy as np
from scipy.signal import fftconvolve

from .model import PtvArfimaModel, season_of
from .special_functions import pi_coeffs, psi_coeffs

__all__ = [
    "DEFAULT_TRUNCATION",
    "SamplePath",
    "Ensemble",
    "InsufficientHistoryError",
    "simulate_path",
    "simulate_ensemble",
    "replicate_seed",
    "residuals",
    "write_path_csv",
]

DEFAULT_TRUNCATION = 5000
NOISE_DISTRIBUTIONS = ("gaussian",)


class InsufficientHistoryError(ValueError):
    """Not enough past observations to apply the requested AR truncation."""


@dataclass
class SamplePath:
    """One realisation ``X_1 .. X_n`` plus the full noise stream that generated it.

    ``noise[k]`` is ``eps_t`` for ``t = k + 1 - burn_in - truncation``, so the
    stream starts ``truncation`` steps before the first burn-in point.
    """

    model: PtvArfimaModel
    values: np.ndarray
    noise: np.ndarray
    seed: int
    truncation: int
    burn_in: int

    @property
    def n(self) -> int:
        return len(self.values)

    @property
    def times(self) -> np.ndarray:
        return np.arange(1, self.n + 1)

    @property
    def seasons(self) -> np.ndarray:
        return (self.times - 1) % self.model.period + 1

    @property
    def eps(self) -> np.ndarray:
        """Noise aligned with ``values`` (``eps_1 .. eps_n``)."""
        return self.noise[self.burn_in + self.truncation :]


@dataclass
class Ensemble:
    replicates: list[SamplePath]
    master_seed: int
    seeds: list[int] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.replicates)

    def values(self) -> np.ndarray:
        """Paths stacked into an ``(R, n)`` array."""
        return np.stack([r.values for r in self.replicates])


def _check_sizes(n: int, truncation: int, burn_in: int) -> None:
    for name, v, low in (("n", n, 1), ("truncation", truncation, 1), ("burn_in", burn_in, 0)):
        if isinstance(v, bool) or int(v) != v or v < low:
            raise ValueError(f"{name} must be an integer >= {low}, got {v!r}")


def _noise_stream(model: PtvArfimaModel, length: int, first_t: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    z = rng.standard_normal(length)
    t = np.arange(first_t, first_t + length)
    scale = np.sqrt(np.asarray(model.sigma2))[(t - 1) % model.period]
    return z * scale


def simulate_path(
    model: PtvArfimaModel,
    n: int,
    truncation: int = DEFAULT_TRUNCATION,
    burn_in: int | None = None,
    seed: int = 0,
    noise_dist: str = "gaussian",
) -> SamplePath:
    """Generate ``X_1 .. X_n`` with ``truncation + 1`` MA weights per season.

    ``burn_in`` defaults to ``truncation``. Identical arguments always give
    bit-identical output.
    """
    if burn_in is None:
        burn_in = truncation
    _check_sizes(n, truncation, burn_in)
    if noise_dist not in NOISE_DISTRIBUTIONS:
        raise ValueError(f"unsupported noise distribution {noise_dist!r}")
    n, M, B = int(n), int(truncation), int(burn_in)
    first_t = 1 - B - M
    noise = _noise_stream(model, n + B + M, first_t, seed)

    # output k <-> time t = k + 1 - B, k = 0 .. n + B - 1
    out = np.empty(n + B)
    t = np.arange(1 - B, n + 1)
    seasons = (t - 1) % model.period + 1
    for s in model.seasons():
        mask = seasons == s
        if not mask.any():
            continue
        psi = psi_coeffs(model.d_of(s), M + 1, season=s).values
        out[mask] = fftconvolve(noise, psi, mode="valid")[mask]
    return SamplePath(model, out[B:].copy(), noise, int(seed), M, B)


def replicate_seed(master_seed: int, r: int) -> int:
    """Seed of replicate ``r``; depends only on ``(master_seed, r)``."""
    ss = np.random.SeedSequence(int(master_seed), spawn_key=(int(r),))
    return int(ss.generate_state(1, np.uint64)[0])


def simulate_ensemble(
    model: PtvArfimaModel,
    n: int,
    truncation: int = DEFAULT_TRUNCATION,
    burn_in: int | None = None,
    replicates: int = 500,
    master_seed: int = 0,
    workers: int = 1,
) -> Ensemble:
    """``replicates`` independent paths; output does not depend on ``workers``."""
    if isinstance(replicates, bool) or int(replicates) != replicates or replicates < 1:
        raise ValueError(f"replicates must be a positive integer, got {replicates!r}")
    seeds = [replicate_seed(master_seed, r) for r in range(int(replicates))]

    def one(seed: int) -> SamplePath:
        return simulate_path(model, n, truncation, burn_in, seed)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            paths = list(pool.map(one, seeds))
    else:
        paths = [one(s) for s in seeds]
    return Ensemble(paths, int(master_seed), seeds)


def residuals(
    model: PtvArfimaModel,
    path: SamplePath | np.ndarray,
    truncation: int = DEFAULT_TRUNCATION,
) -> np.ndarray:
    """AR(inf) inversion ``eps_hat_t = sum_{j=0}^{M} pi_j(d_{s(t)}) X_{t-j}``.

    Only times with a full ``M``-step history are returned, so the result is
    aligned with ``t = M + 1 .. n`` (1-based, first observation at ``t = 1``).

    Raises:
        InsufficientHistoryError: if the path has ``n <= M`` points.
    """
    x = path.values if isinstance(path, SamplePath) else np.asarray(path, dtype=float)
    M = int(truncation)
    if M < 0:
        raise ValueError("truncation must be non-negative")
    n = len(x)
    if n <= M:
        raise InsufficientHistoryError(
            f"need more than {M} observations for truncation {M}, got {n}"
        )
    t = np.arange(M + 1, n + 1)
    seasons = (t - 1) % model.period + 1
    out = np.empty(n - M)
    for s in model.seasons():
        mask = seasons == s
        if not mask.any():
            continue
        pi = pi_coeffs(model.d_of(s), M + 1, season=s).values
        out[mask] = fftconvolve(x, pi, mode="valid")[mask]
    return out


def write_path_csv(path: SamplePath, fh: TextIO, include_eps: bool = False) -> None:
    w = csv.writer(fh, lineterminator="\n")
    header = ["t", "season", "x"] + (["eps"] if include_eps else [])
    w.writerow(header)
    eps = path.eps
    p = path.model.period
    for k, x in enumerate(path.values):
        t = k + 1
        row = [t, season_of(t, p), format(float(x), ".17g")]
        if include_eps:
            row.append(format(float(eps[k]), ".17g"))
        w.writerow(row)
