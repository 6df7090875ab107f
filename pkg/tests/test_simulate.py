import math

import numpy as np
import pytest

from ptvarfima.acvf import acvf_exact, acvf_series
from ptvarfima.estimate import sample_periodic_acvf
from ptvarfima.model import new_model
from ptvarfima.simulate import (
    InsufficientHistoryError,
    replicate_seed,
    residuals,
    simulate_ensemble,
    simulate_path,
    write_path_csv,
)
from ptvarfima.special_functions import psi_coeffs


class TestSimulatePath:
    def test_lengths(self, fig1):
        p = simulate_path(fig1, 100, truncation=50, burn_in=20, seed=1)
        assert len(p.values) == 100
        assert len(p.noise) == 100 + 20 + 50
        assert len(p.eps) == 100
        assert p.seasons[:4].tolist() == [1, 2, 1, 2]

    def test_default_burn_in(self, fig1):
        p = simulate_path(fig1, 10, truncation=30, seed=1)
        assert p.burn_in == 30

    def test_deterministic(self, fig1):
        a = simulate_path(fig1, 500, 400, seed=42)
        b = simulate_path(fig1, 500, 400, seed=42)
        assert a.values.tobytes() == b.values.tobytes()
        c = simulate_path(fig1, 500, 400, seed=43)
        assert not np.array_equal(a.values, c.values)

    def test_white_noise_model(self):
        m = new_model(2, (0.0, 0.0), (1.0, 4.0))
        p = simulate_path(m, 20_000, truncation=10, seed=3)
        np.testing.assert_allclose(p.values, p.eps, rtol=1e-12, atol=1e-13)
        v1, v2 = p.values[0::2].var(), p.values[1::2].var()
        assert v1 == pytest.approx(1.0, rel=0.05)
        assert v2 == pytest.approx(4.0, rel=0.05)

    def test_matches_direct_convolution(self, fig1):
        # FFT path against the literal sum X_t = sum_j psi_j^{s(t)} eps_{t-j}
        M, B, n = 60, 10, 40
        p = simulate_path(fig1, n, M, B, seed=9)
        psi = {s: psi_coeffs(fig1.d_of(s), M + 1).values for s in (1, 2)}
        offset = B + M  # noise index of t = 1
        for k in range(n):
            t = k + 1
            s = fig1.season_of(t)
            direct = sum(psi[s][j] * p.noise[offset + k - j] for j in range(M + 1))
            assert p.values[k] == pytest.approx(direct, rel=1e-11, abs=1e-12)

    def test_noise_scaled_by_season(self):
        m = new_model(2, (0.1, 0.2), (1.0, 9.0))
        p = simulate_path(m, 10, truncation=5, burn_in=0, seed=0)
        # noise index 0 is time t = -4 -> season 2
        z = np.random.default_rng(0).standard_normal(len(p.noise))
        assert p.noise[0] == pytest.approx(3.0 * z[0])
        assert p.noise[1] == pytest.approx(z[1])

    @pytest.mark.parametrize("kw", [dict(n=0), dict(truncation=0), dict(burn_in=-1)])
    def test_invalid_sizes(self, fig1, kw):
        args = dict(n=10, truncation=5, burn_in=0)
        args.update(kw)
        with pytest.raises(ValueError):
            simulate_path(fig1, **args)

    def test_unknown_noise(self, fig1):
        with pytest.raises(ValueError):
            simulate_path(fig1, 10, 5, noise_dist="student")


class TestEnsemble:
    def test_single_replicate_matches_path(self, fig1):
        ens = simulate_ensemble(fig1, 200, 100, replicates=1, master_seed=5)
        direct = simulate_path(fig1, 200, 100, seed=replicate_seed(5, 0))
        assert ens.replicates[0].values.tobytes() == direct.values.tobytes()

    def test_reproducible_and_parallel_safe(self, fig1):
        a = simulate_ensemble(fig1, 300, 100, replicates=6, master_seed=11)
        b = simulate_ensemble(fig1, 300, 100, replicates=6, master_seed=11, workers=3)
        assert a.seeds == b.seeds
        assert a.values().tobytes() == b.values().tobytes()

    def test_seed_is_pure_function(self):
        assert replicate_seed(7, 3) == replicate_seed(7, 3)
        assert len({replicate_seed(7, r) for r in range(100)}) == 100
        assert replicate_seed(7, 0) != replicate_seed(8, 0)

    def test_invalid(self, fig1):
        with pytest.raises(ValueError):
            simulate_ensemble(fig1, 10, 5, replicates=0)

    def test_gladyshev_shift_invariance(self, fig1_paths):
        # Cov(X_t, X_t') and Cov(X_{t+2}, X_{t'+2}) agree across the ensemble
        X = fig1_paths
        R = len(X)
        for t, t2 in [(0, 0), (0, 1), (1, 1), (1, 4), (10, 13), (100, 100)]:
            a = (X[:, t] - X[:, t].mean()) * (X[:, t2] - X[:, t2].mean())
            b = (X[:, t + 2] - X[:, t + 2].mean()) * (X[:, t2 + 2] - X[:, t2 + 2].mean())
            d = a - b
            assert abs(d.mean()) <= 3 * d.std(ddof=1) / math.sqrt(R)

    def test_matches_truncated_process(self, fig1, fig1_paths):
        # the simulator realises the M-truncated MA exactly: compare with its covariance
        M = 5000
        g = np.stack([sample_periodic_acvf(x, 2, 5, "zero").gamma for x in fig1_paths])
        mean = g.mean(axis=0)
        se = g.std(axis=0, ddof=1) / math.sqrt(len(g))
        for i in (1, 2):
            for h in range(6):
                target = acvf_series(fig1, i, h, M - h + 1, seasonal_noise=True)
                assert abs(mean[i - 1, h] - target) <= 3 * se[i - 1, h]

    def test_truncation_sensitivity(self, fig1):
        # doubling M moves the variance estimates by less than the Monte-Carlo noise floor
        R = 200
        var = {}
        for M in (5000, 10000):
            X = simulate_ensemble(fig1, 2048, M, None, R, master_seed=77).values()
            var[M] = np.stack([(X[:, i::2] ** 2).mean(axis=1) for i in (0, 1)])
        for i in (0, 1):
            diff = var[10000][i].mean() - var[5000][i].mean()
            floor = 3 * math.hypot(var[5000][i].std(ddof=1), var[10000][i].std(ddof=1)) / math.sqrt(R)
            assert abs(diff) < floor


class TestResiduals:
    def test_white_noise(self):
        m = new_model(2, (0.0, 0.0), (1.0, 2.0))
        p = simulate_path(m, 300, truncation=20, seed=2)
        np.testing.assert_allclose(residuals(m, p, 20), p.values[20:], rtol=1e-12, atol=1e-13)

    def test_zero_path(self, fig1):
        assert (residuals(fig1, np.zeros(50), 10) == 0).all()

    def test_insufficient_history(self, fig1):
        with pytest.raises(InsufficientHistoryError):
            residuals(fig1, np.ones(10), 10)

    def test_equal_memory_round_trip(self):
        # with one memory parameter the AR filter inverts the MA filter
        m = new_model(2, (0.3, 0.3), (1.0, 1.0))
        M = 2000
        p = simulate_path(m, 6000, M, seed=4)
        eps_hat = residuals(m, p, M)
        assert np.corrcoef(eps_hat, p.eps[M:])[0, 1] > 0.999

    def test_matches_direct_sum(self, fig1):
        x = np.random.default_rng(0).standard_normal(60)
        M = 25
        got = residuals(fig1, x, M)
        from ptvarfima.special_functions import pi_coeffs

        for k, t in enumerate(range(M + 1, 61)):
            pi = pi_coeffs(fig1.d_of(fig1.season_of(t)), M + 1).values
            direct = sum(pi[j] * x[t - 1 - j] for j in range(M + 1))
            assert got[k] == pytest.approx(direct, rel=1e-10, abs=1e-12)


def test_path_csv(fig1):
    import io

    p = simulate_path(fig1, 5, 10, seed=0)
    buf = io.StringIO()
    write_path_csv(p, buf, include_eps=True)
    lines = buf.getvalue().splitlines()
    assert lines[0] == "t,season,x,eps"
    t, s, x, e = lines[2].split(",")
    assert (t, s) == ("2", "2")
    assert float(x) == p.values[1]
    assert float(e) == p.eps[1]
