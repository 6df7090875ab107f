import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ptvarfima.special_functions import (
    DivergenceError,
    PoleError,
    gamma_ratio,
    gauss_2f1_at_one,
    pi_coeffs,
    psi_asymptotic_constant,
    psi_coeffs,
    signed_log_gamma,
)

from oracles import hyp2f1_one_series, mp_gamma, mp_gamma_ratio

D_GRID = [0.05 * k for k in range(1, 10)]


class TestSignedLogGamma:
    def test_one(self):
        g = signed_log_gamma(1.0)
        assert g.log_abs == 0.0
        assert g.sign == 1

    def test_half(self):
        g = signed_log_gamma(0.5)
        assert g.sign == 1
        assert g.log_abs == pytest.approx(math.log(math.sqrt(math.pi)), rel=1e-15)

    def test_reflection(self):
        g = signed_log_gamma(-0.3)
        expected = math.pi / (math.sin(-0.3 * math.pi) * math.gamma(1.3))
        assert g.sign == -1
        assert g.value == pytest.approx(expected, rel=1e-14)

    @pytest.mark.parametrize("x", [-1.5, -2.5, -0.01, -0.49])
    def test_sign_pattern(self, x):
        assert signed_log_gamma(x).sign == (1 if math.floor(x) % 2 == 0 else -1)

    @pytest.mark.parametrize("x", [0, -1, -2, -10.0])
    def test_poles(self, x):
        with pytest.raises(PoleError):
            signed_log_gamma(x)

    def test_reference_accuracy(self):
        # 1e-13 relative on Gamma itself, compared in extended precision
        import mpmath

        worst = 0.0
        for x in np.linspace(0.05, 200.0, 2001):
            g = signed_log_gamma(float(x))
            ref = mp_gamma(float(x))
            worst = max(worst, float(abs(mpmath.exp(g.log_abs) / ref - 1)))
        assert worst < 1e-13

    @given(st.floats(0.05, 0.5, exclude_max=True))
    def test_negative_memory_argument(self, d):
        # Gamma(-d) for d in (0, 1/2) is negative
        assert signed_log_gamma(-d).sign == -1


class TestGammaRatio:
    def test_integers(self):
        assert gamma_ratio(5, 4) == pytest.approx(4.0, rel=1e-15)

    def test_identity(self):
        assert gamma_ratio(1, 1) == 1.0

    def test_high_precision(self):
        assert gamma_ratio(100.4, 100.7) == pytest.approx(mp_gamma_ratio(100.4, 100.7), rel=1e-12)

    @pytest.mark.parametrize("a,b", [(1e6 + 0.4, 1e6 + 0.7), (5e5 + 0.09, 5e5 + 0.51), (12.3, 11.0)])
    def test_large_arguments_do_not_overflow(self, a, b):
        assert gamma_ratio(a, b) == pytest.approx(mp_gamma_ratio(a, b), rel=1e-12)

    def test_mixed_sign(self):
        assert gamma_ratio(-0.3, 0.7) == pytest.approx(mp_gamma_ratio(-0.3, 0.7), rel=1e-13)

    def test_pole(self):
        with pytest.raises(PoleError):
            gamma_ratio(-2, 3.5)

    def test_overflow_is_infinite(self):
        assert gamma_ratio(172.0, 1.0) == math.inf

    @settings(max_examples=200)
    @given(st.floats(0.01, 150), st.floats(0.01, 150))
    def test_against_mpmath(self, a, b):
        assert gamma_ratio(a, b) == pytest.approx(mp_gamma_ratio(a, b), rel=1e-12)


class TestCoefficients:
    def test_psi_first_terms(self):
        assert psi_coeffs(0.3, 5)[1] == pytest.approx(0.3)
        assert psi_coeffs(0.4, 5)[2] == pytest.approx(0.28)

    def test_pi_first_terms(self):
        v = pi_coeffs(0.3, 5)
        assert v[1] == pytest.approx(-0.3)
        assert v[2] == pytest.approx(-0.105)

    def test_white_noise_season(self):
        for fn in (psi_coeffs, pi_coeffs):
            v = fn(0.0, 20).values
            assert v[0] == 1.0
            assert (v[1:] == 0.0).all()

    @pytest.mark.parametrize("d", [-0.1, 0.5, 0.7])
    def test_domain(self, d):
        with pytest.raises(ValueError):
            psi_coeffs(d, 10)
        with pytest.raises(ValueError):
            pi_coeffs(d, 10)

    def test_n_terms_positive(self):
        with pytest.raises(ValueError):
            psi_coeffs(0.2, 0)

    @pytest.mark.parametrize("d", D_GRID)
    def test_recursion_matches_gamma_formula(self, d):
        j = np.arange(0, 10_001)
        psi = psi_coeffs(d, len(j)).values
        pi = pi_coeffs(d, len(j)).values
        g_d = math.gamma(d)
        g_md = math.gamma(-d)
        for k in list(range(0, 50)) + list(range(50, 10_001, 97)) + [10_000]:
            assert psi[k] == pytest.approx(gamma_ratio(k + d, k + 1) / g_d, rel=1e-10)
            assert pi[k] == pytest.approx(gamma_ratio(k - d, k + 1) / g_md, rel=1e-10)

    @given(st.floats(0.0, 0.5, exclude_max=True))
    def test_signs(self, d):
        psi = psi_coeffs(d, 200).values
        pi = pi_coeffs(d, 200).values
        assert (psi >= 0).all()
        assert (pi[1:] <= 0).all()
        assert psi[0] == pi[0] == 1.0

    @given(st.floats(0.0, 0.5, exclude_max=True))
    def test_inverse_operator(self, d):
        psi = psi_coeffs(d, 101).values
        pi = pi_coeffs(d, 101).values
        conv = np.convolve(psi, pi)[:101]
        expected = np.zeros(101)
        expected[0] = 1.0
        np.testing.assert_allclose(conv, expected, atol=1e-10)

    @pytest.mark.parametrize("d", [0.1, 0.25, 0.3, 0.45])
    def test_quadratic_mean_tail(self, d):
        psi = psi_coeffs(d, 200_001).values
        ns = [10**2, 10**3, 10**4, 10**5]
        tails = [float(np.sum(psi[n + 1 : 2 * n + 1] ** 2)) for n in ns]
        assert all(a > b for a, b in zip(tails, tails[1:]))
        scaled = [t * n ** (1 - 2 * d) for t, n in zip(tails, ns)]
        assert max(scaled) / min(scaled) < 2.0

    def test_asymptotic_constant(self):
        d = 0.3
        j = 10**5
        psi = psi_coeffs(d, j + 1).values
        assert psi[j] * j ** (1 - d) / psi_asymptotic_constant(d) == pytest.approx(1.0, rel=0.01)


class TestGauss2F1:
    def test_zero_parameter(self):
        assert gauss_2f1_at_one(0, 2.3, 4) == 1.0

    def test_direct_substitution(self):
        expected = math.gamma(0.6) / math.gamma(0.8) ** 2
        assert gauss_2f1_at_one(0.2, 0.2, 1.0) == pytest.approx(expected, rel=1e-14)

    def test_against_pochhammer_series(self):
        assert gauss_2f1_at_one(0.3, 7.4, 8.0) == pytest.approx(
            hyp2f1_one_series(0.3, 7.4, 8.0), rel=1e-8
        )

    def test_divergent(self):
        with pytest.raises(DivergenceError):
            gauss_2f1_at_one(0.5, 0.6, 1.0)

    def test_pole(self):
        with pytest.raises(PoleError):
            gauss_2f1_at_one(-1.5, -0.2, -1.0)

    @settings(max_examples=30, deadline=None)
    @given(
        st.floats(0.01, 0.49),
        st.floats(0.01, 0.49),
        st.integers(0, 30),
    )
    def test_matches_mpmath(self, a, b, h):
        import mpmath

        ref = float(mpmath.hyp2f1(a, b + h, 1 + h, 1))
        assert gauss_2f1_at_one(a, b + h, 1.0 + h) == pytest.approx(ref, rel=1e-11)
