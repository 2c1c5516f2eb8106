import numpy as np
import numpy.testing as npt
import pytest

from fringedemod import (CwtMatrix, WaveletParams, admissibility_constant, cwt_row_direct,
                         cwt_row_spectral, morlet, morlet_spectrum, scale_grid)

TONE_PARAMS = WaveletParams(f_c=1.0, s_min=2.0, s_max=256.0, n_scales=64)


def grid_step_ratio(p: WaveletParams) -> float:
    s = scale_grid(p)
    return s[1] / s[0]


class TestMorlet:
    def test_value_at_origin(self):
        assert morlet(0.0, 1.0) == pytest.approx(1 / np.sqrt(np.pi), rel=1e-12)

    def test_modulus_is_gaussian(self):
        assert abs(morlet(3.0, 1.0)) == pytest.approx(np.exp(-9) / np.sqrt(np.pi), rel=1e-12)
        assert abs(morlet(3.0, 1.0)) == pytest.approx(6.963e-5, rel=1e-3)

    def test_hermitian_symmetry(self, rng):
        x = rng.uniform(-4, 4, 32)
        npt.assert_allclose(morlet(-x, 1.0), np.conj(morlet(x, 1.0)), atol=1e-15)

    def test_requires_positive_fc(self):
        with pytest.raises(ValueError):
            morlet(0.0, 0.0)


class TestMorletSpectrum:
    def test_unit_peak(self):
        for fc in (0.5, 1.0, 2.0):
            assert morlet_spectrum(2 * np.pi * fc, fc) == 1.0

    def test_near_zero_mean(self):
        assert morlet_spectrum(0.0, 1.0) == pytest.approx(np.exp(-np.pi**2), rel=1e-12)
        assert morlet_spectrum(0.0, 1.0) == pytest.approx(5.17e-5, rel=1e-2)

    def test_positive_everywhere(self):
        # exact exponential positivity, up to where float64 underflows (~exp(-745))
        w = np.linspace(-45, 58, 1001)
        assert np.all(morlet_spectrum(w, 1.0) > 0)

    def test_matches_numerical_fourier_transform(self):
        # dense quadrature of \int psi(x) exp(-i w x) dx against the closed form
        x = np.linspace(-8.0, 8.0, 160001)
        psi = morlet(x, 1.0)
        for w in np.linspace(-2.0, 12.0, 29):
            numeric = np.trapezoid(psi * np.exp(-1j * w * x), x)
            assert abs(numeric - morlet_spectrum(w, 1.0)) < 1e-6


class TestScaleGrid:
    def test_log_midpoint(self):
        npt.assert_allclose(scale_grid(WaveletParams(1, 2, 8, 3, "logarithmic")),
                            [2, 4, 8], rtol=1e-12)

    def test_linear_midpoint(self):
        npt.assert_allclose(scale_grid(WaveletParams(1, 2, 8, 3, "linear")),
                            [2, 5, 8], rtol=1e-12)

    def test_geometric_ratio_constant(self):
        s = scale_grid(TONE_PARAMS)
        ratios = s[1:] / s[:-1]
        npt.assert_allclose(ratios, 128 ** (1 / 63), rtol=1e-12)
        assert s[0] == pytest.approx(2.0) and s[-1] == pytest.approx(256.0)

    def test_param_validation(self):
        with pytest.raises(ValueError):
            WaveletParams(1.0, 8.0, 2.0, 10)
        with pytest.raises(ValueError):
            WaveletParams(1.0, 2.0, 8.0, 1)
        with pytest.raises(ValueError):
            WaveletParams(1.0, 2.0, 8.0, 10, "cubic")


class TestCwtMatrix:
    def test_row_count_mismatch(self):
        with pytest.raises(ValueError):
            CwtMatrix(np.zeros((3, 10), dtype=complex), np.array([1.0, 2.0]))


class TestCwtRowDirect:
    def test_zero_signal(self):
        out = cwt_row_direct(np.zeros(32), WaveletParams(1, 2, 8, 4))
        npt.assert_array_equal(out.coefficients, 0)

    def test_tone_ridge_scale(self):
        # brute-force scan: the column max should sit within one grid step of
        # 2*pi*f_c/omega0 (the sqrt(s) ridge factor can shift it one point up)
        w0 = 0.3
        y = np.arange(512)
        out = cwt_row_direct(np.cos(w0 * y), TONE_PARAMS)
        k = int(np.argmax(np.abs(out.coefficients[:, 256])))
        ratio = out.scales[k] / (2 * np.pi / w0)
        step = grid_step_ratio(TONE_PARAMS)
        assert 1 / step <= ratio <= step * (1 + 1e-12)

    def test_constant_signal_near_zero_response(self):
        c = 2.0
        p = WaveletParams(1.0, 2.0, 16.0, 7)
        out = cwt_row_direct(np.full(256, c), p)
        interior = out.coefficients[:, 100:156]
        bound = 1e-3 * c * np.sqrt(out.scales)[:, None]
        assert np.all(np.abs(interior) < bound)


class TestCwtRowSpectral:
    def test_zero_signal(self):
        out = cwt_row_spectral(np.zeros(32), WaveletParams(1, 2, 8, 4))
        npt.assert_array_equal(out.coefficients, 0)

    def test_dft_exact_tone_ridge_phase(self):
        n, m = 256, 12
        y = np.arange(n)
        w0 = 2 * np.pi * m / n
        out = cwt_row_spectral(np.cos(w0 * y), WaveletParams(1.0, 4.0, 64.0, 32))
        mod = np.abs(out.coefficients)
        k = np.argmax(mod, axis=0)
        phase = np.angle(out.coefficients[k, np.arange(n)])
        err = np.angle(np.exp(1j * (phase - w0 * y)))
        assert np.max(np.abs(err)) < 1e-3

    def test_agrees_with_direct_on_alias_free_scales(self, rng):
        # scales >= 4 keep the sampled kernel alias below 1e-4; columns further
        # than 6*s_max from the ends see no boundary difference
        p = WaveletParams(1.0, 4.0, 16.0, 20)
        cols = slice(96, 160)
        sig = rng.standard_normal(256)
        d = cwt_row_direct(sig, p).coefficients[:, cols]
        s = cwt_row_spectral(sig, p).coefficients[:, cols]
        assert np.linalg.norm(s - d) / np.linalg.norm(d) < 2e-3

    def test_linearity(self, rng):
        p = WaveletParams(1.0, 4.0, 16.0, 6)
        f = rng.standard_normal(64) + 1j * rng.standard_normal(64)
        g = rng.standard_normal(64) + 1j * rng.standard_normal(64)
        a, b = 1.3 - 0.2j, -0.7 + 2.1j
        for transform in (cwt_row_spectral, cwt_row_direct):
            lhs = transform(a * f + b * g, p).coefficients
            rhs = (a * transform(f, p).coefficients + b * transform(g, p).coefficients)
            npt.assert_allclose(lhs, rhs, rtol=1e-10, atol=1e-10)

    def test_shift_covariance_periodic(self, rng):
        p = WaveletParams(1.0, 4.0, 16.0, 6)
        sig = rng.standard_normal(128)
        d = 17
        base = cwt_row_spectral(sig, p).coefficients
        shifted = cwt_row_spectral(np.roll(sig, d), p).coefficients
        npt.assert_allclose(shifted, np.roll(base, d, axis=1), rtol=1e-9, atol=1e-9)

    def test_tone_ridge_modulus_matches_spectrum_factor(self):
        # |W| at the ridge of a DFT-exact tone = (amplitude/2)*sqrt(s)*psi_hat(s*w0)
        n, m, amp = 256, 12, 0.8
        y = np.arange(n)
        w0 = 2 * np.pi * m / n
        p = WaveletParams(1.0, 4.0, 64.0, 32)
        out = cwt_row_spectral(amp * np.cos(w0 * y), p)
        mod = np.abs(out.coefficients)
        k = int(np.argmax(mod[:, n // 2]))
        predicted = 0.5 * amp * np.sqrt(out.scales[k]) * morlet_spectrum(out.scales[k] * w0, 1.0)
        assert mod[k, n // 2] == pytest.approx(predicted, rel=0.01)

    def test_short_signal_rejected(self):
        with pytest.raises(ValueError):
            cwt_row_spectral(np.zeros(4), TONE_PARAMS)


class TestAdmissibilityConstant:
    def test_finite_positive_and_stable(self):
        v = admissibility_constant(1.0, 1e-3, 50.0)
        assert v > 0
        # independent oracle: fine trapezoid quadrature
        k = np.geomspace(1e-3, 50.0, 400001)
        brute = np.trapezoid(morlet_spectrum(k, 1.0) ** 2 / k, k)
        assert v == pytest.approx(brute, rel=1e-6)

    def test_higher_center_frequency_shrinks_constant(self):
        assert admissibility_constant(2.0, 1e-3, 50.0) < admissibility_constant(1.0, 1e-3, 50.0)

    def test_insensitive_to_lower_cutoff(self):
        a = admissibility_constant(1.0, 1e-3, 50.0)
        b = admissibility_constant(1.0, 1e-6, 50.0)
        assert abs(b - a) / a < 1e-4

    def test_rejects_nonpositive_kmin(self):
        with pytest.raises(ValueError):
            admissibility_constant(1.0, 0.0, 50.0)
