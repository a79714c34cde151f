import numpy as np
import pytest

import surrokit as sk
from surrokit.errors import BadCutoff, SurrokitError


def periodogram_rel_error(x, s):
    px = np.abs(np.fft.rfft(x))
    ps = np.abs(np.fft.rfft(s))
    return np.linalg.norm(ps - px) / np.linalg.norm(px)


class TestRandomShuffle:
    def test_is_permutation(self, rng):
        x = rng.normal(size=200)
        s = sk.rs(x, seed=0)
        np.testing.assert_array_equal(np.sort(s), np.sort(x))

    def test_deterministic(self, rng):
        x = rng.normal(size=100)
        np.testing.assert_array_equal(sk.rs(x, 3), sk.rs(x, 3))
        assert not np.array_equal(sk.rs(x, 3), sk.rs(x, 4))


class TestRandomPhase:
    def test_periodogram_exact(self, rng):
        x = rng.normal(size=512)
        assert periodogram_rel_error(x, sk.rp(x, seed=1)) < 1e-12

    def test_autocorrelation_preserved(self, ls_series):
        # circular autocovariance is exact; the linear estimator differs
        # only by boundary terms, so it agrees to O(1/N)
        s = sk.rp(ls_series, seed=2)
        for tau in (1, 2, 5, 10):
            assert abs(
                sk.autocorrelation(s, tau) - sk.autocorrelation(ls_series, tau)
            ) < 0.01


class TestAaft:
    def test_amplitude_distribution_exact(self, ls_series):
        s = sk.aaft(ls_series, seed=0)
        np.testing.assert_array_equal(np.sort(s), np.sort(ls_series))

    def test_spectrum_approximate(self, ls_series):
        # the classic aaft bias: close but not machine-exact
        err = periodogram_rel_error(ls_series, sk.aaft(ls_series, seed=0))
        assert 1e-8 < err < 0.5


class TestIaaft:
    def test_amplitude_distribution_exact(self, ls_series):
        s = sk.iaaft(ls_series, seed=0)
        np.testing.assert_array_equal(np.sort(s), np.sort(ls_series))

    def test_spectrum_refined_below_aaft(self, ls_series):
        e_aaft = periodogram_rel_error(ls_series, sk.aaft(ls_series, seed=0))
        s, info = sk.iaaft(ls_series, seed=0, return_info=True)
        assert info.converged
        assert info.spectrum_rel_error < e_aaft
        assert info.spectrum_rel_error < 1e-2
        np.testing.assert_allclose(
            periodogram_rel_error(ls_series, s), info.spectrum_rel_error,
            atol=1e-12,
        )

    def test_iteration_cap_respected(self, ls_series):
        s, info = sk.iaaft(ls_series, seed=0, max_iterations=2,
                           return_info=True)
        assert info.iterations <= 2
        np.testing.assert_array_equal(np.sort(s), np.sort(ls_series))


class TestSss:
    def test_is_permutation(self, rng):
        x = rng.normal(size=300)
        s = sk.sss(x, sss_amplitude=1.0, seed=0)
        np.testing.assert_array_equal(np.sort(s), np.sort(x))

    def test_tiny_amplitude_near_identity(self, rng):
        x = rng.normal(size=500)
        s = sk.sss(x, sss_amplitude=1e-12, seed=0)
        np.testing.assert_array_equal(s, x)

    def test_small_amplitude_small_displacement(self, rng):
        x = np.arange(1000.0)
        s = sk.sss(x, sss_amplitude=1.0, seed=0)
        assert np.max(np.abs(s - x)) < 10

    def test_keeps_slow_trend(self, rng):
        trend = np.linspace(0, 10, 2048)
        x = trend + 0.1 * rng.normal(size=2048)
        s = sk.sss(x, sss_amplitude=2.0, seed=1)
        # windowed means should track the data's, unlike a full shuffle
        assert sk.nrms_local_diff(x, s, 128, 0.5, "mean") < 0.1
        assert sk.nrms_local_diff(x, sk.rs(x, 1), 128, 0.5, "mean") > 0.5

    def test_bad_amplitude(self, rng):
        with pytest.raises(SurrokitError):
            sk.sss(rng.normal(size=50), sss_amplitude=0.0, seed=0)


class TestBpr:
    def test_periodogram_exact(self, ls_series):
        for f_c in (0, 64, 400):
            err = periodogram_rel_error(ls_series, sk.bpr(ls_series, f_c, 1))
            assert err < 1e-12

    def test_identity_at_half(self, ls_series):
        n = ls_series.size
        s = sk.bpr(ls_series, n // 2, seed=5)
        assert np.max(np.abs(s - ls_series)) < 1e-10

    def test_low_band_phases_kept(self, ls_series):
        f_c = 100
        s = sk.bpr(ls_series, f_c, seed=3)
        np.testing.assert_allclose(
            np.angle(np.fft.rfft(s))[: f_c + 1],
            np.angle(np.fft.rfft(ls_series))[: f_c + 1],
            atol=1e-9,
        )

    def test_bad_cutoff(self, ls_series):
        with pytest.raises(BadCutoff):
            sk.bpr(ls_series, ls_series.size, seed=0)


class TestAaBpr:
    def test_amplitude_distribution_exact(self, ls_series):
        s = sk.aa_bpr(ls_series, f_c=100, seed=0)
        np.testing.assert_array_equal(np.sort(s), np.sort(ls_series))

    def test_identity_at_half(self, ls_series):
        s = sk.aa_bpr(ls_series, f_c=ls_series.size // 2, seed=7)
        np.testing.assert_array_equal(s, ls_series)

    def test_fc_zero_matches_iaaft_quality(self, ls_series):
        _, info = sk.aa_bpr(ls_series, 0, seed=0, return_info=True)
        assert info.converged
        assert info.spectrum_rel_error < 1e-2

    def test_low_band_phases_restored(self, ls_series):
        f_c = 150
        s, info = sk.aa_bpr(ls_series, f_c, seed=2, return_info=True)
        assert info.converged
        dphi = np.angle(
            np.fft.rfft(s)[: f_c + 1] * np.conj(np.fft.rfft(ls_series)[: f_c + 1])
        )
        # low-band phases match to within the residual reorder error
        assert np.median(np.abs(dphi)) < 0.2

    def test_bad_cutoff(self, ls_series):
        with pytest.raises(BadCutoff):
            sk.aa_bpr(ls_series, -1, seed=0)


class TestGenerateAndEnsemble:
    @pytest.mark.parametrize("method", sk.METHODS)
    def test_generate_all_methods(self, ls_series, method):
        spec = sk.SurrogateSpec(method=method, f_c=64, seed=11)
        s = sk.generate(ls_series, spec)
        assert s.shape == ls_series.shape
        assert np.all(np.isfinite(s))

    def test_generate_seed_override(self, ls_series):
        spec = sk.SurrogateSpec(method="rs", seed=1)
        np.testing.assert_array_equal(
            sk.generate(ls_series, spec, seed=9), sk.rs(ls_series, 9)
        )

    def test_ensemble_shape_and_reproducibility(self, ls_series):
        spec = sk.SurrogateSpec(method="iaaft", seed=5)
        e1 = sk.ensemble(ls_series, spec, 4)
        e2 = sk.ensemble(ls_series, spec, 4)
        assert e1.shape == (4, ls_series.size)
        np.testing.assert_array_equal(e1, e2)

    def test_ensemble_members_differ(self, ls_series):
        e = sk.ensemble(ls_series, sk.SurrogateSpec(method="rs", seed=0), 3)
        assert not np.array_equal(e[0], e[1])
        assert not np.array_equal(e[1], e[2])

    def test_ensemble_prefix_stable(self, ls_series):
        spec = sk.SurrogateSpec(method="rs", seed=8)
        small = sk.ensemble(ls_series, spec, 2)
        big = sk.ensemble(ls_series, spec, 5)
        np.testing.assert_array_equal(big[:2], small)

    def test_bad_method(self):
        with pytest.raises(SurrokitError):
            sk.SurrogateSpec(method="nope")

    def test_bad_ensemble_size(self, ls_series):
        with pytest.raises(SurrokitError):
            sk.ensemble(ls_series, sk.SurrogateSpec(method="rs", seed=0), 0)
