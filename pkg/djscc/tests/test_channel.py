import numpy as np
from django.test import SimpleTestCase
from numpy.testing import assert_allclose

from djscc.src.channel import (
    apply_channel,
    estimate_csi_ls,
    estimate_csi_mmse,
    frequency_response,
    ls_error_variance,
    noise_variance_for_snr,
    perturb_csi,
    sample_channel,
)
from djscc.src.exceptions import InvalidArgumentError
from djscc.src.ofdm import qpsk_pilots
from djscc.src.schemas.channel import ChannelProfile, ChannelRealization
from djscc.src.signal_processing import SeededRng, complex_gaussian_array


class ChannelProfileTest(SimpleTestCase):
    def test_tap_variances_sum_to_one(self):
        for num_taps in (1, 2, 8, 32):
            for decay in (0.5, 1.0, 4.0, 100.0):
                profile = ChannelProfile(num_taps=num_taps, decay=decay)
                self.assertAlmostEqual(profile.tap_variances.sum(), 1.0, delta=1e-12)
                self.assertTrue(np.all(np.diff(profile.tap_variances) <= 0))

    def test_single_tap_is_flat(self):
        assert_allclose(ChannelProfile(num_taps=1, decay=2.0).tap_variances, [1.0])

    def test_rejects_invalid_profiles(self):
        with self.assertRaises(ValueError):
            ChannelProfile(num_taps=0)
        with self.assertRaises(ValueError):
            ChannelProfile(num_taps=4, decay=0.0)
        with self.assertRaises(ValueError):
            ChannelProfile(num_taps=2000, decay=1e-3)


class FadingTest(SimpleTestCase):
    def setUp(self):
        self.rng = SeededRng(5)
        self.profile = ChannelProfile(num_taps=8, decay=4.0)

    def test_noise_variance_for_snr(self):
        self.assertAlmostEqual(noise_variance_for_snr(0.0, 0.5), 0.5)
        self.assertAlmostEqual(noise_variance_for_snr(10.0, 1.0), 0.1)
        with self.assertRaises(InvalidArgumentError):
            noise_variance_for_snr(0.0, 0.0)

    def test_tap_powers_follow_profile(self):
        draws = np.array([sample_channel(self.profile, self.rng.child(i)).taps for i in range(20_000)])

        assert_allclose(np.mean(np.abs(draws) ** 2, axis=0), self.profile.tap_variances, rtol=0.05)

    def test_identity_channel(self):
        x = complex_gaussian_array(self.rng, 32, 1.0)
        received = apply_channel(x, ChannelRealization(taps=[1.0]), self.rng)

        assert_allclose(received.samples, x, rtol=0, atol=0)

    def test_linear_convolution_is_truncated(self):
        x = np.array([1.0, 2.0, 3.0])
        received = apply_channel(x, ChannelRealization(taps=[1.0, 0.5]), self.rng)

        assert_allclose(received.samples, [1.0, 2.5, 4.0])

    def test_noise_level(self):
        x = np.zeros(100_000, dtype=complex)
        received = apply_channel(x, ChannelRealization(taps=[1.0], noise_variance=0.2), self.rng)

        self.assertAlmostEqual(np.mean(np.abs(received.samples) ** 2), 0.2, delta=0.005)

    def test_frequency_response_parseval(self):
        channel = sample_channel(self.profile, self.rng)
        response = frequency_response(channel, 64)

        self.assertAlmostEqual(np.sum(np.abs(response) ** 2) / 64, np.sum(np.abs(channel.taps) ** 2), delta=1e-10)

    def test_frequency_response_needs_enough_subcarriers(self):
        with self.assertRaises(InvalidArgumentError):
            frequency_response(sample_channel(self.profile, self.rng), 4)


class EstimationTest(SimpleTestCase):
    def setUp(self):
        self.rng = SeededRng(17)
        self.profile = ChannelProfile(num_taps=8, decay=4.0)
        self.pilots = qpsk_pilots(2, 64)
        self.response = frequency_response(sample_channel(self.profile, self.rng), 64)

    def _received(self, noise_variance, rng):
        return self.pilots * self.response + complex_gaussian_array(rng, self.pilots.shape, noise_variance)

    def test_noiseless_ls_is_exact(self):
        estimate = estimate_csi_ls(self.pilots, self.pilots * self.response)

        assert_allclose(estimate.estimates, self.response, atol=1e-12)
        self.assertAlmostEqual(estimate.error_variance, 0.0, delta=1e-24)

    def test_ls_error_variance_matches_monte_carlo(self):
        noise_variance = 1.0
        modeled = noise_variance / (2 * 1.0)
        self.assertAlmostEqual(ls_error_variance(self.pilots, noise_variance), modeled)

        errors = [
            estimate_csi_ls(self.pilots, self._received(noise_variance, self.rng.child(i))).estimates - self.response
            for i in range(2000)
        ]
        measured = np.mean(np.abs(np.array(errors)) ** 2)
        self.assertAlmostEqual(measured, modeled, delta=0.05 * modeled)

    def test_ls_empirical_spread_without_noise_level(self):
        estimate = estimate_csi_ls(self.pilots, self._received(0.5, self.rng))

        self.assertGreater(estimate.error_variance, 0.0)

    def test_ls_single_pilot_needs_noise_level(self):
        with self.assertRaises(InvalidArgumentError):
            estimate_csi_ls(self.pilots[:1], self._received(0.5, self.rng)[:1])

    def test_ls_rejects_bad_pilots(self):
        with self.assertRaises(InvalidArgumentError):
            estimate_csi_ls(np.zeros((1, 4)), np.ones((1, 4)))
        with self.assertRaises(InvalidArgumentError):
            estimate_csi_ls(np.ones((1, 4)), np.ones((1, 5)))

    def test_mmse_without_noise_equals_ls(self):
        received = self.pilots * self.response
        ls = estimate_csi_ls(self.pilots, received)
        mmse = estimate_csi_mmse(self.pilots, received, self.profile, 0.0)

        assert_allclose(mmse.estimates, ls.estimates, atol=1e-9)

    def test_mmse_beats_ls_at_low_snr(self):
        noise_variance = noise_variance_for_snr(0.0, 1.0)
        ls_errors, mmse_errors = [], []
        for i in range(200):
            received = self._received(noise_variance, self.rng.child(i))
            ls_errors.append(np.mean(np.abs(estimate_csi_ls(self.pilots, received).estimates - self.response) ** 2))
            mmse = estimate_csi_mmse(self.pilots, received, self.profile, noise_variance)
            mmse_errors.append(np.mean(np.abs(mmse.estimates - self.response) ** 2))

        self.assertLess(np.mean(mmse_errors), np.mean(ls_errors))
        self.assertLess(mmse.error_variance, ls_error_variance(self.pilots, noise_variance))

    def test_mmse_needs_enough_subcarriers(self):
        with self.assertRaises(InvalidArgumentError):
            estimate_csi_mmse(self.pilots[:, :4], self.pilots[:, :4], self.profile, 0.1)

    def test_perturb_csi(self):
        exact = perturb_csi(self.response, 0.0, self.rng)
        assert_allclose(exact.estimates, self.response, rtol=0, atol=0)

        gains = np.ones(100_000, dtype=complex)
        noisy = perturb_csi(gains, 0.1, self.rng)
        self.assertEqual(noisy.error_variance, 0.1)
        self.assertAlmostEqual(np.mean(np.abs(noisy.estimates - gains) ** 2), 0.1, delta=0.003)

        with self.assertRaises(InvalidArgumentError):
            perturb_csi(gains, -0.1, self.rng)
