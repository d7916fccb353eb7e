import math

import numpy as np
from django.test import SimpleTestCase
from numpy.testing import assert_allclose
from scipy import integrate

from djscc.src.exceptions import InvalidArgumentError
from djscc.src.fusion import (
    bits_to_nats,
    equivalent_noise,
    fusion_coefficients,
    gaussian_information_terms,
    gaussian_mi,
    map_estimate_single,
    nats_to_bits,
    noisy_correlation,
    posterior_fuse,
    sample_gaussian_pair,
    simulate_received_pair,
    single_view_mmse_variance,
)
from djscc.src.schemas.fusion import GaussianPairModel, ObservationModel
from djscc.src.signal_processing import SeededRng


class EquivalentNoiseTest(SimpleTestCase):
    def test_formula(self):
        self.assertAlmostEqual(equivalent_noise(0.1, 2.0, 0.3), 0.5)
        self.assertEqual(equivalent_noise(0.0, 2.0, 0.3), 0.3)
        self.assertEqual(equivalent_noise(0.4, 0.0, 0.3), 0.3)
        assert_allclose(equivalent_noise(np.array([0.0, 1.0]), 1.0, 0.5), [0.5, 1.5])

    def test_rejects_negative(self):
        with self.assertRaises(InvalidArgumentError):
            equivalent_noise(-0.1, 1.0, 0.1)

    def test_observation_model_binds_noise(self):
        model = GaussianPairModel(variance1=2.0, variance2=3.0)
        obs = ObservationModel(gain1=1.0, gain2=1.0, csi_error_variance1=0.1, csi_error_variance2=0.2,
                               noise_variance1=0.05, noise_variance2=0.0)

        noise1, noise2 = obs.equivalent_noise_variances(model)
        self.assertAlmostEqual(noise1, 0.25)
        self.assertAlmostEqual(noise2, 0.6)


class PosteriorFuseTest(SimpleTestCase):
    def setUp(self):
        self.rng = SeededRng(31)

    def test_reduces_to_classical_mmse(self):
        model = GaussianPairModel(mean1=0.5, variance1=2.0, correlation=0.0)
        obs = ObservationModel(gain1=0.8, gain2=0.0, noise_variance1=0.3, noise_variance2=1.0)

        estimate = posterior_fuse(model, obs, 1.2, -4.0)

        expected = 2.0 * 0.3 / (0.8 ** 2 * 2.0 + 0.3)
        self.assertAlmostEqual(estimate.variance, expected, delta=1e-12)
        self.assertAlmostEqual(estimate.variance, single_view_mmse_variance(2.0, 0.8, 0.3), delta=1e-12)

    def test_huge_csi_error_falls_back_to_prior(self):
        model = GaussianPairModel(mean1=0.7, mean2=-0.2, variance1=1.5, variance2=1.0, correlation=0.8)
        obs = ObservationModel(gain1=1.0, gain2=0.9, csi_error_variance1=1e12, csi_error_variance2=1e12,
                               noise_variance1=0.1, noise_variance2=0.1)

        estimate = posterior_fuse(model, obs, 3.0, -2.0)

        self.assertAlmostEqual(estimate.mean, 0.7, delta=1e-6 * 0.7)
        self.assertAlmostEqual(estimate.variance, 1.5, delta=1e-6 * 1.5)

    def test_second_view_helps(self):
        model = GaussianPairModel(correlation=0.9)
        obs = ObservationModel(gain1=1.0, gain2=1.0, noise_variance1=0.5, noise_variance2=0.5)

        fused = posterior_fuse(model, obs, 0.0, 0.0).variance
        self.assertLess(fused, single_view_mmse_variance(1.0, 1.0, 0.5))

    def test_noiseless_view_is_exact(self):
        model = GaussianPairModel(correlation=0.5)
        obs = ObservationModel(gain1=2.0, gain2=1.0, noise_variance1=0.0, noise_variance2=0.4)

        estimate = posterior_fuse(model, obs, 1.0, 5.0)
        self.assertAlmostEqual(estimate.mean, 0.5)
        self.assertAlmostEqual(estimate.variance, 0.0)

    def test_matches_scalar_map_estimate(self):
        for i in range(100):
            draw = self.rng.child(i)
            mean, variance = draw.uniform(-2, 2), draw.uniform(0.1, 3)
            gain, noise, z = draw.uniform(-2, 2), draw.uniform(0.01, 2), draw.uniform(-3, 3)
            model = GaussianPairModel(mean1=mean, variance1=variance, correlation=0.0)
            obs = ObservationModel(gain1=gain, gain2=0.0, noise_variance1=noise, noise_variance2=1.0)

            fused = posterior_fuse(model, obs, z, 0.0).mean
            self.assertAlmostEqual(fused, map_estimate_single(mean, variance, gain, noise, z), delta=1e-12)

    def test_map_estimate_edge_cases(self):
        self.assertAlmostEqual(map_estimate_single(0.3, 2.0, 1.0, 0.0, 1.7), 1.7)
        self.assertEqual(map_estimate_single(0.3, 2.0, 0.0, 0.5, 1.7), 0.3)
        with self.assertRaises(InvalidArgumentError):
            map_estimate_single(0.0, 0.0, 1.0, 0.1, 0.0)

    def test_singular_observation_is_rejected(self):
        with self.assertRaises(InvalidArgumentError):
            fusion_coefficients(1.0, 1.0, 1.0, 1.0, 1.0, 0.0, 0.0)

    def test_monte_carlo_posterior(self):
        model = GaussianPairModel(variance1=1.0, variance2=1.0, correlation=0.8)
        obs = ObservationModel(gain1=0.9, gain2=1.1, csi_error_variance1=0.05, csi_error_variance2=0.1,
                               noise_variance1=0.3, noise_variance2=0.2)
        pair = simulate_received_pair(model, obs, 400_000, self.rng)
        noise1, noise2 = obs.equivalent_noise_variances(model)
        a1, a2, variance = fusion_coefficients(0.9, 1.1, 1.0, 1.0, 0.8, noise1, noise2)

        estimate = a1 * pair.z1 + a2 * pair.z2
        self.assertAlmostEqual(np.mean((estimate - pair.x1) ** 2), variance, delta=0.01 * variance)


class CorrelationTest(SimpleTestCase):
    def test_noiseless_keeps_source_correlation(self):
        model = GaussianPairModel(correlation=0.6, variance1=2.0)
        obs = ObservationModel(gain1=0.5, gain2=3.0)

        self.assertAlmostEqual(noisy_correlation(model, obs), 0.6)

    def test_noise_shrinks_correlation(self):
        model = GaussianPairModel(correlation=0.6)
        obs = ObservationModel(gain1=1.0, gain2=1.0, noise_variance1=1.0, noise_variance2=1.0)

        self.assertAlmostEqual(noisy_correlation(model, obs), 0.3)

    def test_sampled_pair_correlation(self):
        model = GaussianPairModel(mean1=1.0, variance1=4.0, correlation=-0.4)
        x1, x2 = sample_gaussian_pair(model, 200_000, SeededRng(2))

        self.assertAlmostEqual(np.corrcoef(x1, x2)[0, 1], -0.4, delta=0.01)
        self.assertAlmostEqual(x1.mean(), 1.0, delta=0.02)
        self.assertAlmostEqual(x1.var(), 4.0, delta=0.05)


class GaussianInformationTest(SimpleTestCase):
    def test_mi_matches_quadrature(self):
        r = 0.7

        def integrand(y, x):
            density = math.exp(-(x * x - 2 * r * x * y + y * y) / (2 * (1 - r * r))) / (2 * math.pi * math.sqrt(1 - r * r))
            log_ratio = -0.5 * math.log(1 - r * r) - (x * x - 2 * r * x * y + y * y) / (2 * (1 - r * r)) + (x * x + y * y) / 2
            return density * log_ratio

        value, _ = integrate.dblquad(integrand, -9, 9, -9, 9)
        self.assertAlmostEqual(gaussian_mi(r), value, delta=1e-4)

    def test_mi_edge_cases(self):
        self.assertEqual(gaussian_mi(0.0), 0.0)
        with self.assertRaises(InvalidArgumentError):
            gaussian_mi(1.0)

    def test_unit_conversion(self):
        self.assertAlmostEqual(nats_to_bits(math.log(2)), 1.0)
        self.assertAlmostEqual(bits_to_nats(nats_to_bits(0.37)), 0.37)

    def test_information_terms(self):
        model = GaussianPairModel(correlation=0.7)
        obs = ObservationModel(gain1=1.0, gain2=1.0, noise_variance1=0.5, noise_variance2=0.5)

        terms = gaussian_information_terms(model, obs)

        self.assertAlmostEqual(terms.source_views, gaussian_mi(0.7))
        self.assertAlmostEqual(terms.received_views, gaussian_mi(noisy_correlation(model, obs)))
        self.assertLessEqual(terms.received_views, terms.source_views)
        self.assertAlmostEqual(terms.direct, 0.5 * math.log(1 + 1 / 0.5))
        self.assertGreater(terms.conditional, 0.0)
        self.assertLess(terms.conditional, terms.direct)

    def test_information_terms_need_noise(self):
        with self.assertRaises(InvalidArgumentError):
            gaussian_information_terms(GaussianPairModel(), ObservationModel(gain1=1.0, gain2=1.0))
