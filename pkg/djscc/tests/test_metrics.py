import math

import numpy as np
from django.test import SimpleTestCase
from numpy.testing import assert_allclose

from djscc.src.exceptions import InvalidArgumentError
from djscc.src.metrics import (
    FixedConvExtractor,
    average_pool,
    identity_extractor,
    lpips,
    ms_ssim,
    mse,
    psnr,
    scs,
    ssim,
)
from djscc.src.schemas.metrics import Image
from djscc.src.signal_processing import SeededRng


class PixelMetricTest(SimpleTestCase):
    def setUp(self):
        rng = SeededRng(79)
        self.a = rng.uniform(0, 255, size=(3, 32, 32))
        self.b = np.clip(self.a + rng.standard_normal((3, 32, 32)) * 20, 0, 255)

    def test_mse_matches_loops(self):
        total = 0.0
        for c in range(3):
            for i in range(32):
                for j in range(32):
                    total += (self.a[c, i, j] - self.b[c, i, j]) ** 2
        self.assertAlmostEqual(mse(self.a, self.b), total / self.a.size, delta=1e-12 * total)
        self.assertEqual(mse(self.a, self.a), 0.0)

    def test_psnr_of_unit_mse(self):
        self.assertAlmostEqual(psnr(np.zeros((4, 4)), np.ones((4, 4))), 48.1308, delta=1e-3)

    def test_psnr_edge_cases(self):
        self.assertEqual(psnr(self.a, self.a), math.inf)
        self.assertAlmostEqual(psnr(np.zeros((2, 2)), np.ones((2, 2)), peak=1.0), 0.0)

    def test_image_validation(self):
        with self.assertRaises(InvalidArgumentError):
            mse(np.full((2, 2), 300.0), np.zeros((2, 2)))
        with self.assertRaises(InvalidArgumentError):
            mse(np.zeros((2, 2)), np.zeros((2, 3)))
        self.assertEqual(Image(pixels=np.zeros((4, 5))).shape, (1, 4, 5))


class SsimTest(SimpleTestCase):
    def setUp(self):
        rng = SeededRng(83)
        self.a = rng.uniform(0, 255, size=(3, 32, 32))
        self.b = np.clip(self.a + rng.standard_normal((3, 32, 32)) * 15, 0, 255)

    def test_identical_images(self):
        self.assertAlmostEqual(ssim(self.a, self.a), 1.0, delta=1e-12)
        self.assertAlmostEqual(ssim(self.a, self.a, window='gaussian'), 1.0, delta=1e-12)

    def test_inverted_image_scores_low(self):
        self.assertLess(ssim(self.a, 255.0 - self.a), 0.5)

    def test_uniform_images_closed_form(self):
        c1, c2 = (0.01 * 255) ** 2, (0.03 * 255) ** 2
        expected = (2 * 40.0 * 90.0 + c1) * c2 / ((40.0 ** 2 + 90.0 ** 2 + c1) * c2)

        value = ssim(np.full((1, 16, 16), 40.0), np.full((1, 16, 16), 90.0))
        self.assertAlmostEqual(value, expected, delta=1e-12)

    def test_partial_blocks_are_dropped(self):
        cropped = ssim(self.a[:, :16, :16], self.b[:, :16, :16])
        self.assertAlmostEqual(ssim(self.a[:, :20, :21], self.b[:, :20, :21]), cropped, delta=1e-12)

    def test_window_too_large(self):
        with self.assertRaises(InvalidArgumentError):
            ssim(np.zeros((4, 4)), np.zeros((4, 4)))
        with self.assertRaises(InvalidArgumentError):
            ssim(np.zeros((8, 8)), np.zeros((8, 8)), window='gaussian')
        with self.assertRaises(InvalidArgumentError):
            ssim(self.a, self.b, window='box')

    def test_noise_lowers_ssim(self):
        self.assertLess(ssim(self.a, self.b), 1.0)
        self.assertLess(ssim(self.a, self.b, window='gaussian'), 1.0)


class MsSsimTest(SimpleTestCase):
    def setUp(self):
        rng = SeededRng(89)
        self.a = rng.uniform(0, 255, size=(2, 32, 32))
        self.b = np.clip(self.a + rng.standard_normal((2, 32, 32)) * 10, 0, 255)

    def test_identity(self):
        self.assertAlmostEqual(ms_ssim(self.a, self.a), 1.0, delta=1e-12)

    def test_single_scale_is_ssim(self):
        self.assertAlmostEqual(ms_ssim(self.a, self.b, scales=1), ssim(self.a, self.b), delta=1e-12)

    def test_geometric_mean_of_scales(self):
        per_scale = []
        x, y = self.a, self.b
        for scale in range(3):
            if scale:
                x, y = average_pool(x), average_pool(y)
            per_scale.append(ssim(x, y))

        product = np.prod(per_scale)
        expected = math.copysign(abs(product) ** (1 / 3), product)
        self.assertAlmostEqual(ms_ssim(self.a, self.b, scales=3), expected, delta=1e-12)

    def test_range(self):
        value = ms_ssim(self.a, 255.0 - self.a)
        self.assertTrue(-1.0 <= value <= 1.0)

    def test_too_many_scales(self):
        with self.assertRaises(InvalidArgumentError):
            ms_ssim(self.a, self.b, scales=4)
        with self.assertRaises(InvalidArgumentError):
            ms_ssim(self.a, self.b, scales=0)

    def test_average_pool(self):
        pixels = np.arange(16, dtype=float).reshape(1, 4, 4)
        assert_allclose(average_pool(pixels)[0], [[2.5, 4.5], [10.5, 12.5]])


class LpipsTest(SimpleTestCase):
    def setUp(self):
        rng = SeededRng(97)
        self.a = rng.uniform(0, 255, size=(3, 16, 16))
        self.b = np.clip(self.a + rng.standard_normal((3, 16, 16)) * 10, 0, 255)

    def test_identity(self):
        self.assertEqual(lpips(self.a, self.a), 0.0)
        self.assertEqual(lpips(self.a, self.a, identity_extractor(3)), 0.0)

    def test_identity_extractor_reduces_to_mse(self):
        value = lpips(self.a, self.b, identity_extractor(3))
        self.assertAlmostEqual(value, 3 * mse(self.a, self.b), delta=1e-12 * value)

    def test_default_extractor_is_positive_and_deterministic(self):
        first = lpips(self.a, self.b)
        self.assertGreater(first, 0.0)
        self.assertEqual(first, lpips(self.a, self.b, FixedConvExtractor(3)))

    def test_extractor_layout(self):
        extractor = FixedConvExtractor(3, channels=(4, 6))
        features = extractor.features(self.a)

        self.assertEqual(features[0].shape, (4, 16, 16))
        self.assertEqual(features[1].shape, (6, 8, 8))
        self.assertTrue(all(np.all(w >= 0.5) and np.all(w <= 1.5) for w in extractor.weights))

    def test_scs_reexport(self):
        self.assertAlmostEqual(scs(self.a.ravel(), 2 * self.a.ravel()), 1.0)
