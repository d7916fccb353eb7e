import numpy as np
from django.test import SimpleTestCase
from numpy.testing import assert_allclose

from djscc.src.exceptions import InvalidArgumentError
from djscc.src.schemas.signals import ComplexSignal
from djscc.src.signal_processing import (
    SeededRng,
    circular_convolve,
    complex_gaussian_array,
    dft,
    inverse_dft,
    sample_complex_gaussian,
)


class SeededRngTest(SimpleTestCase):
    def test_same_seed_same_stream(self):
        assert_allclose(SeededRng(42).standard_normal(16), SeededRng(42).standard_normal(16), rtol=0, atol=0)

    def test_children_are_independent_of_parent_consumption(self):
        parent = SeededRng(3)
        first = parent.child(5).standard_normal(8)
        parent.standard_normal(1000)
        again = parent.child(5).standard_normal(8)

        assert_allclose(first, again, rtol=0, atol=0)
        self.assertFalse(np.allclose(first, parent.child(6).standard_normal(8)))

    def test_nested_children(self):
        self.assertEqual(SeededRng(1).child(2).child(3).spawn_key, (2, 3))
        self.assertEqual(len(SeededRng(1).spawn(4)), 4)

    def test_rejects_bad_seeds(self):
        for seed in (-1, 2**64, 1.5, True):
            with self.assertRaises(InvalidArgumentError):
                SeededRng(seed)
        with self.assertRaises(InvalidArgumentError):
            SeededRng(0).child(-1)

    def test_complex_gaussian_variance(self):
        samples = complex_gaussian_array(SeededRng(9), 200_000, 2.0)

        self.assertAlmostEqual(np.mean(np.abs(samples) ** 2), 2.0, delta=0.03)
        self.assertAlmostEqual(np.var(samples.real), 1.0, delta=0.02)
        self.assertAlmostEqual(np.var(samples.imag), 1.0, delta=0.02)

    def test_sample_complex_gaussian_requires_positive_count(self):
        self.assertEqual(sample_complex_gaussian(SeededRng(0), 4, 1.0).length, 4)
        with self.assertRaises(InvalidArgumentError):
            sample_complex_gaussian(SeededRng(0), 0, 1.0)

    def test_zero_and_negative_variance(self):
        assert_allclose(sample_complex_gaussian(SeededRng(0), 5, 0.0).samples, np.zeros(5), atol=0)
        with self.assertRaises(InvalidArgumentError):
            sample_complex_gaussian(SeededRng(0), 5, -0.1)


class TransformTest(SimpleTestCase):
    def setUp(self):
        self.rng = SeededRng(11)

    def _signal(self, n):
        return complex_gaussian_array(self.rng, n, 1.0)

    def test_round_trip(self):
        worst = 0.0
        for n in self.rng.integers(1, 300, size=100):
            x = self._signal(int(n))
            back = inverse_dft(dft(x)).samples
            worst = max(worst, np.max(np.abs(back - x)) / np.max(np.abs(x)))
        self.assertLess(worst, 1e-12)

    def test_unnormalized_forward_convention(self):
        x = np.zeros(8, dtype=complex)
        x[0] = 1.0
        assert_allclose(dft(x).samples, np.ones(8))
        assert_allclose(dft(np.ones(4)).samples, [4, 0, 0, 0], atol=1e-12)

    def test_linearity(self):
        x, y = self._signal(64), self._signal(64)
        a, b = 0.3 - 1.2j, 2.5 + 0.1j

        assert_allclose(dft(a * x + b * y).samples, a * dft(x).samples + b * dft(y).samples, atol=1e-10)

    def test_convolution_theorem(self):
        x, h = self._signal(128), self._signal(8)

        expected = dft(x).samples * np.fft.fft(h, 128)
        assert_allclose(dft(circular_convolve(x, h)).samples, expected, atol=1e-9)

    def test_accepts_complex_signal(self):
        signal = ComplexSignal.of([1, 2j, -1])
        assert_allclose(inverse_dft(dft(signal)).samples, signal.samples, atol=1e-12)

    def test_rejects_empty_and_nonfinite(self):
        with self.assertRaises(InvalidArgumentError):
            dft([])
        with self.assertRaises(InvalidArgumentError):
            dft([1.0, np.nan])
        with self.assertRaises(InvalidArgumentError):
            circular_convolve([1.0, 2.0], [1.0, 1.0, 1.0])

    def test_complex_signal_is_immutable(self):
        signal = ComplexSignal.of([1.0, 2.0])
        with self.assertRaises(ValueError):
            signal.samples[0] = 5.0
