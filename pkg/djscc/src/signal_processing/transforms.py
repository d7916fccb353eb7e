"""
DFT primitives.

Convention used throughout the library: the forward transform is
unnormalized, X_k = sum_n x_n e^{-j 2 pi k n / N}; the inverse carries the
1/N factor. Both map through numpy.fft, so cost is O(N log N).
"""

import numpy as np

from ..exceptions import InvalidArgumentError
from ..schemas.signals import ComplexSignal


def as_complex_vector(x, name: str = "signal") -> np.ndarray:
    """Return ``x`` (a ComplexSignal or array-like) as a 1-D complex array."""
    if isinstance(x, ComplexSignal):
        return x.samples
    array = np.asarray(x, dtype=complex)
    if array.ndim != 1:
        raise InvalidArgumentError(f"{name} must be 1-dimensional, got shape {array.shape}")
    if array.size == 0:
        raise InvalidArgumentError(f"{name} must not be empty")
    if not np.all(np.isfinite(array)):
        raise InvalidArgumentError(f"{name} contains non-finite samples")
    return array


def dft(x) -> ComplexSignal:
    return ComplexSignal(samples=np.fft.fft(as_complex_vector(x)))


def inverse_dft(x) -> ComplexSignal:
    return ComplexSignal(samples=np.fft.ifft(as_complex_vector(x)))


def circular_convolve(x, h) -> ComplexSignal:
    """Circular convolution of ``x`` with ``h`` zero-padded to len(x)."""
    samples = as_complex_vector(x)
    taps = as_complex_vector(h, name="taps")
    if taps.size > samples.size:
        raise InvalidArgumentError(f"taps ({taps.size}) longer than signal ({samples.size})")
    return ComplexSignal(samples=np.fft.ifft(np.fft.fft(samples) * np.fft.fft(taps, samples.size)))
