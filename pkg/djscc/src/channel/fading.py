"""
Multipath block-fading channel with an exponential power-delay profile.
One ChannelRealization covers one packet; taps do not vary within it.
"""

import numpy as np

from ..exceptions import InvalidArgumentError
from ..schemas.channel import ChannelProfile, ChannelRealization
from ..schemas.signals import ComplexSignal
from ..signal_processing import SeededRng, as_complex_vector, complex_gaussian_array


def noise_variance_for_snr(snr_db: float, power: float) -> float:
    """AWGN variance giving ``snr_db`` at signal power ``power`` on a unit-gain channel."""
    if power <= 0:
        raise InvalidArgumentError(f"power must be positive, got {power}")
    return float(power * 10.0 ** (-snr_db / 10.0))


def sample_channel(profile: ChannelProfile, rng: SeededRng, noise_variance: float = 0.0) -> ChannelRealization:
    """Draw independent taps h_l ~ CN(0, sigma_l^2)."""
    variances = profile.tap_variances
    taps = np.sqrt(variances / 2.0) * (rng.standard_normal(variances.size) + 1j * rng.standard_normal(variances.size))
    return ChannelRealization(taps=taps, noise_variance=noise_variance)


def apply_channel(x, ch: ChannelRealization, rng: SeededRng) -> ComplexSignal:
    """Zero-padded linear convolution truncated to len(x), plus AWGN."""
    samples = as_complex_vector(x)
    received = np.convolve(samples, ch.taps)[:samples.size]
    received = received + complex_gaussian_array(rng, samples.size, ch.noise_variance)
    return ComplexSignal(samples=received)


def frequency_response(ch: ChannelRealization, n_subcarriers: int) -> np.ndarray:
    """H_k = DFT of the taps zero-padded to ``n_subcarriers``."""
    if n_subcarriers < ch.num_taps:
        raise InvalidArgumentError(
            f"n_subcarriers ({n_subcarriers}) must be at least the number of taps ({ch.num_taps})"
        )
    return np.fft.fft(ch.taps, n_subcarriers)
