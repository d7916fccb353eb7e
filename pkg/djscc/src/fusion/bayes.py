"""
Closed-form Bayesian fusion of two correlated Gaussian views observed
through estimated gains.

Each view is observed as Z_i = H_i X_i + W~_i where H_i is the estimated
gain and W~_i collects the AWGN and the CSI-error term, with variance
sigma_e^2 sigma_x^2 + sigma_w^2. The two views may have different
equivalent noise levels; with equal levels the expressions reduce to the
single-noise form.

Quantities here are real scalars (or numpy arrays of them, elementwise).
Information quantities are in nats.
"""

import math
from typing import NamedTuple

import numpy as np

from ..exceptions import InvalidArgumentError
from ..schemas.fusion import GaussianInformationTerms, GaussianPairModel, ObservationModel, PosteriorEstimate
from ..signal_processing import SeededRng


def equivalent_noise(csi_error_variance, signal_variance, noise_variance):
    """sigma_e^2 * sigma_x^2 + sigma_w^2."""
    for name, value in (
        ("csi_error_variance", csi_error_variance),
        ("signal_variance", signal_variance),
        ("noise_variance", noise_variance),
    ):
        if np.any(np.asarray(value) < 0):
            raise InvalidArgumentError(f"{name} must be nonnegative")
    result = np.asarray(csi_error_variance) * np.asarray(signal_variance) + np.asarray(noise_variance)
    return float(result) if result.ndim == 0 else result


def fusion_coefficients(gain1, gain2, variance1, variance2, correlation, noise1, noise2):
    """Posterior of X1 given (Z1, Z2) as mean = mu1 + a1 (z1 - H1 mu1) + a2 (z2 - H2 mu2).

    Returns (a1, a2, variance); arguments broadcast elementwise.
    """
    h1, h2 = np.asarray(gain1, dtype=float), np.asarray(gain2, dtype=float)
    s1, s2 = np.asarray(variance1, dtype=float), np.asarray(variance2, dtype=float)
    r = np.asarray(correlation, dtype=float)
    n1, n2 = np.asarray(noise1, dtype=float), np.asarray(noise2, dtype=float)

    residual2 = h2 ** 2 * s2 * (1 - r ** 2) + n2
    denominator = h1 ** 2 * s1 * residual2 + h2 ** 2 * s2 * n1 + n1 * n2
    if np.any(denominator <= 0):
        raise InvalidArgumentError("degenerate observation model: the joint observation covariance is singular")

    a1 = h1 * s1 * residual2 / denominator
    a2 = h2 * r * np.sqrt(s1 * s2) * n1 / denominator
    # sigma1^2 minus the explained part, rearranged so no cancellation occurs
    variance = s1 * n1 * residual2 / denominator
    return a1, a2, variance


def posterior_fuse(model: GaussianPairModel, obs: ObservationModel, z1: float, z2: float) -> PosteriorEstimate:
    noise1, noise2 = obs.equivalent_noise_variances(model)
    a1, a2, variance = fusion_coefficients(
        obs.gain1, obs.gain2, model.variance1, model.variance2, model.correlation, noise1, noise2
    )
    mean = model.mean1 + a1 * (z1 - obs.gain1 * model.mean1) + a2 * (z2 - obs.gain2 * model.mean2)
    return PosteriorEstimate(mean=float(mean), variance=float(variance))


def single_view_mmse_variance(signal_variance, gain, noise):
    """Classical scalar MMSE variance sigma^2 n / (H^2 sigma^2 + n)."""
    signal_variance = np.asarray(signal_variance, dtype=float)
    noise = np.asarray(noise, dtype=float)
    denominator = np.asarray(gain, dtype=float) ** 2 * signal_variance + noise
    safe = np.where(denominator > 0, denominator, 1.0)
    result = np.where(denominator > 0, signal_variance * noise / safe, signal_variance)
    return float(result) if result.ndim == 0 else result


def map_estimate_single(mean: float, variance: float, gain: float, noise: float, z: float) -> float:
    """Scalar Wiener/MAP estimate (H sigma^2 z + n mu) / (H^2 sigma^2 + n)."""
    if variance <= 0:
        raise InvalidArgumentError(f"prior variance must be positive, got {variance}")
    if noise < 0:
        raise InvalidArgumentError(f"noise variance must be nonnegative, got {noise}")
    denominator = gain ** 2 * variance + noise
    if denominator == 0:
        return float(mean)
    return float((gain * variance * z + noise * mean) / denominator)


def noisy_correlation_values(gain1, gain2, variance1, variance2, correlation, noise1, noise2):
    """Elementwise r' = r s1 s2 / sqrt((s1^2 + n1/H1^2)(s2^2 + n2/H2^2)); zero when a view carries no signal."""
    h1, h2 = np.abs(np.asarray(gain1, dtype=float)), np.abs(np.asarray(gain2, dtype=float))
    s1, s2 = np.asarray(variance1, dtype=float), np.asarray(variance2, dtype=float)
    numerator = np.asarray(correlation) * np.sqrt(s1 * s2) * h1 * h2
    denominator = np.sqrt((h1 ** 2 * s1 + np.asarray(noise1)) * (h2 ** 2 * s2 + np.asarray(noise2)))
    safe = np.where(denominator > 0, denominator, 1.0)
    return np.where((denominator > 0) & (h1 > 0) & (h2 > 0), numerator / safe, 0.0)


def noisy_correlation(model: GaussianPairModel, obs: ObservationModel) -> float:
    noise1, noise2 = obs.equivalent_noise_variances(model)
    return float(noisy_correlation_values(
        obs.gain1, obs.gain2, model.variance1, model.variance2, model.correlation, noise1, noise2
    ))


def gaussian_mi(correlation: float) -> float:
    """Mutual information -1/2 ln(1 - r^2) of a bivariate Gaussian, in nats."""
    if not abs(correlation) < 1:
        raise InvalidArgumentError(f"|r| must be below 1 for finite mutual information, got {correlation}")
    return -0.5 * math.log1p(-correlation ** 2)


def nats_to_bits(value):
    return value / math.log(2)


def bits_to_nats(value):
    return value * math.log(2)


def _logdet(covariance: np.ndarray, indices: list[int]) -> float:
    sign, value = np.linalg.slogdet(covariance[np.ix_(indices, indices)])
    if sign <= 0:
        raise InvalidArgumentError("covariance block is singular; information terms are unbounded")
    return float(value)


def gaussian_information_terms(model: GaussianPairModel, obs: ObservationModel) -> GaussianInformationTerms:
    """Information terms of (X1, X2, Z1, Z2) from log-determinants of its covariance."""
    noise1, noise2 = obs.equivalent_noise_variances(model)
    if noise1 <= 0 or noise2 <= 0:
        raise InvalidArgumentError("equivalent noise must be positive on both views")
    mixing = np.array([[1.0, 0.0], [0.0, 1.0], [obs.gain1, 0.0], [0.0, obs.gain2]])
    covariance = mixing @ model.covariance @ mixing.T + np.diag([0.0, 0.0, noise1, noise2])
    x1, x2, z1, z2 = 0, 1, 2, 3

    def mutual(a: list[int], b: list[int]) -> float:
        return 0.5 * (_logdet(covariance, a) + _logdet(covariance, b) - _logdet(covariance, a + b))

    conditional = 0.5 * (
        _logdet(covariance, [x1, z2]) + _logdet(covariance, [z1, z2])
        - _logdet(covariance, [z2]) - _logdet(covariance, [x1, z1, z2])
    )
    return GaussianInformationTerms(
        source_views=mutual([x1], [x2]),
        received_views=mutual([z1], [z2]),
        direct=mutual([x1], [z1]),
        conditional=conditional,
    )


class ReceivedPair(NamedTuple):
    x1: np.ndarray
    x2: np.ndarray
    z1: np.ndarray
    z2: np.ndarray


def sample_gaussian_pair(model: GaussianPairModel, n: int, rng: SeededRng) -> tuple[np.ndarray, np.ndarray]:
    """n joint draws of (X1, X2)."""
    if n < 1:
        raise InvalidArgumentError(f"sample count must be positive, got {n}")
    g1 = rng.standard_normal(n)
    g2 = rng.standard_normal(n)
    r = model.correlation
    x1 = model.mean1 + math.sqrt(model.variance1) * g1
    x2 = model.mean2 + math.sqrt(model.variance2) * (r * g1 + math.sqrt(1 - r ** 2) * g2)
    return x1, x2


def simulate_received_pair(model: GaussianPairModel, obs: ObservationModel, n: int, rng: SeededRng) -> ReceivedPair:
    """Draw Z_i = (H_i + E_i) X_i + W_i with E_i ~ N(0, sigma_ei^2), W_i ~ N(0, sigma_wi^2).

    The CSI-error term has variance sigma_e^2 (sigma_x^2 + mu_x^2), which
    matches the equivalent-noise model exactly for zero-mean sources.
    """
    x1, x2 = sample_gaussian_pair(model, n, rng)
    gains1 = obs.gain1 + math.sqrt(obs.csi_error_variance1) * rng.standard_normal(n)
    gains2 = obs.gain2 + math.sqrt(obs.csi_error_variance2) * rng.standard_normal(n)
    z1 = gains1 * x1 + math.sqrt(obs.noise_variance1) * rng.standard_normal(n)
    z2 = gains2 * x2 + math.sqrt(obs.noise_variance2) * rng.standard_normal(n)
    return ReceivedPair(x1=x1, x2=x2, z1=z1, z2=z2)
