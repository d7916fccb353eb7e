"""
Oracle checks run by the *_check management commands.

Each check draws its random instances from child streams of the given rng
and returns a report; callers decide how to surface failures.
"""

import logging

import numpy as np

from ..configs import CVIE_CHECK_CONFIG, MI_CHECK_CONFIG, POSTERIOR_CHECK_CONFIG
from ..fusion import fusion_coefficients, gaussian_information_terms, simulate_received_pair
from ..information import random_joint, random_stochastic_matrix, verify_mi_nonincreasing
from ..kernels import conv2d, conv_equivalent_weights, cvie
from ..schemas.checks import CvieCheckReport, MiCheckReport, PosteriorCheckReport, PosteriorDrawResult
from ..schemas.fusion import GaussianPairModel, ObservationModel
from ..signal_processing import SeededRng

logger = logging.getLogger(__name__)

GAUSSIAN_ORDER_TOLERANCE = 1e-12


def _stage_chain(rng: SeededRng, n_inputs: int, depth: int, max_alphabet: int) -> list:
    chain = []
    for _ in range(depth):
        n_outputs = int(rng.integers(2, max_alphabet + 1))
        chain.append(random_stochastic_matrix(rng, n_inputs, n_outputs))
        n_inputs = n_outputs
    return chain


def _random_gaussian_case(rng: SeededRng, with_csi_error: bool = True) -> tuple[GaussianPairModel, ObservationModel]:
    variances = rng.uniform(0.5, 2.0, size=2)
    model = GaussianPairModel(
        variance1=float(variances[0]),
        variance2=float(variances[1]),
        correlation=float(rng.uniform(-0.95, 0.95)),
    )
    gains = rng.uniform(0.3, 2.0, size=2)
    errors = rng.uniform(0.02, 0.3, size=2) if with_csi_error else np.zeros(2)
    noises = rng.uniform(0.05, 1.0, size=2)
    obs = ObservationModel(
        gain1=float(gains[0]),
        gain2=float(gains[1]),
        csi_error_variance1=float(errors[0]),
        csi_error_variance2=float(errors[1]),
        noise_variance1=float(noises[0]),
        noise_variance2=float(noises[1]),
    )
    return model, obs


def run_mi_check(
    rng: SeededRng,
    instances: int = MI_CHECK_CONFIG['instances'],
    max_alphabet: int = MI_CHECK_CONFIG['max_alphabet'],
    max_depth: int = MI_CHECK_CONFIG['max_depth'],
    gaussian_draws: int = MI_CHECK_CONFIG['gaussian_draws'],
) -> MiCheckReport:
    """Non-increasing MI along random stage chains, plus the Gaussian orderings.

    In the jointly Gaussian model Z2 - X1 - Z1 is a Markov chain, so
    I(X1;Z1|Z2) <= I(X1;Z1) and I(Z1;Z2) <= I(X1;X2) must both hold.
    """
    violations = 0
    max_increase = -np.inf
    for index in range(instances):
        case = rng.child(index)
        n_a, n_b = (int(size) for size in case.integers(2, max_alphabet + 1, size=2))
        depth = int(case.integers(1, max_depth + 1))
        trace = verify_mi_nonincreasing(
            random_joint(case, n_a, n_b),
            _stage_chain(case, n_a, depth, max_alphabet),
            _stage_chain(case, n_b, depth, max_alphabet),
        )
        max_increase = max(max_increase, trace.max_increase)
        if not trace.non_increasing:
            violations += 1
            logger.error(f"MI increased by {trace.max_increase:.3e} on instance {index}: {trace.values}")

    gaussian_violations = 0
    gaussian_rng = rng.child(instances)
    for draw in range(gaussian_draws):
        model, obs = _random_gaussian_case(gaussian_rng.child(draw))
        terms = gaussian_information_terms(model, obs)
        if (terms.conditional > terms.direct + GAUSSIAN_ORDER_TOLERANCE
                or terms.received_views > terms.source_views + GAUSSIAN_ORDER_TOLERANCE):
            gaussian_violations += 1
            logger.error(f"Gaussian information ordering broken on draw {draw}: {terms}")

    return MiCheckReport(
        passed=violations == 0 and gaussian_violations == 0,
        instances=instances,
        violations=violations,
        max_increase=float(max_increase) if instances else 0.0,
        gaussian_draws=gaussian_draws,
        gaussian_violations=gaussian_violations,
    )


def run_cvie_check(
    rng: SeededRng,
    instances: int = CVIE_CHECK_CONFIG['instances'],
    kernel_sizes: tuple[int, ...] = CVIE_CHECK_CONFIG['kernel_sizes'],
    channels: int = CVIE_CHECK_CONFIG['channels'],
    height: int = CVIE_CHECK_CONFIG['height'],
    width: int = CVIE_CHECK_CONFIG['width'],
    tolerance: float = CVIE_CHECK_CONFIG['tolerance'],
) -> CvieCheckReport:
    """cvie with conv-equivalent weights against conv2d on random maps and kernels."""
    errors: dict[int, float] = {size: 0.0 for size in kernel_sizes}
    for index in range(instances):
        size = kernel_sizes[index % len(kernel_sizes)]
        case = rng.child(index)
        kernel = case.standard_normal((size, size, channels, channels))
        z1 = case.standard_normal((channels, height, width))
        z2 = case.standard_normal((channels, height, width))
        difference = cvie(z1, z2, conv_equivalent_weights(kernel)).tensor - conv2d(z1, kernel).tensor
        errors[size] = max(errors[size], float(np.max(np.abs(difference))))
    max_error = max(errors.values(), default=0.0)
    return CvieCheckReport(
        passed=max_error <= tolerance,
        instances=instances,
        max_error=max_error,
        max_error_by_kernel=errors,
        tolerance=tolerance,
    )


def _regression_moments(model, obs, samples: int, chunk_size: int, rng: SeededRng) -> np.ndarray:
    """Covariance of (X1, Z1, Z2) accumulated chunk by chunk."""
    total = np.zeros(3)
    gram = np.zeros((3, 3))
    done = 0
    chunk = 0
    while done < samples:
        size = min(chunk_size, samples - done)
        pair = simulate_received_pair(model, obs, size, rng.child(chunk))
        data = np.vstack([pair.x1, pair.z1, pair.z2])
        total += data.sum(axis=1)
        gram += data @ data.T
        done += size
        chunk += 1
    mean = total / samples
    return gram / samples - np.outer(mean, mean)


def run_posterior_check(
    rng: SeededRng,
    draws: int = POSTERIOR_CHECK_CONFIG['draws'],
    samples: int = POSTERIOR_CHECK_CONFIG['samples'],
    chunk_size: int = POSTERIOR_CHECK_CONFIG['chunk_size'],
    tolerance: float = POSTERIOR_CHECK_CONFIG['tolerance'],
) -> PosteriorCheckReport:
    """Linear regression of X1 on (Z1, Z2) from Monte Carlo against the closed form.

    Odd draws carry CSI error. Sources are zero-mean so the multiplicative
    error term has exactly the equivalent-noise variance.
    """
    results = []
    for draw in range(draws):
        case = rng.child(draw)
        model, obs = _random_gaussian_case(case.child(0), with_csi_error=draw % 2 == 1)
        noise1, noise2 = obs.equivalent_noise_variances(model)
        a1, a2, variance = fusion_coefficients(
            obs.gain1, obs.gain2, model.variance1, model.variance2, model.correlation, noise1, noise2
        )
        covariance = _regression_moments(model, obs, samples, chunk_size, case.child(1))
        empirical = np.linalg.solve(covariance[1:, 1:], covariance[1:, 0])
        empirical_variance = float(covariance[0, 0] - covariance[1:, 0] @ empirical)
        closed = np.array([float(a1), float(a2)])
        result = PosteriorDrawResult(
            draw=draw,
            coefficients=(closed[0], closed[1]),
            variance=float(variance),
            empirical_coefficients=(float(empirical[0]), float(empirical[1])),
            empirical_variance=empirical_variance,
            coefficient_error=float(np.linalg.norm(empirical - closed) / np.linalg.norm(closed)),
            variance_error=abs(empirical_variance - float(variance)) / float(variance),
            csi_error=draw % 2 == 1,
        )
        logger.info(
            f"Posterior draw {draw}: coefficient error {result.coefficient_error:.2e}, "
            f"variance error {result.variance_error:.2e}"
        )
        results.append(result)
    passed = all(r.coefficient_error <= tolerance and r.variance_error <= tolerance for r in results)
    return PosteriorCheckReport(passed=passed, samples=samples, tolerance=tolerance, draws=results)
