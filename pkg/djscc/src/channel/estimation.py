import numpy as np
from scipy import linalg

from ..configs import MMSE_DIAGONAL_LOADING
from ..exceptions import InvalidArgumentError
from ..schemas.channel import ChannelProfile, CsiEstimate
from ..schemas.signals import ComplexSignal
from ..signal_processing import SeededRng, complex_gaussian_array


def _pilot_matrix(pilots, name: str) -> np.ndarray:
    if isinstance(pilots, ComplexSignal):
        pilots = pilots.samples
    array = np.asarray(pilots, dtype=complex)
    if array.ndim == 1:
        array = array[np.newaxis]
    if array.ndim != 2 or array.size == 0:
        raise InvalidArgumentError(f"{name} must be a nonempty vector or N_p x N_c matrix, got shape {array.shape}")
    if not np.all(np.isfinite(array)):
        raise InvalidArgumentError(f"{name} contains non-finite samples")
    return array


def _checked_pilots(pilot_tx, pilot_rx) -> tuple[np.ndarray, np.ndarray]:
    tx = _pilot_matrix(pilot_tx, "pilot_tx")
    rx = _pilot_matrix(pilot_rx, "pilot_rx")
    if tx.shape != rx.shape:
        raise InvalidArgumentError(f"pilot shapes differ: {tx.shape} vs {rx.shape}")
    if np.any(tx == 0):
        raise InvalidArgumentError("pilot_tx contains a zero sample")
    return tx, rx


def _ls_noise_per_subcarrier(tx: np.ndarray, noise_variance: float) -> np.ndarray:
    n_pilots = tx.shape[0]
    return noise_variance * np.sum(1.0 / np.abs(tx) ** 2, axis=0) / n_pilots ** 2


def ls_error_variance(pilot_tx, noise_variance: float) -> float:
    """Modeled mean LS error variance for known pilots and noise level."""
    if noise_variance < 0:
        raise InvalidArgumentError(f"noise variance must be nonnegative, got {noise_variance}")
    return float(np.mean(_ls_noise_per_subcarrier(_pilot_matrix(pilot_tx, "pilot_tx"), noise_variance)))


def estimate_csi_ls(pilot_tx, pilot_rx, noise_variance: float | None = None) -> CsiEstimate:
    """Least-squares estimate: per-subcarrier ratio rx/tx averaged over pilot symbols.

    The reported error variance is modeled from ``noise_variance`` when it is
    given, otherwise measured from the spread of the per-pilot ratios (needs
    at least two pilot symbols).
    """
    tx, rx = _checked_pilots(pilot_tx, pilot_rx)
    ratios = rx / tx
    estimates = ratios.mean(axis=0)
    n_pilots = tx.shape[0]
    if noise_variance is not None:
        error_variance = ls_error_variance(tx, noise_variance)
    elif n_pilots >= 2:
        spread = np.sum(np.abs(ratios - estimates) ** 2, axis=0) / (n_pilots - 1)
        error_variance = float(np.mean(spread) / n_pilots)
    else:
        raise InvalidArgumentError(
            "LS error variance needs the noise variance or at least two pilot symbols"
        )
    return CsiEstimate(estimates=estimates, error_variance=error_variance)


def estimate_csi_mmse(pilot_tx, pilot_rx, profile: ChannelProfile, noise_variance: float) -> CsiEstimate:
    """Linear MMSE estimate under the power-delay-profile prior.

    Solved in the L-dimensional tap domain: with H = F h, prior
    h ~ CN(0, diag(sigma_l^2)) and LS errors of variance c_k,
    h_hat = (F^H C^-1 F + D^-1)^-1 F^H C^-1 H_ls. The reported error
    variance is the mean of diag(F P F^H), which equals trace(P).
    """
    if noise_variance < 0:
        raise InvalidArgumentError(f"noise variance must be nonnegative, got {noise_variance}")
    tx, rx = _checked_pilots(pilot_tx, pilot_rx)
    n_subcarriers = tx.shape[1]
    if profile.num_taps > n_subcarriers:
        raise InvalidArgumentError(
            f"profile has {profile.num_taps} taps but only {n_subcarriers} subcarriers are observed"
        )
    ls = estimate_csi_ls(tx, rx, noise_variance)
    if noise_variance == 0:
        return CsiEstimate(estimates=ls.estimates, error_variance=0.0)

    ls_noise = _ls_noise_per_subcarrier(tx, noise_variance)
    taps = np.arange(profile.num_taps)
    basis = np.exp(-2j * np.pi * np.outer(np.arange(n_subcarriers), taps) / n_subcarriers)
    weighted = basis.conj().T / ls_noise
    precision = weighted @ basis + np.diag(1.0 / profile.tap_variances)
    precision += MMSE_DIAGONAL_LOADING * np.eye(profile.num_taps)
    factor = linalg.cho_factor(precision)
    tap_estimates = linalg.cho_solve(factor, weighted @ ls.estimates)
    covariance = linalg.cho_solve(factor, np.eye(profile.num_taps))
    return CsiEstimate(
        estimates=basis @ tap_estimates,
        error_variance=float(np.real(np.trace(covariance))),
    )


def perturb_csi(true_h, error_variance: float, rng: SeededRng) -> CsiEstimate:
    """Synthetic imperfect CSI: H_hat = H - E with E of variance ``error_variance``.

    E is circularly-symmetric complex Gaussian for complex gains and real
    Gaussian for real gains.
    """
    if error_variance < 0:
        raise InvalidArgumentError(f"CSI error variance must be nonnegative, got {error_variance}")
    gains = np.atleast_1d(np.asarray(true_h))
    if np.iscomplexobj(gains):
        error = complex_gaussian_array(rng, gains.shape, error_variance)
    else:
        error = np.sqrt(error_variance) * rng.standard_normal(gains.shape)
    return CsiEstimate(estimates=gains - error, error_variance=error_variance)
