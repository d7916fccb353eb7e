"""
Toy end-to-end pipeline: correlated Gaussian pair -> power scaling -> OFDM
-> multipath block fading with CSI estimation -> per-subcarrier Bayesian
fusion decoding.

Noise is specified per subcarrier, sigma_w^2 = P_total 10^(-SNR/10). The
forward DFT is unnormalized, so the time-domain AWGN variance is
sigma_w^2 / N_c.

Real source samples are paired into complex symbols (first half real
parts, second half imaginary parts). The receiver derotates each
subcarrier by the estimated phase and decodes the real and imaginary
parts as two real observations with gain c |H_k|, where c is the
power-normalization scale known to the receiver.
"""

import logging
from collections.abc import Iterator
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from ..channel import (
    apply_channel,
    estimate_csi_ls,
    estimate_csi_mmse,
    frequency_response,
    noise_variance_for_snr,
    perturb_csi,
    sample_channel,
)
from ..exceptions import InvalidArgumentError
from ..fusion import equivalent_noise, fusion_coefficients, noisy_correlation_values, sample_gaussian_pair
from ..information import scs
from ..ofdm import clip, make_frame_config, ofdm_demodulate, ofdm_modulate, papr, power_normalize
from ..schemas.channel import ChannelProfile, CsiEstimate
from ..schemas.experiments import ExperimentConfig, TrialRecord
from ..schemas.ofdm import OfdmFrameConfig, OfdmPacket
from ..signal_processing import SeededRng

logger = logging.getLogger(__name__)

# child streams of one trial
SNR_STREAM = 0
SOURCE_STREAM = 1
CHANNEL_STREAMS = (2, 3)
CSI_STREAMS = (4, 5)


@lru_cache(maxsize=32)
def _cached_frame(n_info: int, n_pilot: int, n_subcarriers: int, cp_length: int, pilot_seed: int) -> OfdmFrameConfig:
    return make_frame_config(n_info, n_pilot, n_subcarriers, cp_length, pilot_seed)


def frame_for(cfg: ExperimentConfig) -> OfdmFrameConfig:
    ofdm = cfg.ofdm
    return _cached_frame(ofdm.n_info_symbols, ofdm.n_pilot_symbols, ofdm.n_subcarriers, ofdm.cp_length, ofdm.pilot_seed)


def draw_snrs(cfg: ExperimentConfig, rng: SeededRng) -> tuple[float, float]:
    """Uniform SNR per view; fixed snr1_db/snr2_db take precedence."""
    settings = cfg.transmission
    draws = rng.uniform(settings.snr_low_db, settings.snr_high_db, size=2)
    snr1 = settings.snr1_db if settings.snr1_db is not None else float(draws[0])
    snr2 = settings.snr2_db if settings.snr2_db is not None else float(draws[1])
    return snr1, snr2


def _complex_block(x: np.ndarray, frame: OfdmFrameConfig) -> np.ndarray:
    half = x.size // 2
    return (x[:half] + 1j * x[half:]).reshape(frame.n_info_symbols, frame.n_subcarriers)


def _real_samples(block: np.ndarray) -> np.ndarray:
    return np.concatenate([block.real.ravel(), block.imag.ravel()])


class Transmission(NamedTuple):
    packet: OfdmPacket
    scale: float
    papr_db: float
    papr_clipped_db: float


def transmit_view(x: np.ndarray, power_total: float, frame: OfdmFrameConfig, clipping_ratio: float | None) -> Transmission:
    """Scale one view's symbols to ``power_total``, modulate, optionally clip."""
    raw = _complex_block(x, frame)
    symbols = power_normalize(raw, power_total)
    scale = float(np.linalg.norm(symbols) / np.linalg.norm(raw))
    packet = ofdm_modulate(symbols, frame)
    before = papr(packet).db
    if clipping_ratio is not None:
        packet = clip(packet, clipping_ratio)
    return Transmission(packet=packet, scale=scale, papr_db=before, papr_clipped_db=papr(packet).db)


def estimate_csi(
    mode: str,
    true_gains: np.ndarray,
    pilot_tx: np.ndarray,
    pilot_rx: np.ndarray,
    profile: ChannelProfile,
    noise_variance: float,
    error_variance: float,
    rng: SeededRng,
) -> CsiEstimate:
    if mode == 'perfect':
        return CsiEstimate(estimates=true_gains, error_variance=0.0)
    if mode == 'ls':
        return estimate_csi_ls(pilot_tx, pilot_rx, noise_variance)
    if mode == 'mmse':
        return estimate_csi_mmse(pilot_tx, pilot_rx, profile, noise_variance)
    if mode == 'synthetic':
        return perturb_csi(true_gains, error_variance, rng)
    raise InvalidArgumentError(f"unknown CSI mode {mode!r}")


class Reception(NamedTuple):
    received: np.ndarray
    csi: CsiEstimate
    noise_variance: float


def receive_view(
    packet: OfdmPacket,
    cfg: ExperimentConfig,
    frame: OfdmFrameConfig,
    snr_db: float,
    power_total: float,
    csi_mode: str,
    csi_error_variance: float,
    channel_rng: SeededRng,
    csi_rng: SeededRng,
) -> Reception:
    noise = noise_variance_for_snr(snr_db, power_total)
    channel = sample_channel(cfg.channel, channel_rng, noise_variance=noise / frame.n_subcarriers)
    data, pilots = ofdm_demodulate(apply_channel(packet.samples, channel, channel_rng), frame)
    csi = estimate_csi(
        csi_mode,
        frequency_response(channel, frame.n_subcarriers),
        frame.pilot_values,
        pilots,
        cfg.channel,
        noise,
        csi_error_variance,
        csi_rng,
    )
    return Reception(received=data, csi=csi, noise_variance=noise)


def _derotate(received: np.ndarray, gains: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    magnitude = np.abs(gains)
    nonzero = magnitude > 0
    phase = np.where(nonzero, np.conj(gains) / np.where(nonzero, magnitude, 1.0), 1.0)
    return received * phase[np.newaxis, :], magnitude


def mmse_equalize(received: np.ndarray, gains: np.ndarray, noise_variance: float, power: float) -> np.ndarray:
    """Per-subcarrier linear MMSE equalizer conj(H) Z / (|H|^2 + sigma_w^2 / P)."""
    return received * (np.conj(gains) / (np.abs(gains) ** 2 + noise_variance / power))[np.newaxis, :]


class ViewObservation(NamedTuple):
    values: np.ndarray
    gains: np.ndarray
    noise: float


def _observation(reception: Reception, scale: float, variance: float, mean: float, n_symbols: int) -> ViewObservation:
    derotated, magnitude = _derotate(reception.received, reception.csi.estimates)
    noise = equivalent_noise(
        reception.csi.error_variance,
        scale ** 2 * (variance + mean ** 2),
        reception.noise_variance / 2.0,
    )
    return ViewObservation(
        values=_real_samples(derotated),
        gains=scale * np.tile(magnitude, 2 * n_symbols),
        noise=noise,
    )


def _fuse(own: ViewObservation, other: ViewObservation, own_mean, other_mean, own_var, other_var, r):
    a1, a2, variance = fusion_coefficients(own.gains, other.gains, own_var, other_var, r, own.noise, other.noise)
    estimate = own_mean + a1 * (own.values - own.gains * own_mean) + a2 * (other.values - other.gains * other_mean)
    return estimate, variance


def _standardized(obs: ViewObservation, mean: float, variance: float) -> np.ndarray:
    return (obs.values - obs.gains * mean) / np.sqrt(obs.gains ** 2 * variance + obs.noise)


def simulate_trial(
    cfg: ExperimentConfig,
    rng: SeededRng,
    trial: int = 0,
    *,
    snrs: tuple[float, float] | None = None,
    clipping_ratio: float | None = None,
    csi_mode: str | None = None,
    csi_error_variance: float | None = None,
) -> TrialRecord:
    """One packet per view through the full chain.

    ``clipping_ratio`` defaults to the configured ratio; pass math.inf for
    an explicitly unclipped run. Every random draw comes from a fixed child
    stream of ``rng``, so runs that differ only in these overrides share
    sources, channels and noise.
    """
    frame = frame_for(cfg)
    source = cfg.source
    settings = cfg.transmission
    mode = csi_mode or cfg.csi.mode
    error_variance = cfg.csi.error_variance if csi_error_variance is None else csi_error_variance
    ratio = cfg.clipping.ratio if clipping_ratio is None else clipping_ratio
    snr1, snr2 = draw_snrs(cfg, rng.child(SNR_STREAM)) if snrs is None else snrs

    n_real = 2 * frame.n_info_symbols * frame.n_subcarriers
    x1, x2 = sample_gaussian_pair(source, n_real, rng.child(SOURCE_STREAM))
    sent1 = transmit_view(x1, settings.power_total1, frame, ratio)
    sent2 = transmit_view(x2, settings.power_total2, frame, ratio)

    reception1 = receive_view(
        sent1.packet, cfg, frame, snr1, settings.power_total1, mode, error_variance,
        rng.child(CHANNEL_STREAMS[0]), rng.child(CSI_STREAMS[0]),
    )
    reception2 = receive_view(
        sent2.packet, cfg, frame, snr2, settings.power_total2, mode, error_variance,
        rng.child(CHANNEL_STREAMS[1]), rng.child(CSI_STREAMS[1]),
    )

    obs1 = _observation(reception1, sent1.scale, source.variance1, source.mean1, frame.n_info_symbols)
    obs2 = _observation(reception2, sent2.scale, source.variance2, source.mean2, frame.n_info_symbols)
    r = source.correlation
    estimate1, variance1 = _fuse(obs1, obs2, source.mean1, source.mean2, source.variance1, source.variance2, r)
    estimate2, variance2 = _fuse(obs2, obs1, source.mean2, source.mean1, source.variance2, source.variance1, r)

    predicted = noisy_correlation_values(
        obs1.gains, obs2.gains, source.variance1, source.variance2, r, obs1.noise, obs2.noise
    )
    u1 = _standardized(obs1, source.mean1, source.variance1)
    u2 = _standardized(obs2, source.mean2, source.variance2)
    measured = float(np.sum(u1 * u2) / np.sqrt(np.sum(u1 ** 2) * np.sum(u2 ** 2)))

    equalized1 = mmse_equalize(reception1.received, reception1.csi.estimates, reception1.noise_variance, settings.power_total1)
    equalized2 = mmse_equalize(reception2.received, reception2.csi.estimates, reception2.noise_variance, settings.power_total2)

    record = TrialRecord(
        trial=trial,
        snr1_db=snr1,
        snr2_db=snr2,
        mse1=float(np.mean((estimate1 - x1) ** 2)),
        mse2=float(np.mean((estimate2 - x2) ** 2)),
        theory_variance1=float(np.mean(variance1)),
        theory_variance2=float(np.mean(variance2)),
        correlation=r,
        noisy_correlation=float(np.mean(predicted)),
        empirical_correlation=measured,
        scs=scs(equalized1.ravel(), equalized2.ravel()),
        papr_db=(sent1.papr_db + sent2.papr_db) / 2.0,
        papr_clipped_db=(sent1.papr_clipped_db + sent2.papr_clipped_db) / 2.0,
        csi_error_variance1=reception1.csi.error_variance,
        csi_error_variance2=reception2.csi.error_variance,
        n_samples=n_real,
    )
    logger.debug(f"Trial {trial}: snr=({snr1:.2f}, {snr2:.2f}) dB, mse=({record.mse1:.4g}, {record.mse2:.4g})")
    return record


def run_toy_pipeline(cfg: ExperimentConfig, rng: SeededRng | None = None) -> Iterator[TrialRecord]:
    """Yield one TrialRecord per configured trial, in trial order."""
    rng = rng or SeededRng(cfg.run.seed)
    logger.info(f"Running toy pipeline: {cfg.run.trials} trials, csi={cfg.csi.mode}, seed={rng.seed}")
    for trial in range(cfg.run.trials):
        yield simulate_trial(cfg, rng.child(trial), trial)
