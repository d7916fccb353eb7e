import math
from typing import NamedTuple

import numpy as np

from ..exceptions import InvalidArgumentError
from ..schemas.ofdm import OfdmPacket
from ..schemas.signals import ComplexSignal


class PaprValue(NamedTuple):
    ratio: float
    db: float


def packet_samples(pkt) -> np.ndarray:
    if isinstance(pkt, (OfdmPacket, ComplexSignal)):
        return pkt.samples
    array = np.asarray(pkt, dtype=complex).ravel()
    if array.size == 0:
        raise InvalidArgumentError("packet must not be empty")
    return array


def clip_samples(samples: np.ndarray, ratio: float) -> np.ndarray:
    """Complex amplitude clipping at ``ratio`` times the mean amplitude; phase is kept."""
    if not ratio > 0:
        raise InvalidArgumentError(f"clipping ratio must be positive, got {ratio}")
    magnitudes = np.abs(samples)
    threshold = ratio * magnitudes.mean()
    if math.isinf(threshold) or threshold == 0:
        return samples.copy()
    scale = np.ones_like(magnitudes)
    over = magnitudes > threshold
    scale[over] = threshold / magnitudes[over]
    return samples * scale


def clip(pkt: OfdmPacket, ratio: float) -> OfdmPacket:
    """Clip a packet; the mean amplitude is taken over the whole packet, pilots included.

    Clipping twice is idempotent only up to the recomputed mean amplitude:
    the second pass moves no sample by more than
    ratio * (mean|p| - mean|clip(p)|), and leaves samples below the new
    threshold untouched.
    """
    return pkt.with_samples(clip_samples(pkt.samples, ratio))


def papr(pkt) -> PaprValue:
    """Peak-to-average power ratio, linear and in dB."""
    power = np.abs(packet_samples(pkt)) ** 2
    mean_power = power.mean()
    if mean_power == 0:
        raise InvalidArgumentError("PAPR of an all-zero packet is undefined")
    ratio = float(power.max() / mean_power)
    return PaprValue(ratio=ratio, db=10.0 * math.log10(ratio))


def papr_ccdf(papr_db_values, thresholds_db) -> np.ndarray:
    """Fraction of PAPR values strictly above each threshold."""
    values = np.asarray(papr_db_values, dtype=float).ravel()
    thresholds = np.asarray(thresholds_db, dtype=float)
    if values.size == 0:
        raise InvalidArgumentError("no PAPR values given")
    return (values[np.newaxis, :] > thresholds.reshape(-1, 1)).mean(axis=1).reshape(thresholds.shape)


def power_normalize(x, power_total: float) -> np.ndarray:
    """Scale ``x`` so its mean power per sample equals ``power_total``."""
    if not power_total > 0:
        raise InvalidArgumentError(f"power_total must be positive, got {power_total}")
    array = np.asarray(x, dtype=complex)
    mean_power = np.mean(np.abs(array) ** 2)
    if mean_power == 0:
        raise InvalidArgumentError("cannot power-normalize an all-zero signal")
    return array * np.sqrt(power_total / mean_power)
