"""
OFDM modulation and demodulation.

Each symbol row is inverse-DFT'd and its last L_cp samples are prepended
as cyclic prefix. The pilot block is sent first, then the information
symbols, and rows are serialized in that order.
"""

import numpy as np

from ..configs import OFDM_DEFAULTS, PILOT_SEED
from ..exceptions import InvalidArgumentError
from ..schemas.ofdm import OfdmFrameConfig, OfdmPacket
from ..schemas.signals import ComplexSignal
from ..signal_processing import SeededRng


def qpsk_pilots(n_pilot_symbols: int, n_subcarriers: int, seed: int = PILOT_SEED) -> np.ndarray:
    """Unit-magnitude pseudorandom QPSK pilots, fixed by ``seed``."""
    bits = SeededRng(seed).integers(0, 2, size=(n_pilot_symbols, n_subcarriers, 2))
    return ((1 - 2 * bits[..., 0]) + 1j * (1 - 2 * bits[..., 1])) / np.sqrt(2.0)


def make_frame_config(
    n_info_symbols: int = OFDM_DEFAULTS['n_info_symbols'],
    n_pilot_symbols: int = OFDM_DEFAULTS['n_pilot_symbols'],
    n_subcarriers: int = OFDM_DEFAULTS['n_subcarriers'],
    cp_length: int = OFDM_DEFAULTS['cp_length'],
    pilot_seed: int = PILOT_SEED,
) -> OfdmFrameConfig:
    if n_pilot_symbols < 0 or n_subcarriers < 1:
        raise InvalidArgumentError(
            f"invalid frame geometry: {n_pilot_symbols} pilot symbols, {n_subcarriers} subcarriers"
        )
    return OfdmFrameConfig(
        n_info_symbols=n_info_symbols,
        n_pilot_symbols=n_pilot_symbols,
        n_subcarriers=n_subcarriers,
        cp_length=cp_length,
        pilot_values=qpsk_pilots(n_pilot_symbols, n_subcarriers, pilot_seed),
    )


def ofdm_modulate(x_freq, cfg: OfdmFrameConfig) -> OfdmPacket:
    symbols = np.asarray(x_freq, dtype=complex)
    expected = (cfg.n_info_symbols, cfg.n_subcarriers)
    if symbols.shape != expected:
        raise InvalidArgumentError(f"x_freq shape {symbols.shape} does not match frame {expected}")
    frame = np.vstack([cfg.pilot_values, symbols])
    time = np.fft.ifft(frame, axis=1)
    with_cp = np.hstack([time[:, cfg.n_subcarriers - cfg.cp_length:], time])
    return OfdmPacket.from_frame(with_cp.ravel(), cfg)


def ofdm_demodulate(rx, cfg: OfdmFrameConfig) -> tuple[np.ndarray, np.ndarray]:
    """Strip every CP, DFT each symbol and split (information, pilot) rows."""
    if isinstance(rx, (OfdmPacket, ComplexSignal)):
        samples = rx.samples
    else:
        samples = np.asarray(rx, dtype=complex).ravel()
    if samples.size != cfg.packet_length:
        raise InvalidArgumentError(f"received {samples.size} samples, frame requires {cfg.packet_length}")
    rows = samples.reshape(cfg.n_symbols, cfg.symbol_length)[:, cfg.cp_length:]
    freq = np.fft.fft(rows, axis=1)
    return freq[cfg.n_pilot_symbols:], freq[:cfg.n_pilot_symbols]
