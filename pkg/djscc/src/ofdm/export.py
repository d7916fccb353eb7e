"""
Packet export for inspection.

binary: interleaved (real, imag) little-endian float64 pairs, no header.
csv:    header ``real,imag``, one sample per row, 17 significant digits.
"""

import logging
from pathlib import Path
from typing import Literal

import numpy as np
import pandas as pd

from ..exceptions import InvalidArgumentError, ResultWriteError
from ..schemas.signals import ComplexSignal
from .papr import packet_samples

logger = logging.getLogger(__name__)

PacketFormat = Literal['binary', 'csv']


def export_packet(pkt, path, fmt: PacketFormat = 'binary') -> Path:
    samples = packet_samples(pkt)
    path = Path(path)
    try:
        if fmt == 'binary':
            interleaved = np.column_stack([samples.real, samples.imag]).astype('<f8')
            interleaved.tofile(path)
        elif fmt == 'csv':
            frame = pd.DataFrame({'real': samples.real, 'imag': samples.imag})
            frame.to_csv(path, index=False, float_format='%.17g')
        else:
            raise InvalidArgumentError(f"unknown packet format {fmt!r}")
    except OSError as exc:
        raise ResultWriteError(path, exc) from exc
    logger.debug(f"Exported {samples.size} samples to {path} ({fmt})")
    return path


def load_packet(path, fmt: PacketFormat = 'binary') -> ComplexSignal:
    path = Path(path)
    try:
        if fmt == 'binary':
            interleaved = np.fromfile(path, dtype='<f8')
            if interleaved.size % 2:
                raise InvalidArgumentError(f"{path} holds an odd number of float64 values")
            pairs = interleaved.reshape(-1, 2)
        elif fmt == 'csv':
            pairs = pd.read_csv(path)[['real', 'imag']].to_numpy(dtype=float)
        else:
            raise InvalidArgumentError(f"unknown packet format {fmt!r}")
    except OSError as exc:
        raise ResultWriteError(path, exc) from exc
    return ComplexSignal(samples=pairs[:, 0] + 1j * pairs[:, 1])
