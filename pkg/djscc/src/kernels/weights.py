"""
Kernel weight construction and the named-tensor weight file.

The file layout is documented byte for byte in docs/WEIGHT_FILE_FORMAT.md.
"""

import logging
import math
import struct
from pathlib import Path

import numpy as np

from ..configs import DWA_HIDDEN_WIDTH, WEIGHT_FILE_MAGIC, WEIGHT_FILE_VERSION
from ..exceptions import InvalidArgumentError, ResultWriteError
from ..schemas.base import validated
from ..schemas.kernels import DenseLayer, KernelWeights
from ..signal_processing import SeededRng

logger = logging.getLogger(__name__)

_HEADER = struct.Struct('<4sII')
_NAME_LENGTH = struct.Struct('<H')
_NDIM = struct.Struct('<B')
_DTYPE = np.dtype('<f8')


def write_weight_file(path, tensors: dict[str, np.ndarray]) -> None:
    chunks = [_HEADER.pack(WEIGHT_FILE_MAGIC, WEIGHT_FILE_VERSION, len(tensors))]
    for name, values in tensors.items():
        array = np.ascontiguousarray(values, dtype=_DTYPE)
        encoded = name.encode('utf-8')
        if len(encoded) > 0xFFFF or array.ndim > 0xFF:
            raise InvalidArgumentError(f"tensor {name!r} cannot be stored: name or rank too large")
        chunks.append(_NAME_LENGTH.pack(len(encoded)) + encoded)
        chunks.append(_NDIM.pack(array.ndim) + struct.pack(f'<{array.ndim}Q', *array.shape))
        chunks.append(array.tobytes(order='C'))
    try:
        Path(path).write_bytes(b''.join(chunks))
    except OSError as exc:
        raise ResultWriteError(path, exc.strerror or str(exc)) from exc
    logger.info(f"Wrote {len(tensors)} tensors to {path}")


def read_weight_file(path) -> dict[str, np.ndarray]:
    try:
        payload = Path(path).read_bytes()
    except OSError as exc:
        raise ResultWriteError(path, exc.strerror or str(exc)) from exc
    try:
        return _parse_tensors(payload)
    except struct.error as exc:
        raise InvalidArgumentError(f"weight file {path} is truncated") from exc


def _parse_tensors(payload: bytes) -> dict[str, np.ndarray]:
    magic, version, count = _HEADER.unpack_from(payload, 0)
    if magic != WEIGHT_FILE_MAGIC:
        raise InvalidArgumentError(f"not a weight file: magic {magic!r}")
    if version != WEIGHT_FILE_VERSION:
        raise InvalidArgumentError(f"unsupported weight file version {version}")
    offset = _HEADER.size
    tensors: dict[str, np.ndarray] = {}
    for _ in range(count):
        (name_length,) = _NAME_LENGTH.unpack_from(payload, offset)
        offset += _NAME_LENGTH.size
        name = payload[offset:offset + name_length].decode('utf-8')
        offset += name_length
        (ndim,) = _NDIM.unpack_from(payload, offset)
        offset += _NDIM.size
        shape = struct.unpack_from(f'<{ndim}Q', payload, offset)
        offset += 8 * ndim
        size = math.prod(shape)
        end = offset + size * _DTYPE.itemsize
        if end > len(payload):
            raise InvalidArgumentError(f"weight file is truncated inside tensor {name!r}")
        tensors[name] = np.frombuffer(payload[offset:end], dtype=_DTYPE).reshape(shape).astype(float)
        offset = end
    if offset != len(payload):
        raise InvalidArgumentError(f"weight file has {len(payload) - offset} trailing bytes")
    return tensors


def _layer_tensors(prefix: str, layers: tuple[DenseLayer, ...]) -> dict[str, np.ndarray]:
    tensors = {}
    for index, layer in enumerate(layers):
        tensors[f'{prefix}.{index}.weight'] = layer.weight
        tensors[f'{prefix}.{index}.bias'] = layer.bias
    return tensors


def _layers_from(prefix: str, tensors: dict[str, np.ndarray]) -> tuple[DenseLayer, ...]:
    layers = []
    while f'{prefix}.{len(layers)}.weight' in tensors:
        index = len(layers)
        layers.append(validated(
            DenseLayer,
            weight=tensors[f'{prefix}.{index}.weight'],
            bias=tensors[f'{prefix}.{index}.bias'],
        ))
    return tuple(layers)


def kernel_weights_to_tensors(w: KernelWeights) -> dict[str, np.ndarray]:
    tensors = {'w_q': w.w_q, 'w_k': w.w_k, 'w_v': w.w_v}
    tensors.update(_layer_tensors('mlp', w.mlp))
    tensors.update(_layer_tensors('dwa', w.dwa_layers))
    if w.conv_kernel is not None:
        tensors['conv.kernel'] = w.conv_kernel
    return tensors


def kernel_weights_from_tensors(tensors: dict[str, np.ndarray]) -> KernelWeights:
    missing = {'w_q', 'w_k', 'w_v', 'mlp.0.weight'} - tensors.keys()
    if missing:
        raise InvalidArgumentError(f"weight file lacks tensors {sorted(missing)}")
    channels = tensors['w_q'].shape[0]
    mlp = _layers_from('mlp', tensors)
    groups, remainder = divmod(mlp[-1].out_features, channels)
    kernel_size = math.isqrt(groups)
    if remainder or kernel_size * kernel_size != groups:
        raise InvalidArgumentError(f"mlp output {mlp[-1].out_features} is not K^2 * {channels}")
    return validated(
        KernelWeights,
        kernel_size=kernel_size,
        channels=channels,
        w_q=tensors['w_q'],
        w_k=tensors['w_k'],
        w_v=tensors['w_v'],
        mlp=mlp,
        dwa_layers=_layers_from('dwa', tensors),
        conv_kernel=tensors.get('conv.kernel'),
    )


def save_kernel_weights(w: KernelWeights, path) -> None:
    write_weight_file(path, kernel_weights_to_tensors(w))


def load_kernel_weights(path) -> KernelWeights:
    return kernel_weights_from_tensors(read_weight_file(path))


def conv_equivalent_weights(kernel, dwa_layers: tuple[DenseLayer, ...] = ()) -> KernelWeights:
    """Weights under which cvie(z1, z2) == conv2d(z1, kernel).

    W_v is the identity and W_q = W_k = 0. The single MLP layer copies the
    value block into shift group g = p*K + q scaled by kernel[p, q].
    """
    weights = np.asarray(kernel, dtype=float)
    if weights.ndim != 4 or weights.shape[0] != weights.shape[1] or weights.shape[2] != weights.shape[3]:
        raise InvalidArgumentError(f"kernel must be K x K x C x C, got shape {weights.shape}")
    size, channels = weights.shape[0], weights.shape[2]
    routing = np.zeros((size * size * channels, 3 * channels))
    for p in range(size):
        for q in range(size):
            group = p * size + q
            routing[group * channels:(group + 1) * channels, 2 * channels:] = weights[p, q].T
    zeros = np.zeros((channels, channels))
    return validated(
        KernelWeights,
        kernel_size=size,
        channels=channels,
        w_q=zeros,
        w_k=zeros,
        w_v=np.eye(channels),
        mlp=(DenseLayer(weight=routing, bias=np.zeros(routing.shape[0])),),
        dwa_layers=dwa_layers,
        conv_kernel=weights,
    )


def reference_dwa_weights() -> tuple[DenseLayer, DenseLayer]:
    """Fixed 3 -> 16 -> 2 DWA weights used for golden-value regression.

    Hidden units 0-7 track the two SNRs, 8-11 the SCS and 12-15 fire only
    when both SNRs are low. At (2 dB, 2 dB, 0.9) the logits are (2.0, 2.6).
    """
    hidden = np.zeros((DWA_HIDDEN_WIDTH, 3))
    hidden[0:4, 0] = 0.25
    hidden[4:8, 1] = 0.25
    hidden[8:12, 2] = 1.0
    hidden[12:16, :2] = -0.5
    hidden_bias = np.zeros(DWA_HIDDEN_WIDTH)
    hidden_bias[12:16] = 1.0

    output = np.zeros((2, DWA_HIDDEN_WIDTH))
    output[0, 0:8] = 0.5
    output[0, 12:16] = -0.5
    output[1, 8:12] = 1.0
    output_bias = np.array([0.0, -1.0])
    return (
        DenseLayer(weight=hidden, bias=hidden_bias),
        DenseLayer(weight=output, bias=output_bias),
    )


def reference_kernel_weights(channels: int = 2, kernel_size: int = 3) -> KernelWeights:
    """Centered-impulse conv weights with the reference DWA; cvie is the identity on z1."""
    kernel = np.zeros((kernel_size, kernel_size, channels, channels))
    kernel[kernel_size // 2, kernel_size // 2] = np.eye(channels)
    return conv_equivalent_weights(kernel, dwa_layers=reference_dwa_weights())


def _random_layers(rng: SeededRng, widths: list[int]) -> tuple[DenseLayer, ...]:
    layers = []
    for fan_in, fan_out in zip(widths, widths[1:]):
        scale = 1.0 / np.sqrt(fan_in)
        layers.append(DenseLayer(
            weight=scale * rng.standard_normal((fan_out, fan_in)),
            bias=scale * rng.standard_normal(fan_out),
        ))
    return tuple(layers)


def random_kernel_weights(
    rng: SeededRng,
    kernel_size: int,
    channels: int,
    hidden: tuple[int, ...] = (),
    with_dwa: bool = True,
) -> KernelWeights:
    """Gaussian weights for property tests; ``hidden`` sets MLP hidden widths."""
    projections = [rng.standard_normal((channels, channels)) / np.sqrt(channels) for _ in range(3)]
    mlp = _random_layers(rng, [3 * channels, *hidden, kernel_size * kernel_size * channels])
    dwa_layers = _random_layers(rng, [3, DWA_HIDDEN_WIDTH, 2]) if with_dwa else ()
    return validated(
        KernelWeights,
        kernel_size=kernel_size,
        channels=channels,
        w_q=projections[0],
        w_k=projections[1],
        w_v=projections[2],
        mlp=mlp,
        dwa_layers=dwa_layers,
    )
