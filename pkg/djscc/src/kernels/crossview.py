"""
Crossview feature kernels on (channel, row, column) tensors.

Spatial offsets use zero padding everywhere: conv2d reads zeros outside the
map and shift fills vacated positions with zeros, so CVIE with the
conv-equivalent weights reproduces conv2d exactly, borders included.
"""

import numpy as np
from scipy.special import expit, softmax

from ..configs import CAM_NORMALIZATIONS, DWA_MODES
from ..exceptions import InvalidArgumentError
from ..schemas.base import validated
from ..schemas.kernels import DenseLayer, DwaInput, FeatureMap, KernelWeights


def _tensor(x) -> np.ndarray:
    if isinstance(x, FeatureMap):
        return x.tensor
    return validated(FeatureMap, tensor=x).tensor


def _same_shape(*tensors: np.ndarray) -> None:
    shapes = {tensor.shape for tensor in tensors}
    if len(shapes) != 1:
        raise InvalidArgumentError(f"feature maps differ in shape: {sorted(shapes)}")


def conv2d(x, kernel) -> FeatureMap:
    """Cross-correlation y[o,i,j] = sum_{p,q,c} F[p,q,c,o] x[c, i+p-K//2, j+q-K//2]."""
    data = _tensor(x)
    weights = np.asarray(kernel, dtype=float)
    if weights.ndim != 4 or weights.shape[0] != weights.shape[1]:
        raise InvalidArgumentError(f"kernel must be K x K x C_in x C_out, got shape {weights.shape}")
    size = weights.shape[0]
    if size % 2 == 0:
        raise InvalidArgumentError(f"kernel size must be odd, got {size}")
    if weights.shape[2] != data.shape[0]:
        raise InvalidArgumentError(f"kernel expects {weights.shape[2]} input channels, map has {data.shape[0]}")
    half = size // 2
    _, height, width = data.shape
    padded = np.pad(data, ((0, 0), (half, half), (half, half)))
    output = np.zeros((weights.shape[3], height, width))
    for p in range(size):
        for q in range(size):
            output += np.einsum('co,chw->ohw', weights[p, q], padded[:, p:p + height, q:q + width])
    return FeatureMap(tensor=output)


def _pointwise(matrix: np.ndarray, data: np.ndarray) -> np.ndarray:
    return np.einsum('oc,chw->ohw', matrix, data)


def _check_channels(data: np.ndarray, w: KernelWeights) -> None:
    if data.shape[0] != w.channels:
        raise InvalidArgumentError(f"weights are for {w.channels} channels, map has {data.shape[0]}")


def project_qkv(z1, z2, w: KernelWeights) -> tuple[FeatureMap, FeatureMap, FeatureMap]:
    """Query from view 2; key and value from view 1."""
    view1, view2 = _tensor(z1), _tensor(z2)
    _same_shape(view1, view2)
    _check_channels(view1, w)
    return (
        FeatureMap(tensor=_pointwise(w.w_q, view2)),
        FeatureMap(tensor=_pointwise(w.w_k, view1)),
        FeatureMap(tensor=_pointwise(w.w_v, view1)),
    )


def cam_reference(q, k, v, normalization: str = 'channel') -> FeatureMap:
    """Softmax-weighted sum of v with scores q * k.

    ``channel``: weights normalized over channels at each pixel; the pixel's
    weighted sum is written to every channel. ``spatial``: weights normalized
    over pixels within each channel; the channel's weighted sum is written to
    every pixel.
    """
    query, key, value = _tensor(q), _tensor(k), _tensor(v)
    _same_shape(query, key, value)
    if normalization not in CAM_NORMALIZATIONS:
        raise InvalidArgumentError(f"normalization must be one of {CAM_NORMALIZATIONS}, got {normalization!r}")
    scores = query * key
    if normalization == 'channel':
        pooled = np.sum(softmax(scores, axis=0) * value, axis=0, keepdims=True)
    else:
        channels = scores.shape[0]
        weights = softmax(scores.reshape(channels, -1), axis=1).reshape(scores.shape)
        pooled = np.sum(weights * value, axis=(1, 2), keepdims=True)
    return FeatureMap(tensor=np.broadcast_to(pooled, value.shape).copy())


def shift(x, dx: int, dy: int, kernel_size: int | None = None) -> FeatureMap:
    """y[c,i,j] = x[c, i+dx, j+dy]; out-of-range reads are zero."""
    data = _tensor(x)
    if kernel_size is not None and max(abs(dx), abs(dy)) > kernel_size // 2:
        raise InvalidArgumentError(f"shift ({dx}, {dy}) exceeds the {kernel_size}x{kernel_size} neighbourhood")
    return FeatureMap(tensor=_shift_array(data, dx, dy))


def _shift_array(data: np.ndarray, dx: int, dy: int) -> np.ndarray:
    _, height, width = data.shape
    output = np.zeros_like(data)
    if abs(dx) >= height or abs(dy) >= width:
        return output
    output[:, max(0, -dx):min(height, height - dx), max(0, -dy):min(width, width - dy)] = \
        data[:, max(0, dx):min(height, height + dx), max(0, dy):min(width, width + dy)]
    return output


def _dense_chain(layers: tuple[DenseLayer, ...], features: np.ndarray) -> np.ndarray:
    """Apply affine layers to the leading axis, ReLU between layers."""
    flat = features.reshape(features.shape[0], -1)
    for index, layer in enumerate(layers):
        flat = layer.weight @ flat + layer.bias[:, np.newaxis]
        if index < len(layers) - 1:
            flat = np.maximum(flat, 0.0)
    return flat.reshape((flat.shape[0],) + features.shape[1:])


def _shift_sum(groups: np.ndarray, w: KernelWeights) -> np.ndarray:
    size, channels = w.kernel_size, w.channels
    half = size // 2
    grouped = groups.reshape((size * size, channels) + groups.shape[1:])
    output = np.zeros(grouped.shape[1:])
    for p in range(size):
        for q in range(size):
            output += _shift_array(grouped[p * size + q], p - half, q - half)
    return output


def cvie(z1, z2, w: KernelWeights) -> FeatureMap:
    """Concat(q2, k1, v1) -> per-pixel MLP into K^2 groups -> shift each group -> sum."""
    query, key, value = project_qkv(z1, z2, w)
    stacked = np.concatenate([query.tensor, key.tensor, value.tensor], axis=0)
    return FeatureMap(tensor=_shift_sum(_dense_chain(w.mlp, stacked), w))


def consistency_branch(z1, w: KernelWeights) -> FeatureMap:
    """The CVIE pipeline fed only by view 1's projections."""
    view1 = _tensor(z1)
    _check_channels(view1, w)
    stacked = np.concatenate([_pointwise(w.w_q, view1), _pointwise(w.w_k, view1), _pointwise(w.w_v, view1)], axis=0)
    return FeatureMap(tensor=_shift_sum(_dense_chain(w.mlp, stacked), w))


def dwa(dwa_input: DwaInput, w: KernelWeights, mode: str = 'softmax') -> tuple[float, float]:
    """Branch weights (K1, K2) from (SNR1, SNR2, SCS).

    ``softmax`` makes the pair sum to one; ``sigmoid`` squashes each weight
    independently into [0, 1].
    """
    if not w.dwa_layers:
        raise InvalidArgumentError("kernel weights carry no DWA layers")
    if mode not in DWA_MODES:
        raise InvalidArgumentError(f"mode must be one of {DWA_MODES}, got {mode!r}")
    logits = _dense_chain(w.dwa_layers, dwa_input.as_vector())
    weights = softmax(logits) if mode == 'softmax' else expit(logits)
    return float(weights[0]), float(weights[1])


def ccf(
    z1,
    z2,
    w: KernelWeights,
    dwa_input: DwaInput | None = None,
    mode: str = 'softmax',
    branch_weights: tuple[float, float] | None = None,
) -> FeatureMap:
    """K1 * complementarity (cvie) + K2 * consistency, weights from dwa unless forced."""
    if branch_weights is None:
        if dwa_input is None:
            raise InvalidArgumentError("ccf needs either a DWA input or explicit branch weights")
        branch_weights = dwa(dwa_input, w, mode)
    complementarity = cvie(z1, z2, w).tensor
    consistency = consistency_branch(z1, w).tensor
    weight1, weight2 = branch_weights
    return FeatureMap(tensor=weight1 * complementarity + weight2 * consistency)
