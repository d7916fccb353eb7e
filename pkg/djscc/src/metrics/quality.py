"""
Reconstruction quality metrics over Image tensors.

Statistics are taken over all channels jointly. SSIM defaults to 8 x 8
non-overlapping blocks; a trailing partial block is dropped.
"""

import math
from collections.abc import Callable, Sequence

import numpy as np
from scipy.ndimage import gaussian_filter

from ..configs import (
    LPIPS_EXTRACTOR_CHANNELS,
    LPIPS_EXTRACTOR_SEED,
    MS_SSIM_DEFAULT_SCALES,
    SSIM_BLOCK_SIZE,
    SSIM_GAUSSIAN_SIGMA,
    SSIM_GAUSSIAN_TRUNCATE,
    SSIM_K1,
    SSIM_K2,
    SSIM_WINDOWS,
)
from ..exceptions import InvalidArgumentError
from ..kernels import conv2d
from ..schemas.base import validated
from ..schemas.metrics import Image
from ..signal_processing import SeededRng


def _image(value, peak: float | None = None) -> Image:
    if isinstance(value, Image):
        return value
    fields = {'pixels': value} if peak is None else {'pixels': value, 'peak': peak}
    return validated(Image, **fields)


def _pair(a, b) -> tuple[Image, Image]:
    first, second = _image(a), _image(b)
    if first.shape != second.shape:
        raise InvalidArgumentError(f"images differ in shape: {first.shape} vs {second.shape}")
    return first, second


def mse(a, b) -> float:
    first, second = _pair(a, b)
    return float(np.mean((first.pixels - second.pixels) ** 2))


def psnr(a, b, peak: float | None = None) -> float:
    """10 log10(peak^2 / mse) in dB; identical images give math.inf."""
    first, second = _pair(a, b)
    peak = first.peak if peak is None else peak
    if peak <= 0:
        raise InvalidArgumentError(f"peak must be positive, got {peak}")
    error = mse(first, second)
    if error == 0:
        return math.inf
    return float(10.0 * np.log10(peak ** 2 / error))


def _constants(peak: float, c1: float | None, c2: float | None) -> tuple[float, float]:
    return (
        (SSIM_K1 * peak) ** 2 if c1 is None else c1,
        (SSIM_K2 * peak) ** 2 if c2 is None else c2,
    )


def _ssim_formula(mu_a, mu_b, var_a, var_b, cov, c1: float, c2: float):
    return ((2 * mu_a * mu_b + c1) * (2 * cov + c2)) / ((mu_a ** 2 + mu_b ** 2 + c1) * (var_a + var_b + c2))


def _block_ssim(x: np.ndarray, y: np.ndarray, c1: float, c2: float, block: int) -> float:
    channels, height, width = x.shape
    rows, cols = height // block, width // block
    if rows == 0 or cols == 0:
        raise InvalidArgumentError(f"{block}x{block} window does not fit a {height}x{width} image")

    def blocks(data: np.ndarray) -> np.ndarray:
        cropped = data[:, :rows * block, :cols * block]
        tiled = cropped.reshape(channels, rows, block, cols, block).transpose(1, 3, 0, 2, 4)
        return tiled.reshape(rows, cols, -1)

    bx, by = blocks(x), blocks(y)
    mu_x, mu_y = bx.mean(axis=-1), by.mean(axis=-1)
    var_x, var_y = bx.var(axis=-1), by.var(axis=-1)
    cov = np.mean((bx - mu_x[..., None]) * (by - mu_y[..., None]), axis=-1)
    return float(np.mean(_ssim_formula(mu_x, mu_y, var_x, var_y, cov, c1, c2)))


def _gaussian_ssim(x: np.ndarray, y: np.ndarray, c1: float, c2: float) -> float:
    radius = int(SSIM_GAUSSIAN_TRUNCATE * SSIM_GAUSSIAN_SIGMA + 0.5)
    if min(x.shape[1:]) < 2 * radius + 1:
        raise InvalidArgumentError(f"gaussian window of width {2 * radius + 1} does not fit a {x.shape[1:]} image")

    def smooth(data: np.ndarray) -> np.ndarray:
        return gaussian_filter(
            data, sigma=(0, SSIM_GAUSSIAN_SIGMA, SSIM_GAUSSIAN_SIGMA),
            truncate=SSIM_GAUSSIAN_TRUNCATE, mode='reflect',
        )

    mu_x, mu_y = smooth(x), smooth(y)
    var_x = smooth(x * x) - mu_x ** 2
    var_y = smooth(y * y) - mu_y ** 2
    cov = smooth(x * y) - mu_x * mu_y
    return float(np.mean(_ssim_formula(mu_x, mu_y, var_x, var_y, cov, c1, c2)))


def ssim(
    a,
    b,
    c1: float | None = None,
    c2: float | None = None,
    window: str = 'block',
    block_size: int = SSIM_BLOCK_SIZE,
) -> float:
    first, second = _pair(a, b)
    c1, c2 = _constants(first.peak, c1, c2)
    return _ssim_arrays(first.pixels, second.pixels, c1, c2, window, block_size)


def _ssim_arrays(x: np.ndarray, y: np.ndarray, c1: float, c2: float, window: str, block_size: int) -> float:
    if window not in SSIM_WINDOWS:
        raise InvalidArgumentError(f"window must be one of {SSIM_WINDOWS}, got {window!r}")
    if window == 'gaussian':
        return _gaussian_ssim(x, y, c1, c2)
    if block_size < 1:
        raise InvalidArgumentError(f"block size must be positive, got {block_size}")
    return _block_ssim(x, y, c1, c2, block_size)


def average_pool(pixels: np.ndarray, factor: int = 2) -> np.ndarray:
    """Non-overlapping factor x factor mean over the last two axes; remainders dropped."""
    channels, height, width = pixels.shape
    rows, cols = height // factor, width // factor
    if rows == 0 or cols == 0:
        raise InvalidArgumentError(f"cannot pool a {height}x{width} map by {factor}")
    cropped = pixels[:, :rows * factor, :cols * factor]
    return cropped.reshape(channels, rows, factor, cols, factor).mean(axis=(2, 4))


def ms_ssim(
    a,
    b,
    scales: int = MS_SSIM_DEFAULT_SCALES,
    window: str = 'block',
    block_size: int = SSIM_BLOCK_SIZE,
) -> float:
    """Unweighted geometric mean of per-scale SSIM with 2x average pooling between scales.

    The M-th root keeps the sign of the product so the result stays in [-1, 1].
    """
    first, second = _pair(a, b)
    if scales < 1:
        raise InvalidArgumentError(f"scale count must be positive, got {scales}")
    smallest = min(first.shape[1:]) // 2 ** (scales - 1)
    if smallest < (block_size if window == 'block' else 1):
        raise InvalidArgumentError(f"image {first.shape[1:]} is too small for {scales} scales")
    c1, c2 = _constants(first.peak, None, None)
    x, y = first.pixels, second.pixels
    product = 1.0
    for scale in range(scales):
        if scale:
            x, y = average_pool(x), average_pool(y)
        product *= _ssim_arrays(x, y, c1, c2, window, block_size)
    return float(np.sign(product) * abs(product) ** (1.0 / scales))


class FeatureExtractor:
    """Ordered layer maps applied in sequence; every layer output is tapped.

    ``weights[i]`` scales the channels of layer i's output in lpips.
    """

    def __init__(self, layers: Sequence[Callable[[np.ndarray], np.ndarray]], weights: Sequence[np.ndarray]):
        if len(layers) != len(weights) or not layers:
            raise InvalidArgumentError(f"need one weight vector per layer, got {len(layers)} layers and {len(weights)} weights")
        self.layers = tuple(layers)
        self.weights = tuple(np.asarray(w, dtype=float) for w in weights)

    def features(self, pixels: np.ndarray) -> list[np.ndarray]:
        outputs = []
        current = pixels
        for index, layer in enumerate(self.layers):
            current = layer(current)
            if current.ndim != 3 or current.shape[0] != self.weights[index].size:
                raise InvalidArgumentError(
                    f"layer {index} produced shape {current.shape}, weights expect {self.weights[index].size} channels"
                )
            outputs.append(current)
        return outputs


def identity_extractor(channels: int, weight: float = 1.0) -> FeatureExtractor:
    return FeatureExtractor([lambda pixels: pixels], [np.full(channels, weight)])


class FixedConvExtractor(FeatureExtractor):
    """Seeded 3x3 convolutions with ReLU, 2x pooling between layers."""

    def __init__(
        self,
        in_channels: int,
        channels: Sequence[int] = LPIPS_EXTRACTOR_CHANNELS,
        seed: int = LPIPS_EXTRACTOR_SEED,
    ):
        rng = SeededRng(seed)
        layers, weights = [], []
        fan_in = in_channels
        for index, width in enumerate(channels):
            kernel = rng.standard_normal((3, 3, fan_in, width)) / np.sqrt(9 * fan_in)
            layers.append(self._layer(kernel, pool=index > 0))
            weights.append(rng.uniform(0.5, 1.5, width))
            fan_in = width
        super().__init__(layers, weights)

    @staticmethod
    def _layer(kernel: np.ndarray, pool: bool) -> Callable[[np.ndarray], np.ndarray]:
        def apply(pixels: np.ndarray) -> np.ndarray:
            source = average_pool(pixels) if pool else pixels
            return np.maximum(conv2d(source, kernel).tensor, 0.0)
        return apply


def lpips(a, b, extractor: FeatureExtractor | None = None) -> float:
    """sum_i mean_{h,w} || w_i * (y_i - y'_i) ||^2 over the extractor's layers."""
    first, second = _pair(a, b)
    extractor = extractor or FixedConvExtractor(first.shape[0])
    features_a = extractor.features(first.pixels)
    features_b = extractor.features(second.pixels)
    total = 0.0
    for weight, ya, yb in zip(extractor.weights, features_a, features_b):
        weighted = weight[:, np.newaxis, np.newaxis] * (ya - yb)
        total += float(np.sum(weighted ** 2) / (ya.shape[1] * ya.shape[2]))
    return total
