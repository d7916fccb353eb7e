from ..information.similarity import scs
from .quality import (
    FeatureExtractor,
    FixedConvExtractor,
    average_pool,
    identity_extractor,
    lpips,
    ms_ssim,
    mse,
    psnr,
    ssim,
)

__all__ = [
    'FeatureExtractor',
    'FixedConvExtractor',
    'average_pool',
    'identity_extractor',
    'lpips',
    'ms_ssim',
    'mse',
    'psnr',
    'scs',
    'ssim',
]
