from .estimation import estimate_csi_ls, estimate_csi_mmse, ls_error_variance, perturb_csi
from .fading import apply_channel, frequency_response, noise_variance_for_snr, sample_channel

__all__ = [
    'apply_channel',
    'estimate_csi_ls',
    'estimate_csi_mmse',
    'frequency_response',
    'ls_error_variance',
    'noise_variance_for_snr',
    'perturb_csi',
    'sample_channel',
]
