"""
Configuration constants and settings for the simulator.
Centralizes defaults, tolerances and fixed seeds.
"""

# Random generation
RNG_ALGORITHM = "PCG64"
MAX_SEED = 2**64 - 1
DEFAULT_SEED = 0

# Pilots are QPSK constants drawn once from this seed
PILOT_SEED = 20240601

# Simulation parameter defaults
CHANNEL_DEFAULTS = {
    'num_taps': 8,
    'decay': 4.0,
}

OFDM_DEFAULTS = {
    'n_info_symbols': 3,
    'n_pilot_symbols': 2,
    'n_subcarriers': 2048,
    'cp_length': 16,
}

SOURCE_DEFAULTS = {
    'mean1': 0.0,
    'mean2': 0.0,
    'variance1': 1.0,
    'variance2': 1.0,
    'correlation': 0.8,
}

TRANSMISSION_DEFAULTS = {
    'snr_low_db': -8.0,
    'snr_high_db': 2.0,
    'compression1': 1 / 6,
    'compression2': 1 / 6,
    'power_total1': 0.5,
    'power_total2': 0.5,
}

SWEEP_DEFAULTS = {
    'clipping_ratios': [1.0, 1.4, 2.0, 3.0],
    'pilot_counts': [1, 2, 4, 8],
    'csi_error_variances': [0.0, 0.01, 0.05, 0.1, 0.2],
    'snr_step_db': 1.0,
}

DEFAULT_TRIALS = 100

# Numerical tolerances
PMF_SUM_TOLERANCE = 1e-12
MI_MONOTONE_TOLERANCE = 1e-9
MMSE_DIAGONAL_LOADING = 1e-12
CCA_RANK_TOLERANCE = 1e-10

# Crossview kernels
DWA_HIDDEN_WIDTH = 16
DWA_MODES = ('softmax', 'sigmoid')
CAM_NORMALIZATIONS = ('channel', 'spatial')
WEIGHT_FILE_MAGIC = b'DJSW'
WEIGHT_FILE_VERSION = 1

# Quality metrics
SSIM_K1 = 0.01
SSIM_K2 = 0.03
SSIM_BLOCK_SIZE = 8
SSIM_GAUSSIAN_SIGMA = 1.5
SSIM_GAUSSIAN_TRUNCATE = 3.5
SSIM_WINDOWS = ('block', 'gaussian')
MS_SSIM_DEFAULT_SCALES = 3
LPIPS_EXTRACTOR_SEED = 7
LPIPS_EXTRACTOR_CHANNELS = (8, 16, 16)

# Result files
CSV_FLOAT_FORMAT = '%.12g'

# Oracle check sizes
MI_CHECK_CONFIG = {
    'instances': 1000,
    'max_alphabet': 6,
    'max_depth': 4,
    'gaussian_draws': 1000,
}

CVIE_CHECK_CONFIG = {
    'instances': 100,
    'kernel_sizes': (1, 3, 5),
    'channels': 3,
    'height': 6,
    'width': 7,
    'tolerance': 1e-10,
}

POSTERIOR_CHECK_CONFIG = {
    'draws': 20,
    'samples': 10_000_000,
    'chunk_size': 1_000_000,
    'tolerance': 0.01,
}
