from .checks import run_cvie_check, run_mi_check, run_posterior_check
from .config_loader import apply_overrides, load_experiment_config, parse_config_text
from .experiments import EXPERIMENT_KINDS, run_experiment
from .pipeline import run_toy_pipeline, simulate_trial
from .records import emit_csv, parse_csv
from .sweeps import snr_grid, summarize_papr, sweep_csi_error, sweep_papr, sweep_scs_vs_snr

__all__ = [
    'EXPERIMENT_KINDS',
    'apply_overrides',
    'emit_csv',
    'load_experiment_config',
    'parse_config_text',
    'parse_csv',
    'run_cvie_check',
    'run_experiment',
    'run_mi_check',
    'run_posterior_check',
    'run_toy_pipeline',
    'simulate_trial',
    'snr_grid',
    'summarize_papr',
    'sweep_csi_error',
    'sweep_papr',
    'sweep_scs_vs_snr',
]
