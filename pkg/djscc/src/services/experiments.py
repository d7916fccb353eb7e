import logging

from pydantic import BaseModel

from .pipeline import run_toy_pipeline
from .sweeps import sweep_csi_error, sweep_papr, sweep_scs_vs_snr
from ..exceptions import InvalidArgumentError
from ..schemas.experiments import CsiSweepRow, ExperimentConfig, PaprSweepRow, ScsSweepRow, TrialRecord
from ..signal_processing import SeededRng

logger = logging.getLogger(__name__)

EXPERIMENTS = {
    'pipeline': (lambda cfg, rng: list(run_toy_pipeline(cfg, rng)), TrialRecord),
    'scs_sweep': (sweep_scs_vs_snr, ScsSweepRow),
    'papr_sweep': (sweep_papr, PaprSweepRow),
    'csi_sweep': (sweep_csi_error, CsiSweepRow),
}

EXPERIMENT_KINDS = tuple(EXPERIMENTS)


def run_experiment(kind: str, cfg: ExperimentConfig, rng: SeededRng | None = None) -> tuple[list[BaseModel], type[BaseModel]]:
    """Run one experiment kind and return its rows with the row type."""
    if kind not in EXPERIMENTS:
        raise InvalidArgumentError(f"unknown experiment kind {kind!r}; expected one of {EXPERIMENT_KINDS}")
    runner, row_type = EXPERIMENTS[kind]
    rng = rng or SeededRng(cfg.run.seed)
    logger.info(f"Starting {kind} with seed {rng.seed} and {cfg.run.trials} trials")
    return runner(cfg, rng), row_type
