"""
Parameter sweeps over the toy pipeline.

Every sweep reuses ``rng.child(trial)`` for trial ``trial`` at every grid
point, so grid points are compared on common sources, channels and noise.
"""

import logging
import math
from collections.abc import Iterable

import numpy as np

from .pipeline import simulate_trial
from ..ofdm import papr_ccdf
from ..schemas.experiments import CsiSweepRow, ExperimentConfig, PaprCcdfRow, PaprSweepRow, ScsSweepRow, TrialRecord
from ..signal_processing import SeededRng

logger = logging.getLogger(__name__)


def snr_grid(cfg: ExperimentConfig) -> list[float]:
    """Explicit sweep grid, else low..high inclusive in snr_step_db steps."""
    if cfg.sweep.snr_grid:
        return [float(snr) for snr in cfg.sweep.snr_grid]
    low, high, step = cfg.transmission.snr_low_db, cfg.transmission.snr_high_db, cfg.sweep.snr_step_db
    return [round(float(snr), 10) for snr in np.arange(low, high + step / 2, step)]


def sweep_scs_vs_snr(cfg: ExperimentConfig, rng: SeededRng | None = None) -> list[ScsSweepRow]:
    rng = rng or SeededRng(cfg.run.seed)
    trials = cfg.run.trials
    rows = []
    for snr in snr_grid(cfg):
        values = [simulate_trial(cfg, rng.child(trial), trial, snrs=(snr, snr)).scs for trial in range(trials)]
        rows.append(ScsSweepRow(snr_db=snr, mean_scs=float(np.mean(values)), trials=trials))
        logger.info(f"SCS sweep: {snr:.2f} dB -> {rows[-1].mean_scs:.6f}")
    return rows


def sweep_papr(cfg: ExperimentConfig, rng: SeededRng | None = None) -> list[PaprSweepRow]:
    """Per-trial PAPR and MSE for each configured ratio plus the unclipped reference (inf)."""
    rng = rng or SeededRng(cfg.run.seed)
    ratios = list(dict.fromkeys([*cfg.clipping.ratios, math.inf]))
    rows = []
    for ratio in ratios:
        for trial in range(cfg.run.trials):
            record = simulate_trial(cfg, rng.child(trial), trial, clipping_ratio=ratio)
            rows.append(PaprSweepRow(
                clipping_ratio=ratio,
                trial=trial,
                papr_db=record.papr_clipped_db,
                mse=(record.mse1 + record.mse2) / 2.0,
            ))
        logger.info(f"PAPR sweep: ratio {ratio} done")
    return rows


def summarize_papr(rows: Iterable[PaprSweepRow], thresholds_db=None) -> list[PaprCcdfRow]:
    """CCDF of PAPR per clipping ratio, in first-seen ratio order.

    Default thresholds span the observed PAPR range in 0.5 dB steps.
    """
    rows = list(rows)
    if not rows:
        return []
    grouped: dict[float, list[float]] = {}
    for row in rows:
        grouped.setdefault(row.clipping_ratio, []).append(row.papr_db)
    if thresholds_db is None:
        values = [row.papr_db for row in rows]
        thresholds_db = np.arange(math.floor(min(values)), math.ceil(max(values)) + 0.25, 0.5)
    thresholds = np.asarray(thresholds_db, dtype=float)
    summary = []
    for ratio, values in grouped.items():
        for threshold, probability in zip(thresholds, papr_ccdf(values, thresholds)):
            summary.append(PaprCcdfRow(clipping_ratio=ratio, threshold_db=float(threshold), ccdf=float(probability)))
    return summary


def _csi_row(mode: str, parameter: float, records: list[TrialRecord]) -> CsiSweepRow:
    def mean_of(*fields: str) -> float:
        return float(np.mean([getattr(record, field) for record in records for field in fields]))

    return CsiSweepRow(
        csi_mode=mode,
        parameter=parameter,
        csi_error_variance=mean_of('csi_error_variance1', 'csi_error_variance2'),
        mse=mean_of('mse1', 'mse2'),
        theory_variance=mean_of('theory_variance1', 'theory_variance2'),
        noisy_correlation=mean_of('noisy_correlation'),
        empirical_correlation=mean_of('empirical_correlation'),
        trials=len(records),
    )


def sweep_csi_error(cfg: ExperimentConfig, rng: SeededRng | None = None) -> list[CsiSweepRow]:
    """Pilot-count sweep for each estimated-CSI mode, then the synthetic sigma_e^2 sweep."""
    rng = rng or SeededRng(cfg.run.seed)
    trials = range(cfg.run.trials)
    rows = []
    for mode in cfg.sweep.csi_modes:
        for n_pilots in cfg.sweep.pilot_counts:
            variant = cfg.updated(ofdm={'n_pilot_symbols': n_pilots})
            records = [simulate_trial(variant, rng.child(trial), trial, csi_mode=mode) for trial in trials]
            rows.append(_csi_row(mode, float(n_pilots), records))
            logger.info(f"CSI sweep: {mode} with {n_pilots} pilots -> mse {rows[-1].mse:.6g}")
    for variance in cfg.sweep.csi_error_variances:
        records = [
            simulate_trial(cfg, rng.child(trial), trial, csi_mode='synthetic', csi_error_variance=variance)
            for trial in trials
        ]
        rows.append(_csi_row('synthetic', float(variance), records))
        logger.info(f"CSI sweep: synthetic sigma_e^2={variance} -> mse {rows[-1].mse:.6g}")
    return rows
