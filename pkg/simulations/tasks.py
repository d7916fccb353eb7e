"""
Celery task executing a SimulationRun and writing its CSV.
"""

import logging
from pathlib import Path

import numpy as np
from celery import shared_task
from django.conf import settings
from django.utils import timezone

from djscc.src.schemas.experiments import ExperimentConfig
from djscc.src.services import apply_overrides, emit_csv, run_experiment
from djscc.src.signal_processing import SeededRng

from .models import SimulationRun

logger = logging.getLogger(__name__)


def _initialize_run(run_id: str) -> SimulationRun:
    """Fetches the run and marks it RUNNING."""
    run = SimulationRun.objects.get(id=run_id)
    run.status = SimulationRun.Status.RUNNING
    run.started_at = timezone.now()
    run.error = ''
    run.save(update_fields=["status", "started_at", "error", "updated_at"])
    return run


def build_config(run: SimulationRun) -> ExperimentConfig:
    """Default config with the run's section overrides, seed and trial count."""
    return apply_overrides(ExperimentConfig.model_validate(run.config), seed=run.seed, trials=run.trials)


def summarize_rows(rows) -> dict:
    """Column means of the numeric fields, for the run detail view."""
    if not rows:
        return {}
    summary = {}
    for field in type(rows[0]).model_fields:
        values = [getattr(row, field) for row in rows]
        if all(isinstance(value, (int, float)) and not isinstance(value, bool) for value in values):
            finite = [value for value in values if np.isfinite(value)]
            if finite:
                summary[field] = float(np.mean(finite))
    return summary


def _result_path(run: SimulationRun) -> Path:
    return Path(settings.DJSCC_RESULTS_DIR) / f"{run.kind}-{run.id}.csv"


def _handle_success(run: SimulationRun, rows, path: Path):
    run.status = SimulationRun.Status.COMPLETED
    run.row_count = len(rows)
    run.result_path = str(path)
    run.summary = summarize_rows(rows)
    run.finished_at = timezone.now()
    run.save(update_fields=["status", "row_count", "result_path", "summary", "finished_at", "updated_at"])
    logger.info(f"Simulation run {run.id} completed with {len(rows)} rows.")


def _handle_failure(exc: Exception, run: SimulationRun):
    logger.error(f"Simulation run {run.id} failed: {exc}")
    run.status = SimulationRun.Status.FAILED
    run.error = str(exc)
    run.finished_at = timezone.now()
    run.save(update_fields=["status", "error", "finished_at", "updated_at"])


@shared_task(bind=True)
def execute_simulation_run(self, run_id: str):
    run = None
    try:
        run = _initialize_run(run_id)
        config = build_config(run)
        rows, row_type = run_experiment(run.kind, config, SeededRng(config.run.seed))
        path = emit_csv(rows, _result_path(run), row_type)
        _handle_success(run, rows, path)
        return {"status": "success", "run_id": run_id}
    except SimulationRun.DoesNotExist:
        logger.error(f"Simulation run {run_id} does not exist.")
        raise
    except Exception as exc:
        if run:
            _handle_failure(exc, run)
        return {"status": "failed", "run_id": run_id, "error": str(exc)}
