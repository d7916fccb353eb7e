import uuid

from django.db import models


class SimulationRun(models.Model):
    """One sweep or pipeline run executed by Celery."""

    class Status(models.TextChoices):
        PENDING = 'PENDING', 'Pending'
        RUNNING = 'RUNNING', 'Running'
        COMPLETED = 'COMPLETED', 'Completed'
        FAILED = 'FAILED', 'Failed'

    class Kind(models.TextChoices):
        PIPELINE = 'pipeline', 'Toy pipeline'
        SCS_SWEEP = 'scs_sweep', 'SCS vs SNR sweep'
        PAPR_SWEEP = 'papr_sweep', 'PAPR / clipping sweep'
        CSI_SWEEP = 'csi_sweep', 'CSI error sweep'

    id = models.UUIDField(primary_key=True, default=uuid.uuid4, editable=False)
    kind = models.CharField(max_length=20, choices=Kind.choices, db_index=True)
    status = models.CharField(max_length=20, choices=Status.choices, default=Status.PENDING, db_index=True)
    config = models.JSONField(default=dict, blank=True, help_text="Section overrides applied to the default experiment config.")
    seed = models.PositiveBigIntegerField(default=0)
    trials = models.PositiveIntegerField(default=100)
    row_count = models.PositiveIntegerField(default=0)
    result_path = models.CharField(max_length=500, blank=True)
    summary = models.JSONField(null=True, blank=True)
    error = models.TextField(blank=True)
    started_at = models.DateTimeField(null=True, blank=True)
    finished_at = models.DateTimeField(null=True, blank=True)
    created_at = models.DateTimeField(auto_now_add=True)
    updated_at = models.DateTimeField(auto_now=True)

    def __str__(self) -> str:
        return f"SimulationRun<{self.id}> {self.kind} [{self.status}]"

    class Meta:
        ordering = ['-created_at']
        indexes = [
            models.Index(fields=["status", "created_at"], name="simrun_status_created_idx"),
        ]
