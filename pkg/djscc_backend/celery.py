"""
Celery configuration for the djscc_backend project.
"""
import os

from celery import Celery
from django.conf import settings

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'djscc_backend.settings')

app = Celery('djscc_backend')

# Using a string here means the worker doesn't have to serialize
# the configuration object to child processes.
app.config_from_object('django.conf:settings', namespace='CELERY')

app.autodiscover_tasks()

app.conf.update(
    task_serializer='json',
    accept_content=['json'],
    result_serializer='json',
    timezone=settings.TIME_ZONE,
    enable_utc=True,
    task_track_started=True,

    # Full-size sweeps run for minutes, not hours
    task_time_limit=60 * 60,
    task_soft_time_limit=55 * 60,

    # One numeric job per worker process at a time
    worker_prefetch_multiplier=1,
    worker_max_tasks_per_child=100,

    task_acks_late=True,
    task_reject_on_worker_lost=True,

    result_expires=24 * 3600,

    task_routes={
        'simulations.tasks.execute_simulation_run': {'queue': 'simulations'},
    },
    task_default_queue='default',
    task_queues={
        'default': {'exchange': 'default', 'routing_key': 'default'},
        'simulations': {'exchange': 'simulations', 'routing_key': 'simulations'},
    },
    worker_pool='prefork',
    worker_concurrency=2,
)

