import logging
import traceback
from pathlib import Path

from django.conf import settings
from django.core.management.base import BaseCommand, CommandError

from djscc.src.configs import DEFAULT_SEED
from djscc.src.exceptions import DjsccError
from djscc.src.schemas.experiments import CheckSummaryRow, ExperimentConfig
from djscc.src.services import apply_overrides, emit_csv, load_experiment_config, run_experiment
from djscc.src.signal_processing import SeededRng

logger = logging.getLogger(__name__)


class SimulationCommand(BaseCommand):
    """Shared flags and error reporting; subclasses implement ``run``."""

    def add_arguments(self, parser):
        parser.add_argument('--seed', type=int, help='64-bit unsigned seed')
        parser.add_argument('--trials', type=int, help='Number of trials or random instances')
        parser.add_argument('--quiet', action='store_true', help='Suppress progress output')
        parser.add_argument('--debug', action='store_true', help='Print tracebacks on failure')

    def say(self, message: str, style=None):
        if not self.quiet:
            self.stdout.write(style(message) if style else message)

    def handle(self, *args, **options):
        self.quiet = options['quiet']
        try:
            self.run(options)
        except CommandError:
            raise
        except (DjsccError, ValueError) as e:
            if options['debug']:
                self.stderr.write(traceback.format_exc())
            logger.error(f"{self.__module__.rsplit('.', 1)[-1]} failed: {e}")
            raise CommandError(str(e)) from e

    def run(self, options):
        raise NotImplementedError


class CheckCommand(SimulationCommand):
    """Oracle checks sharing the experiment flags.

    ``--config`` supplies [run] seed and trials when the flags are omitted;
    ``--out`` saves a one-row CSV summary.
    """

    check: str = ''

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--config', type=str, help='Experiment config file (INI); only [run] is used')
        parser.add_argument('--out', type=str, help='Optional CSV summary path')

    def run_settings(self, options) -> tuple[SeededRng, int | None]:
        seed, trials = options['seed'], options['trials']
        if options['config']:
            run = load_experiment_config(options['config']).run
            if seed is None:
                seed = run.seed
            if trials is None and 'trials' in run.model_fields_set:
                trials = run.trials
        return SeededRng(DEFAULT_SEED if seed is None else seed), trials

    def write_summary(self, options, passed: bool, instances: int, max_error: float, tolerance: float):
        if not options['out']:
            return
        row = CheckSummaryRow(
            check=self.check, passed=passed, instances=instances, max_error=max_error, tolerance=tolerance
        )
        path = emit_csv([row], options['out'])
        self.say(f'Wrote summary to {path}')


class ExperimentCommand(SimulationCommand):
    """Runs one experiment kind and writes its rows as CSV."""

    kind: str = ''

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--config', type=str, help='Experiment config file (INI)')
        parser.add_argument('--out', type=str, help='CSV output path; defaults to DJSCC_RESULTS_DIR')

    def load_config(self, options) -> ExperimentConfig:
        config = load_experiment_config(options['config'])
        return apply_overrides(config, seed=options['seed'], trials=options['trials'])

    def output_path(self, options, config: ExperimentConfig) -> Path:
        if options['out']:
            return Path(options['out'])
        return Path(settings.DJSCC_RESULTS_DIR) / f'{self.kind}-seed{config.run.seed}.csv'

    def run(self, options):
        config = self.load_config(options)
        self.say(f'Running {self.kind} (seed={config.run.seed}, trials={config.run.trials})')
        rows, row_type = run_experiment(self.kind, config, SeededRng(config.run.seed))
        path = emit_csv(rows, self.output_path(options, config), row_type)
        self.after_rows(rows, options)
        self.say(f'Wrote {len(rows)} rows to {path}', self.style.SUCCESS)

    def after_rows(self, rows, options):
        pass
