from django.core.management.base import CommandError

from djscc.src.configs import POSTERIOR_CHECK_CONFIG
from djscc.src.services import run_posterior_check

from ._base import CheckCommand


class Command(CheckCommand):
    help = 'Monte Carlo check of the closed-form posterior mean coefficients and variance'
    check = 'posterior_check'

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--samples', type=int, default=POSTERIOR_CHECK_CONFIG['samples'])
        parser.add_argument('--chunk-size', type=int, default=POSTERIOR_CHECK_CONFIG['chunk_size'])
        parser.add_argument('--tolerance', type=float, default=POSTERIOR_CHECK_CONFIG['tolerance'])

    def run(self, options):
        if options['samples'] < 1 or options['chunk_size'] < 1:
            raise CommandError('--samples and --chunk-size must be positive')
        rng, trials = self.run_settings(options)
        report = run_posterior_check(
            rng,
            draws=trials or POSTERIOR_CHECK_CONFIG['draws'],
            samples=options['samples'],
            chunk_size=options['chunk_size'],
            tolerance=options['tolerance'],
        )
        for draw in report.draws:
            self.say(
                f'draw {draw.draw:2d} (csi error: {draw.csi_error}): '
                f'coefficients {draw.coefficient_error:.2e}, variance {draw.variance_error:.2e}'
            )
        self.write_summary(options, report.passed, len(report.draws), report.max_error, report.tolerance)
        if not report.passed:
            raise CommandError(f'posterior check exceeded {report.tolerance:.0%} (max error {report.max_error:.2e})')
        self.say(f'Posterior check passed, max error {report.max_error:.2e}', self.style.SUCCESS)
