from django.core.management.base import CommandError

from djscc.src.configs import MI_CHECK_CONFIG, MI_MONOTONE_TOLERANCE
from djscc.src.services import run_mi_check

from ._base import CheckCommand


class Command(CheckCommand):
    help = 'Brute-force check that MI never increases along independent per-view processing stages'
    check = 'mi_check'

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--gaussian-draws', type=int, default=MI_CHECK_CONFIG['gaussian_draws'])

    def run(self, options):
        rng, trials = self.run_settings(options)
        report = run_mi_check(
            rng,
            instances=trials or MI_CHECK_CONFIG['instances'],
            gaussian_draws=options['gaussian_draws'],
        )
        self.say(
            f'{report.instances} stage chains: {report.violations} violations, '
            f'max increase {report.max_increase:.3e}'
        )
        self.say(f'{report.gaussian_draws} Gaussian draws: {report.gaussian_violations} violations')
        self.write_summary(options, report.passed, report.instances, report.max_increase, MI_MONOTONE_TOLERANCE)
        if not report.passed:
            raise CommandError('mutual information check failed')
        self.say('MI check passed', self.style.SUCCESS)
