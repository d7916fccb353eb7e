from django.core.management.base import CommandError

from djscc.src.configs import CVIE_CHECK_CONFIG
from djscc.src.services import run_cvie_check

from ._base import CheckCommand


class Command(CheckCommand):
    help = 'Check that CVIE with conv-equivalent weights reproduces K x K convolution'
    check = 'cvie_check'

    def run(self, options):
        rng, trials = self.run_settings(options)
        report = run_cvie_check(rng, instances=trials or CVIE_CHECK_CONFIG['instances'])
        for size, error in sorted(report.max_error_by_kernel.items()):
            self.say(f'K={size}: max error {error:.3e}')
        self.stdout.write(f'max error {report.max_error:.3e}')
        self.write_summary(options, report.passed, report.instances, report.max_error, report.tolerance)
        if not report.passed:
            raise CommandError(f'CVIE deviates from conv2d by {report.max_error:.3e} > {report.tolerance:.0e}')
        self.say('CVIE check passed', self.style.SUCCESS)
