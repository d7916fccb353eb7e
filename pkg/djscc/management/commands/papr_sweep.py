from djscc.src.services import emit_csv, summarize_papr

from ._base import ExperimentCommand


class Command(ExperimentCommand):
    help = 'PAPR and decode MSE per clipping ratio, unclipped reference included'
    kind = 'papr_sweep'

    def add_arguments(self, parser):
        super().add_arguments(parser)
        parser.add_argument('--ccdf-out', type=str, help='Also write the per-ratio PAPR CCDF table here')

    def after_rows(self, rows, options):
        if options['ccdf_out']:
            path = emit_csv(summarize_papr(rows), options['ccdf_out'])
            self.say(f'Wrote PAPR CCDF to {path}')
