import tempfile
from io import StringIO
from pathlib import Path

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase, override_settings

from djscc.src.kernels import load_kernel_weights
from djscc.src.schemas.experiments import CheckSummaryRow, CsiSweepRow, PaprCcdfRow, PaprSweepRow, ScsSweepRow, TrialRecord
from djscc.src.services import parse_csv

SMALL_INI = """
[ofdm]
n_subcarriers = 64
cp_length = 8

[sweep]
snr_grid = 0, 10
pilot_counts = 2
csi_modes = ls
csi_error_variances = 0.0, 0.05

[clipping]
ratios = 1.4
"""


class CommandTestCase(SimpleTestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)
        self.dir = Path(self.tmp.name)
        self.config = self.dir / 'small.ini'
        self.config.write_text(SMALL_INI)

    def call(self, name, *args):
        out = StringIO()
        call_command(name, *args, stdout=out, stderr=StringIO())
        return out.getvalue()


class ExperimentCommandTest(CommandTestCase):
    def test_pipeline_writes_one_row_per_trial(self):
        out_path = self.dir / 'trials.csv'
        output = self.call('pipeline', '--config', str(self.config), '--trials', '3', '--seed', '5', '--out', str(out_path))

        records = parse_csv(out_path, TrialRecord)
        self.assertEqual([record.trial for record in records], [0, 1, 2])
        self.assertIn('Wrote 3 rows', output)

    def test_pipeline_is_reproducible(self):
        first, second = self.dir / 'a.csv', self.dir / 'b.csv'
        self.call('pipeline', '--config', str(self.config), '--trials', '2', '--seed', '9', '--out', str(first), '--quiet')
        self.call('pipeline', '--config', str(self.config), '--trials', '2', '--seed', '9', '--out', str(second), '--quiet')

        self.assertEqual(first.read_bytes(), second.read_bytes())

    def test_default_output_location(self):
        with override_settings(DJSCC_RESULTS_DIR=self.dir / 'results'):
            self.call('scs_sweep', '--config', str(self.config), '--trials', '1', '--seed', '4')

        rows = parse_csv(self.dir / 'results' / 'scs_sweep-seed4.csv', ScsSweepRow)
        self.assertEqual([row.snr_db for row in rows], [0.0, 10.0])

    def test_papr_sweep_with_ccdf(self):
        out_path, ccdf_path = self.dir / 'papr.csv', self.dir / 'ccdf.csv'
        self.call('papr_sweep', '--config', str(self.config), '--trials', '2',
                  '--out', str(out_path), '--ccdf-out', str(ccdf_path))

        self.assertEqual(len(parse_csv(out_path, PaprSweepRow)), 4)
        self.assertTrue(parse_csv(ccdf_path, PaprCcdfRow))

    def test_csi_sweep(self):
        out_path = self.dir / 'csi.csv'
        self.call('csi_sweep', '--config', str(self.config), '--trials', '1', '--out', str(out_path))

        rows = parse_csv(out_path, CsiSweepRow)
        self.assertEqual([row.csi_mode for row in rows], ['ls', 'synthetic', 'synthetic'])

    def test_bad_config_is_a_command_error(self):
        self.config.write_text("[ofdm]\nn_subcarriers = -1\n")
        with self.assertRaises(CommandError):
            self.call('pipeline', '--config', str(self.config), '--out', str(self.dir / 'x.csv'))

    def test_missing_config_is_a_command_error(self):
        with self.assertRaises(CommandError):
            self.call('pipeline', '--config', str(self.dir / 'absent.ini'))

    def test_invalid_seed_is_a_command_error(self):
        with self.assertRaises(CommandError):
            self.call('pipeline', '--config', str(self.config), '--seed', '-1')


class CheckCommandTest(CommandTestCase):
    def test_mi_check(self):
        output = self.call('mi_check', '--trials', '50', '--gaussian-draws', '20')

        self.assertIn('0 violations', output)
        self.assertIn('MI check passed', output)

    def test_cvie_check(self):
        output = self.call('cvie_check', '--trials', '6')

        self.assertIn('K=5', output)
        self.assertIn('CVIE check passed', output)

    def test_cvie_check_quiet_still_reports_error(self):
        output = self.call('cvie_check', '--trials', '3', '--quiet')

        self.assertTrue(output.startswith('max error'))

    def test_posterior_check(self):
        output = self.call('posterior_check', '--trials', '2', '--samples', '300000', '--chunk-size', '100000',
                           '--tolerance', '0.05')

        self.assertIn('Posterior check passed', output)

    def test_check_writes_summary(self):
        path = self.dir / 'cvie.csv'
        self.call('cvie_check', '--trials', '4', '--out', str(path), '--quiet')

        (row,) = parse_csv(path, CheckSummaryRow)
        self.assertEqual(row.check, 'cvie_check')
        self.assertTrue(row.passed)
        self.assertEqual(row.instances, 4)
        self.assertLessEqual(row.max_error, row.tolerance)

    def test_check_takes_run_section_from_config(self):
        config = self.dir / 'run.ini'
        config.write_text('[run]\ntrials = 3\nseed = 11\n')
        path = self.dir / 'mi.csv'
        self.call('mi_check', '--config', str(config), '--gaussian-draws', '5', '--out', str(path))

        (row,) = parse_csv(path, CheckSummaryRow)
        self.assertEqual(row.instances, 3)
        self.assertTrue(row.passed)

    def test_posterior_check_rejects_bad_sizes(self):
        with self.assertRaises(CommandError):
            self.call('posterior_check', '--samples', '0')

    def test_export_weights(self):
        path = self.dir / 'weights.djsw'
        self.call('export_weights', '--out', str(path), '--channels', '3', '--kernel-size', '5')

        weights = load_kernel_weights(path)
        self.assertEqual((weights.channels, weights.kernel_size), (3, 5))
