import tempfile
from pathlib import Path

import numpy as np
from django.test import SimpleTestCase
from numpy.testing import assert_allclose

from djscc.src.channel import apply_channel, frequency_response, sample_channel
from djscc.src.exceptions import InvalidArgumentError
from djscc.src.ofdm import (
    clip,
    export_packet,
    load_packet,
    make_frame_config,
    ofdm_demodulate,
    ofdm_modulate,
    papr,
    papr_ccdf,
    power_normalize,
    qpsk_pilots,
)
from djscc.src.schemas.channel import ChannelProfile, ChannelRealization
from djscc.src.signal_processing import SeededRng, complex_gaussian_array


class ModemTest(SimpleTestCase):
    def setUp(self):
        self.rng = SeededRng(23)
        self.cfg = make_frame_config(n_info_symbols=3, n_pilot_symbols=2, n_subcarriers=64, cp_length=16)

    def _symbols(self, cfg=None):
        cfg = cfg or self.cfg
        return complex_gaussian_array(self.rng, (cfg.n_info_symbols, cfg.n_subcarriers), 1.0)

    def test_packet_layout(self):
        packet = ofdm_modulate(self._symbols(), self.cfg)

        self.assertEqual(packet.samples.size, 5 * 80)
        self.assertEqual(self.cfg.packet_length, 400)
        rows = packet.samples.reshape(5, 80)
        assert_allclose(rows[:, :16], rows[:, 64:], rtol=0, atol=0)

    def test_pilots_are_unit_qpsk(self):
        pilots = qpsk_pilots(2, 64)

        assert_allclose(np.abs(pilots), 1.0)
        assert_allclose(qpsk_pilots(2, 64), pilots, rtol=0, atol=0)
        self.assertTrue(set(np.round(pilots.real * np.sqrt(2)).astype(int).ravel()) <= {-1, 1})

    def test_round_trip(self):
        for n_subcarriers, cp_length in ((1, 0), (8, 0), (64, 16), (128, 3)):
            cfg = make_frame_config(n_info_symbols=2, n_pilot_symbols=1, n_subcarriers=n_subcarriers, cp_length=cp_length)
            symbols = self._symbols(cfg)
            info, pilots = ofdm_demodulate(ofdm_modulate(symbols, cfg), cfg)

            assert_allclose(info, symbols, atol=1e-10)
            assert_allclose(pilots, cfg.pilot_values, atol=1e-10)

    def test_frame_without_pilots(self):
        cfg = make_frame_config(n_info_symbols=1, n_pilot_symbols=0, n_subcarriers=16, cp_length=4)
        symbols = self._symbols(cfg)
        info, pilots = ofdm_demodulate(ofdm_modulate(symbols, cfg), cfg)

        assert_allclose(info, symbols, atol=1e-10)
        self.assertEqual(pilots.shape, (0, 16))

    def test_cyclic_prefix_diagonalizes_channel(self):
        symbols = self._symbols()
        channel = sample_channel(ChannelProfile(num_taps=8, decay=4.0), self.rng)
        received = apply_channel(ofdm_modulate(symbols, self.cfg), channel, self.rng)
        info, _ = ofdm_demodulate(received, self.cfg)

        residual = np.max(np.abs(info - frequency_response(channel, 64) * symbols))
        self.assertLess(residual, 1e-9)

    def test_short_cyclic_prefix_leaves_interference(self):
        cfg = make_frame_config(n_info_symbols=3, n_pilot_symbols=2, n_subcarriers=64, cp_length=4)
        symbols = self._symbols(cfg)
        channel = ChannelRealization(taps=np.ones(8) / np.sqrt(8))
        received = apply_channel(ofdm_modulate(symbols, cfg), channel, self.rng)
        info, _ = ofdm_demodulate(received, cfg)

        residual = np.max(np.abs(info - frequency_response(channel, 64) * symbols))
        self.assertGreater(residual, 1e-3)

    def test_shape_errors(self):
        with self.assertRaises(InvalidArgumentError):
            ofdm_modulate(np.zeros((2, 64)), self.cfg)
        with self.assertRaises(InvalidArgumentError):
            ofdm_demodulate(np.zeros(10), self.cfg)
        with self.assertRaises(ValueError):
            make_frame_config(n_subcarriers=16, cp_length=16)


class PaprTest(SimpleTestCase):
    def setUp(self):
        self.rng = SeededRng(29)
        self.cfg = make_frame_config(n_info_symbols=3, n_pilot_symbols=2, n_subcarriers=256, cp_length=16)
        self.packet = ofdm_modulate(complex_gaussian_array(self.rng, (3, 256), 1.0), self.cfg)

    def test_constant_envelope(self):
        value = papr(np.exp(1j * np.linspace(0, 6, 50)))

        self.assertAlmostEqual(value.ratio, 1.0)
        self.assertAlmostEqual(value.db, 0.0)

    def test_papr_is_scale_invariant(self):
        self.assertAlmostEqual(papr(power_normalize(self.packet.samples, 0.5)).ratio, papr(self.packet).ratio, places=12)

    def test_clipping_reduces_papr(self):
        clipped = clip(self.packet, 1.4)

        self.assertLess(papr(clipped).db, papr(self.packet).db)
        self.assertEqual(clipped.n_pilot_symbols, self.packet.n_pilot_symbols)
        # Phases survive clipping.
        assert_allclose(np.angle(clipped.samples), np.angle(self.packet.samples), atol=1e-12)

    def test_reclipping_moves_samples_by_threshold_drift_only(self):
        once = clip(self.packet, 1.4)
        twice = clip(once, 1.4)

        drift = 1.4 * (np.mean(np.abs(self.packet.samples)) - np.mean(np.abs(once.samples)))
        self.assertGreaterEqual(drift, 0.0)
        self.assertLessEqual(np.max(np.abs(twice.samples - once.samples)), drift + 1e-12)
        # Only samples already at the first threshold move.
        untouched = np.abs(once.samples) < 1.4 * np.mean(np.abs(once.samples))
        assert_allclose(twice.samples[untouched], once.samples[untouched], rtol=0, atol=0)

    def test_reclipping_at_high_ratio_is_nearly_idempotent(self):
        once = clip(self.packet, 3.0)
        twice = clip(once, 3.0)

        peak = np.max(np.abs(once.samples))
        self.assertLess(np.max(np.abs(twice.samples - once.samples)), 5e-3 * peak)

    def test_clip_is_idempotent_below_threshold(self):
        ratio = 2 * np.sqrt(papr(self.packet).ratio)

        assert_allclose(clip(self.packet, ratio).samples, self.packet.samples, rtol=0, atol=0)
        assert_allclose(clip(clip(self.packet, ratio), ratio).samples, self.packet.samples, rtol=0, atol=0)

    def test_infinite_ratio_disables_clipping(self):
        assert_allclose(clip(self.packet, float('inf')).samples, self.packet.samples, rtol=0, atol=0)

    def test_clip_rejects_nonpositive_ratio(self):
        with self.assertRaises(InvalidArgumentError):
            clip(self.packet, 0.0)

    def test_papr_of_zero_packet(self):
        with self.assertRaises(InvalidArgumentError):
            papr(np.zeros(8))

    def test_ccdf(self):
        values = [1.0, 2.0, 3.0, 4.0]

        assert_allclose(papr_ccdf(values, [0.0, 2.0, 3.5, 4.0]), [1.0, 0.5, 0.25, 0.0])

    def test_power_normalize(self):
        x = complex_gaussian_array(self.rng, 1000, 3.0)
        normalized = power_normalize(x, 0.5)

        self.assertAlmostEqual(np.mean(np.abs(normalized) ** 2), 0.5, delta=1e-12)
        assert_allclose(power_normalize(normalized, 0.5), normalized, atol=1e-12)
        with self.assertRaises(InvalidArgumentError):
            power_normalize(np.zeros(4), 0.5)


class ExportTest(SimpleTestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)
        cfg = make_frame_config(n_info_symbols=1, n_pilot_symbols=1, n_subcarriers=16, cp_length=2)
        self.packet = ofdm_modulate(complex_gaussian_array(SeededRng(1), (1, 16), 1.0), cfg)

    def test_binary_layout(self):
        path = export_packet(self.packet, Path(self.tmp.name) / 'packet.bin')

        raw = np.fromfile(path, dtype='<f8')
        self.assertEqual(raw.size, 2 * self.packet.samples.size)
        self.assertEqual(raw[0], self.packet.samples[0].real)
        self.assertEqual(raw[1], self.packet.samples[0].imag)
        assert_allclose(load_packet(path).samples, self.packet.samples, rtol=0, atol=0)

    def test_csv_layout(self):
        path = export_packet(self.packet, Path(self.tmp.name) / 'packet.csv', fmt='csv')

        self.assertEqual(path.read_text().splitlines()[0], 'real,imag')
        assert_allclose(load_packet(path, fmt='csv').samples, self.packet.samples, rtol=1e-15)

    def test_unknown_format(self):
        with self.assertRaises(InvalidArgumentError):
            export_packet(self.packet, Path(self.tmp.name) / 'x', fmt='hdf5')
