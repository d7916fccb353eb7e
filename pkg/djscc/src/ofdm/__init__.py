from .export import export_packet, load_packet
from .modem import make_frame_config, ofdm_demodulate, ofdm_modulate, qpsk_pilots
from .papr import PaprValue, clip, papr, papr_ccdf, power_normalize

__all__ = [
    'PaprValue',
    'clip',
    'export_packet',
    'load_packet',
    'make_frame_config',
    'ofdm_demodulate',
    'ofdm_modulate',
    'papr',
    'papr_ccdf',
    'power_normalize',
    'qpsk_pilots',
]
