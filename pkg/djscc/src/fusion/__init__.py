from .bayes import (
    ReceivedPair,
    bits_to_nats,
    equivalent_noise,
    fusion_coefficients,
    gaussian_information_terms,
    gaussian_mi,
    map_estimate_single,
    nats_to_bits,
    noisy_correlation,
    noisy_correlation_values,
    posterior_fuse,
    sample_gaussian_pair,
    simulate_received_pair,
    single_view_mmse_variance,
)

__all__ = [
    'ReceivedPair',
    'bits_to_nats',
    'equivalent_noise',
    'fusion_coefficients',
    'gaussian_information_terms',
    'gaussian_mi',
    'map_estimate_single',
    'nats_to_bits',
    'noisy_correlation',
    'noisy_correlation_values',
    'posterior_fuse',
    'sample_gaussian_pair',
    'simulate_received_pair',
    'single_view_mmse_variance',
]
