from .rng import SeededRng, complex_gaussian_array, sample_complex_gaussian
from .transforms import as_complex_vector, circular_convolve, dft, inverse_dft

__all__ = [
    'SeededRng',
    'as_complex_vector',
    'circular_convolve',
    'complex_gaussian_array',
    'dft',
    'inverse_dft',
    'sample_complex_gaussian',
]
