import numpy as np

from ..configs import DEFAULT_SEED, MAX_SEED, RNG_ALGORITHM
from ..exceptions import InvalidArgumentError
from ..schemas.signals import ComplexSignal


class SeededRng:
    """Deterministic random stream keyed by a 64-bit seed.

    Child streams are derived from (seed, spawn_key) through numpy's
    SeedSequence, so ``child(i)`` is the same stream no matter how much of
    the parent has been consumed. A SeededRng must not be shared between
    threads; give every worker its own child.
    """

    algorithm = RNG_ALGORITHM

    def __init__(self, seed: int = DEFAULT_SEED, spawn_key: tuple[int, ...] = ()):
        if isinstance(seed, bool) or not isinstance(seed, (int, np.integer)):
            raise InvalidArgumentError(f"seed must be an integer, got {seed!r}")
        if not 0 <= int(seed) <= MAX_SEED:
            raise InvalidArgumentError(f"seed must be a 64-bit unsigned integer, got {seed}")
        self.seed = int(seed)
        self.spawn_key = tuple(int(key) for key in spawn_key)
        sequence = np.random.SeedSequence(self.seed, spawn_key=self.spawn_key)
        self.generator = np.random.Generator(np.random.PCG64(sequence))

    def __repr__(self) -> str:
        return f"SeededRng(seed={self.seed}, spawn_key={self.spawn_key})"

    def child(self, index: int) -> "SeededRng":
        if index < 0:
            raise InvalidArgumentError(f"child index must be nonnegative, got {index}")
        return SeededRng(self.seed, self.spawn_key + (index,))

    def spawn(self, count: int) -> list["SeededRng"]:
        return [self.child(index) for index in range(count)]

    def standard_normal(self, size=None):
        return self.generator.standard_normal(size)

    def uniform(self, low: float = 0.0, high: float = 1.0, size=None):
        return self.generator.uniform(low, high, size)

    def integers(self, low: int, high: int | None = None, size=None):
        return self.generator.integers(low, high, size)

    def dirichlet(self, alpha, size=None):
        return self.generator.dirichlet(alpha, size)


def complex_gaussian_array(rng: SeededRng, shape, variance: float) -> np.ndarray:
    """CN(0, variance) samples of any shape; real and imaginary parts each get variance/2."""
    if variance < 0:
        raise InvalidArgumentError(f"variance must be nonnegative, got {variance}")
    scale = np.sqrt(variance / 2.0)
    real = rng.standard_normal(shape)
    imag = rng.standard_normal(shape)
    return scale * (real + 1j * imag)


def sample_complex_gaussian(rng: SeededRng, n: int, variance: float) -> ComplexSignal:
    if n < 1:
        raise InvalidArgumentError(f"sample count must be positive, got {n}")
    return ComplexSignal(samples=complex_gaussian_array(rng, n, variance))
