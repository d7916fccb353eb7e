import numpy as np
from pydantic import Field, field_validator

from .base import ArrayModel, frozen_array


class ComplexSignal(ArrayModel):
    """Immutable 1-D sequence of complex baseband samples."""

    samples: np.ndarray = Field(description="Complex samples, finite, at least one")

    @field_validator('samples', mode='before')
    @classmethod
    def _validate_samples(cls, value):
        return frozen_array(np.atleast_1d(value), complex, ndim=1, name="samples")

    @classmethod
    def of(cls, values) -> "ComplexSignal":
        return cls(samples=values)

    @property
    def length(self) -> int:
        return int(self.samples.size)

    def __len__(self) -> int:
        return self.length

    def __array__(self, dtype=None, copy=None):
        return np.array(self.samples, dtype=dtype)
