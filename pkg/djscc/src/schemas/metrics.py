import numpy as np
from pydantic import Field, field_validator, model_validator

from .base import ArrayModel, frozen_array


class Image(ArrayModel):
    """Real image tensor C x H x W with a declared peak value.

    2-D input is treated as a single channel.
    """

    pixels: np.ndarray
    peak: float = Field(default=255.0, gt=0)

    @field_validator('pixels', mode='before')
    @classmethod
    def _validate_pixels(cls, value):
        array = np.asarray(value)
        if array.ndim == 2:
            array = array[np.newaxis]
        return frozen_array(array, float, ndim=3, name="pixels")

    @model_validator(mode='after')
    def _check_range(self):
        if self.pixels.min() < 0 or self.pixels.max() > self.peak:
            raise ValueError(f"pixel values must lie within [0, {self.peak}]")
        return self

    @property
    def shape(self) -> tuple[int, int, int]:
        return self.pixels.shape
