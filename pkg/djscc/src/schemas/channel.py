import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .base import ArrayModel, frozen_array
from ..configs import CHANNEL_DEFAULTS


class ChannelProfile(BaseModel):
    """Exponential power-delay profile normalized to unit total power."""

    model_config = ConfigDict(frozen=True)

    num_taps: int = Field(default=CHANNEL_DEFAULTS['num_taps'], ge=1, description="Number of taps L")
    decay: float = Field(default=CHANNEL_DEFAULTS['decay'], gt=0, description="Decay constant gamma")

    @model_validator(mode='after')
    def _check_positive_variances(self):
        if np.any(self.tap_variances <= 0):
            raise ValueError(
                f"decay {self.decay} is too small for {self.num_taps} taps: tail variances underflow to zero"
            )
        return self

    @property
    def tap_variances(self) -> np.ndarray:
        weights = np.exp(-np.arange(self.num_taps) / self.decay)
        return weights / weights.sum()


class ChannelRealization(ArrayModel):
    """One block-fading draw: complex taps plus the AWGN level."""

    taps: np.ndarray = Field(description="Complex tap gains h_0..h_{L-1}")
    noise_variance: float = Field(default=0.0, ge=0, description="AWGN variance per complex sample")

    @field_validator('taps', mode='before')
    @classmethod
    def _validate_taps(cls, value):
        return frozen_array(np.atleast_1d(value), complex, ndim=1, name="taps")

    @property
    def num_taps(self) -> int:
        return int(self.taps.size)


class CsiEstimate(ArrayModel):
    """Per-subcarrier channel estimates with their error variance."""

    estimates: np.ndarray = Field(description="Estimated H_k per subcarrier")
    error_variance: float = Field(ge=0, description="Reported or modeled CSI error variance")

    @field_validator('estimates', mode='before')
    @classmethod
    def _validate_estimates(cls, value):
        return frozen_array(np.atleast_1d(value), complex, ndim=1, name="estimates")

    @property
    def n_subcarriers(self) -> int:
        return int(self.estimates.size)
