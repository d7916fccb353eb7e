import numpy as np
from pydantic import Field, field_validator, model_validator

from .base import ArrayModel, frozen_array


class OfdmFrameConfig(ArrayModel):
    """Frame geometry and the pilot block shared by transmitter and receiver.

    A frame with zero pilot symbols is accepted for modulation-only use;
    channel estimation requires at least one.
    """

    n_info_symbols: int = Field(ge=1, description="Information symbols N_s")
    n_pilot_symbols: int = Field(ge=0, description="Pilot symbols N_p, sent first")
    n_subcarriers: int = Field(ge=1, description="Subcarriers N_c")
    cp_length: int = Field(ge=0, description="Cyclic prefix length L_cp")
    pilot_values: np.ndarray = Field(description="Pilot matrix N_p x N_c")

    @field_validator('pilot_values', mode='before')
    @classmethod
    def _validate_pilots(cls, value):
        array = np.array(value, dtype=complex)
        if array.ndim != 2:
            raise ValueError(f"pilot_values must be 2-dimensional, got shape {array.shape}")
        if not np.all(np.isfinite(array)):
            raise ValueError("pilot_values must contain only finite values")
        array.flags.writeable = False
        return array

    @model_validator(mode='after')
    def _check_geometry(self):
        if self.cp_length >= self.n_subcarriers:
            raise ValueError(
                f"cp_length {self.cp_length} must be smaller than n_subcarriers {self.n_subcarriers}"
            )
        expected = (self.n_pilot_symbols, self.n_subcarriers)
        if self.pilot_values.shape != expected:
            raise ValueError(f"pilot_values shape {self.pilot_values.shape} does not match {expected}")
        return self

    @property
    def symbol_length(self) -> int:
        return self.n_subcarriers + self.cp_length

    @property
    def n_symbols(self) -> int:
        return self.n_info_symbols + self.n_pilot_symbols

    @property
    def packet_length(self) -> int:
        return self.n_symbols * self.symbol_length


class OfdmPacket(ArrayModel):
    """Serialized time-domain packet: pilot symbols first, then information symbols."""

    samples: np.ndarray = Field(description="Time-domain samples of every CP-extended symbol")
    n_info_symbols: int = Field(ge=1)
    n_pilot_symbols: int = Field(ge=0)
    n_subcarriers: int = Field(ge=1)
    cp_length: int = Field(ge=0)
    pilots_first: bool = Field(default=True, description="Layout flag; pilots precede data")

    @field_validator('samples', mode='before')
    @classmethod
    def _validate_samples(cls, value):
        return frozen_array(np.atleast_1d(value), complex, ndim=1, name="samples")

    @model_validator(mode='after')
    def _check_length(self):
        expected = (self.n_info_symbols + self.n_pilot_symbols) * (self.n_subcarriers + self.cp_length)
        if self.samples.size != expected:
            raise ValueError(f"packet has {self.samples.size} samples, layout requires {expected}")
        return self

    @classmethod
    def from_frame(cls, samples, cfg: OfdmFrameConfig) -> "OfdmPacket":
        return cls(
            samples=samples,
            n_info_symbols=cfg.n_info_symbols,
            n_pilot_symbols=cfg.n_pilot_symbols,
            n_subcarriers=cfg.n_subcarriers,
            cp_length=cfg.cp_length,
        )

    def with_samples(self, samples) -> "OfdmPacket":
        """Same layout, new samples."""
        return OfdmPacket(**{**self.model_dump(exclude={'samples'}), 'samples': samples})

    @property
    def symbol_length(self) -> int:
        return self.n_subcarriers + self.cp_length
