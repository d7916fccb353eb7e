import math
from typing import ClassVar, Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .channel import ChannelProfile
from .fusion import GaussianPairModel
from ..configs import (
    DEFAULT_SEED,
    DEFAULT_TRIALS,
    MAX_SEED,
    OFDM_DEFAULTS,
    PILOT_SEED,
    SWEEP_DEFAULTS,
    TRANSMISSION_DEFAULTS,
)

CsiMode = Literal['perfect', 'ls', 'mmse', 'synthetic']


class SectionModel(BaseModel):
    model_config = ConfigDict(frozen=True, extra='forbid')


class FrameSettings(SectionModel):
    n_info_symbols: int = Field(default=OFDM_DEFAULTS['n_info_symbols'], ge=1)
    n_pilot_symbols: int = Field(default=OFDM_DEFAULTS['n_pilot_symbols'], ge=1)
    n_subcarriers: int = Field(default=OFDM_DEFAULTS['n_subcarriers'], ge=1)
    cp_length: int = Field(default=OFDM_DEFAULTS['cp_length'], ge=0)
    pilot_seed: int = Field(default=PILOT_SEED, ge=0, le=MAX_SEED)

    @model_validator(mode='after')
    def _check_cp(self):
        if self.cp_length >= self.n_subcarriers:
            raise ValueError("cp_length must be smaller than n_subcarriers")
        return self


class TransmissionSettings(SectionModel):
    snr_low_db: float = TRANSMISSION_DEFAULTS['snr_low_db']
    snr_high_db: float = TRANSMISSION_DEFAULTS['snr_high_db']
    snr1_db: float | None = Field(default=None, description="Fixed SNR of view 1; overrides the uniform draw")
    snr2_db: float | None = Field(default=None, description="Fixed SNR of view 2; overrides the uniform draw")
    compression1: float = Field(default=TRANSMISSION_DEFAULTS['compression1'], gt=0, le=1)
    compression2: float = Field(default=TRANSMISSION_DEFAULTS['compression2'], gt=0, le=1)
    power_total1: float = Field(default=TRANSMISSION_DEFAULTS['power_total1'], gt=0)
    power_total2: float = Field(default=TRANSMISSION_DEFAULTS['power_total2'], gt=0)

    @model_validator(mode='after')
    def _check_range(self):
        if self.snr_low_db > self.snr_high_db:
            raise ValueError(f"snr_low_db {self.snr_low_db} exceeds snr_high_db {self.snr_high_db}")
        return self


class CsiSettings(SectionModel):
    mode: CsiMode = 'perfect'
    error_variance: float = Field(default=0.0, ge=0, description="sigma_e^2 for synthetic mode")


class ClippingSettings(SectionModel):
    ratio: float | None = Field(default=None, gt=0, description="Clipping ratio rho; None disables clipping")
    ratios: list[float] = Field(default_factory=lambda: list(SWEEP_DEFAULTS['clipping_ratios']))

    @field_validator('ratios')
    @classmethod
    def _positive_ratios(cls, value):
        if not value or any(not ratio > 0 for ratio in value):
            raise ValueError("clipping ratios must be a nonempty list of positive numbers")
        return value


class SweepSettings(SectionModel):
    pilot_counts: list[int] = Field(default_factory=lambda: list(SWEEP_DEFAULTS['pilot_counts']))
    csi_error_variances: list[float] = Field(default_factory=lambda: list(SWEEP_DEFAULTS['csi_error_variances']))
    csi_modes: list[Literal['ls', 'mmse']] = Field(default_factory=lambda: ['ls', 'mmse'])
    snr_step_db: float = Field(default=SWEEP_DEFAULTS['snr_step_db'], gt=0)
    snr_grid: list[float] | None = Field(default=None, description="Explicit SNR grid; overrides low/high/step")

    @field_validator('pilot_counts')
    @classmethod
    def _positive_counts(cls, value):
        if not value or any(count < 1 for count in value):
            raise ValueError("pilot counts must be a nonempty list of positive integers")
        return value

    @field_validator('csi_error_variances')
    @classmethod
    def _nonnegative_variances(cls, value):
        if not value or any(variance < 0 for variance in value):
            raise ValueError("csi error variances must be a nonempty list of nonnegative numbers")
        return value


class RunSettings(SectionModel):
    trials: int = Field(default=DEFAULT_TRIALS, ge=1)
    seed: int = Field(default=DEFAULT_SEED, ge=0, le=MAX_SEED)


class ExperimentConfig(SectionModel):
    """Complete experiment description; each field is one config-file section."""

    channel: ChannelProfile = Field(default_factory=ChannelProfile)
    ofdm: FrameSettings = Field(default_factory=FrameSettings)
    source: GaussianPairModel = Field(default_factory=GaussianPairModel)
    transmission: TransmissionSettings = Field(default_factory=TransmissionSettings)
    csi: CsiSettings = Field(default_factory=CsiSettings)
    clipping: ClippingSettings = Field(default_factory=ClippingSettings)
    sweep: SweepSettings = Field(default_factory=SweepSettings)
    run: RunSettings = Field(default_factory=RunSettings)

    def updated(self, **sections) -> "ExperimentConfig":
        """Copy with some section fields replaced, e.g. ``updated(run={'trials': 5})``."""
        data = self.model_dump()
        for section, values in sections.items():
            data[section] = {**data[section], **values}
        return ExperimentConfig.model_validate(data)


class FiniteRecord(BaseModel):
    """Result row whose floats are all finite, except the fields in ``infinite_fields`` which may be +inf."""

    model_config = ConfigDict(frozen=True)

    infinite_fields: ClassVar[frozenset[str]] = frozenset()

    @model_validator(mode='after')
    def _check_finite(self):
        for name, value in self:
            if not isinstance(value, float) or math.isfinite(value):
                continue
            if name in self.infinite_fields and value == math.inf:
                continue
            raise ValueError(f"{name} is not finite: {value}")
        return self


class TrialRecord(FiniteRecord):
    """Outcome of one toy-pipeline trial."""

    trial: int = Field(ge=0)
    snr1_db: float
    snr2_db: float
    mse1: float = Field(ge=0, description="Empirical per-sample MSE of view 1")
    mse2: float = Field(ge=0)
    theory_variance1: float = Field(ge=0, description="Mean theoretical posterior variance of view 1")
    theory_variance2: float = Field(ge=0)
    correlation: float = Field(description="Source correlation r")
    noisy_correlation: float = Field(description="Theoretical r' of the equalized observations")
    empirical_correlation: float
    scs: float = Field(ge=0, le=1)
    papr_db: float = Field(description="PAPR before clipping, mean of both views")
    papr_clipped_db: float = Field(description="PAPR after clipping, mean of both views")
    csi_error_variance1: float = Field(ge=0)
    csi_error_variance2: float = Field(ge=0)
    n_samples: int = Field(ge=1, description="Real source samples per view in this trial")


class ScsSweepRow(FiniteRecord):
    snr_db: float
    mean_scs: float = Field(ge=0, le=1)
    trials: int = Field(ge=1)


class PaprSweepRow(FiniteRecord):
    infinite_fields = frozenset({'clipping_ratio'})

    clipping_ratio: float = Field(gt=0, description="inf marks the unclipped reference")
    trial: int = Field(ge=0)
    papr_db: float
    mse: float = Field(ge=0, description="Per-sample MSE averaged over both views")


class CsiSweepRow(FiniteRecord):
    csi_mode: CsiMode
    parameter: float = Field(description="Pilot count (ls/mmse) or sigma_e^2 (synthetic)")
    csi_error_variance: float = Field(ge=0, description="Mean modeled CSI error variance")
    mse: float = Field(ge=0)
    theory_variance: float = Field(ge=0)
    noisy_correlation: float
    empirical_correlation: float
    trials: int = Field(ge=1)


class PaprCcdfRow(FiniteRecord):
    infinite_fields = frozenset({'clipping_ratio'})

    clipping_ratio: float = Field(gt=0, description="inf marks the unclipped reference")
    threshold_db: float
    ccdf: float = Field(ge=0, le=1, description="Fraction of packets with PAPR above threshold_db")


class CheckSummaryRow(FiniteRecord):
    """One-line outcome of an oracle check command."""

    check: str
    passed: bool
    instances: int = Field(ge=0, description="Stage chains, conv instances or parameter draws checked")
    max_error: float = Field(description="Worst deviation found, in the check's own units")
    tolerance: float = Field(ge=0)
