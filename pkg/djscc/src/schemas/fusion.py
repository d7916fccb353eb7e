import numpy as np
from pydantic import BaseModel, ConfigDict, Field


class GaussianPairModel(BaseModel):
    """Joint Gaussian model of the two views' source symbols."""

    model_config = ConfigDict(frozen=True)

    mean1: float = Field(default=0.0, description="Mean of view 1")
    mean2: float = Field(default=0.0, description="Mean of view 2")
    variance1: float = Field(default=1.0, gt=0, description="Variance of view 1")
    variance2: float = Field(default=1.0, gt=0, description="Variance of view 2")
    correlation: float = Field(default=0.8, ge=-1, le=1, description="Correlation coefficient r")

    @property
    def covariance(self) -> np.ndarray:
        cross = self.correlation * np.sqrt(self.variance1 * self.variance2)
        return np.array([[self.variance1, cross], [cross, self.variance2]])


class ObservationModel(BaseModel):
    """Scalar observation of each view through an estimated gain.

    The gains are the estimated (not true) channel gains; the CSI error is
    carried as extra noise through the equivalent noise variances.
    """

    model_config = ConfigDict(frozen=True)

    gain1: float = Field(description="Estimated gain of view 1")
    gain2: float = Field(description="Estimated gain of view 2")
    csi_error_variance1: float = Field(default=0.0, ge=0)
    csi_error_variance2: float = Field(default=0.0, ge=0)
    noise_variance1: float = Field(default=0.0, ge=0)
    noise_variance2: float = Field(default=0.0, ge=0)

    def equivalent_noise_variances(self, model: GaussianPairModel) -> tuple[float, float]:
        from ..fusion.bayes import equivalent_noise

        return (
            equivalent_noise(self.csi_error_variance1, model.variance1, self.noise_variance1),
            equivalent_noise(self.csi_error_variance2, model.variance2, self.noise_variance2),
        )


class PosteriorEstimate(BaseModel):
    model_config = ConfigDict(frozen=True)

    mean: float
    variance: float = Field(ge=0)


class GaussianInformationTerms(BaseModel):
    """Mutual-information terms of the Gaussian observation model, in nats."""

    model_config = ConfigDict(frozen=True)

    source_views: float = Field(description="I(X1;X2)")
    received_views: float = Field(description="I(Z1;Z2)")
    direct: float = Field(description="I(X1;Z1)")
    conditional: float = Field(description="I(X1;Z1|Z2)")
