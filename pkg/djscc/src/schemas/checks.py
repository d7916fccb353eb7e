from pydantic import BaseModel, ConfigDict, Field


class CheckReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    passed: bool


class MiCheckReport(CheckReport):
    instances: int = Field(ge=0)
    violations: int = Field(ge=0, description="Stage chains whose MI increased beyond tolerance")
    max_increase: float
    gaussian_draws: int = Field(ge=0)
    gaussian_violations: int = Field(ge=0, description="Draws breaking I(X1;Z1|Z2) <= I(X1;Z1) or I(Z1;Z2) <= I(X1;X2)")


class CvieCheckReport(CheckReport):
    instances: int = Field(ge=0)
    max_error: float = Field(ge=0)
    max_error_by_kernel: dict[int, float]
    tolerance: float


class PosteriorDrawResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    draw: int
    coefficients: tuple[float, float] = Field(description="Closed-form (a1, a2)")
    variance: float
    empirical_coefficients: tuple[float, float]
    empirical_variance: float
    coefficient_error: float = Field(description="|a_emp - a| / |a| over the coefficient pair")
    variance_error: float = Field(description="|v_emp - v| / v")
    csi_error: bool


class PosteriorCheckReport(CheckReport):
    samples: int = Field(ge=1)
    tolerance: float
    draws: list[PosteriorDrawResult]

    @property
    def max_error(self) -> float:
        return max((max(d.coefficient_error, d.variance_error) for d in self.draws), default=0.0)
