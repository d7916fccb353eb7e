from typing import Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from .base import ArrayModel, frozen_array
from ..configs import PMF_SUM_TOLERANCE


class DiscreteJoint(ArrayModel):
    """Joint pmf over a finite alphabet A x B."""

    pmf: np.ndarray = Field(description="Nonnegative matrix summing to one")

    @field_validator('pmf', mode='before')
    @classmethod
    def _validate_pmf(cls, value):
        array = frozen_array(value, float, ndim=2, name="pmf")
        if np.any(array < 0):
            raise ValueError("pmf entries must be nonnegative")
        if abs(array.sum() - 1.0) > PMF_SUM_TOLERANCE:
            raise ValueError(f"pmf must sum to 1, got {array.sum()!r}")
        return array

    @property
    def marginal_a(self) -> np.ndarray:
        return self.pmf.sum(axis=1)

    @property
    def marginal_b(self) -> np.ndarray:
        return self.pmf.sum(axis=0)


class StochasticMatrix(ArrayModel):
    """Row-stochastic channel matrix; row i is p(output | input i)."""

    rows: np.ndarray

    @field_validator('rows', mode='before')
    @classmethod
    def _validate_rows(cls, value):
        array = frozen_array(value, float, ndim=2, name="rows")
        if np.any(array < 0):
            raise ValueError("stochastic matrix entries must be nonnegative")
        if np.any(np.abs(array.sum(axis=1) - 1.0) > PMF_SUM_TOLERANCE):
            raise ValueError("every row of a stochastic matrix must sum to 1")
        return array

    @property
    def n_inputs(self) -> int:
        return self.rows.shape[0]

    @property
    def n_outputs(self) -> int:
        return self.rows.shape[1]


class MiTrace(BaseModel):
    """Mutual information of the two views after each processing stage."""

    model_config = ConfigDict(frozen=True)

    values: list[float] = Field(description="I at the source followed by each stage, in bits")
    non_increasing: bool
    max_increase: float = Field(description="Largest stage-to-stage increase; <= 0 when monotone")


class ViewInformation(BaseModel):
    """Consistency and complementarity of two discrete views, in bits."""

    model_config = ConfigDict(frozen=True)

    consistency: float = Field(description="I(s1;s2)")
    complementarity: float = Field(description="H(s1|s2) + H(s2|s1)")


class KernelSpec(BaseModel):
    """Named positive-definite kernel."""

    model_config = ConfigDict(frozen=True)

    name: Literal['linear', 'polynomial', 'gaussian'] = 'linear'
    degree: int = Field(default=2, ge=1)
    offset: float = Field(default=1.0, ge=0)
    bandwidth: float = Field(default=1.0, gt=0)


class CanonicalCorrelation(ArrayModel):
    """Result of linear CCA between two data matrices."""

    cosine: float = Field(ge=0, le=1, description="Largest canonical correlation")
    correlations: np.ndarray = Field(description="All canonical correlations, descending")
    transform1: np.ndarray = Field(description="Columns map view-1 features to canonical variates")
    transform2: np.ndarray = Field(description="Columns map view-2 features to canonical variates")
    rank_deficient: bool = False
