import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .base import ArrayModel, frozen_array


class FeatureMap(ArrayModel):
    """Real tensor indexed (channel, row, column)."""

    tensor: np.ndarray

    @field_validator('tensor', mode='before')
    @classmethod
    def _validate_tensor(cls, value):
        return frozen_array(value, float, ndim=3, name="tensor")

    @classmethod
    def of(cls, values) -> "FeatureMap":
        return cls(tensor=values)

    @property
    def shape(self) -> tuple[int, int, int]:
        return self.tensor.shape

    @property
    def channels(self) -> int:
        return self.tensor.shape[0]


class DenseLayer(ArrayModel):
    """Affine map y = W x + b."""

    weight: np.ndarray = Field(description="Matrix out x in")
    bias: np.ndarray = Field(description="Vector of length out")

    @field_validator('weight', mode='before')
    @classmethod
    def _validate_weight(cls, value):
        return frozen_array(value, float, ndim=2, name="weight")

    @field_validator('bias', mode='before')
    @classmethod
    def _validate_bias(cls, value):
        return frozen_array(np.atleast_1d(value), float, ndim=1, name="bias")

    @model_validator(mode='after')
    def _check_shapes(self):
        if self.bias.size != self.weight.shape[0]:
            raise ValueError(f"bias length {self.bias.size} does not match weight rows {self.weight.shape[0]}")
        return self

    @property
    def in_features(self) -> int:
        return self.weight.shape[1]

    @property
    def out_features(self) -> int:
        return self.weight.shape[0]


def _check_chain(layers: tuple[DenseLayer, ...], in_features: int, out_features: int, name: str):
    if not layers:
        return
    if layers[0].in_features != in_features:
        raise ValueError(f"{name} expects {in_features} inputs, first layer takes {layers[0].in_features}")
    for previous, current in zip(layers, layers[1:]):
        if previous.out_features != current.in_features:
            raise ValueError(f"{name} layers are not chained: {previous.out_features} -> {current.in_features}")
    if layers[-1].out_features != out_features:
        raise ValueError(f"{name} must produce {out_features} outputs, last layer gives {layers[-1].out_features}")


class KernelWeights(ArrayModel):
    """Weights of the crossview kernels for C channels and a K x K neighbourhood."""

    kernel_size: int = Field(ge=1, description="K, odd")
    channels: int = Field(ge=1, description="C")
    w_q: np.ndarray
    w_k: np.ndarray
    w_v: np.ndarray
    mlp: tuple[DenseLayer, ...] = Field(description="3C -> K^2 C, ReLU between layers")
    dwa_layers: tuple[DenseLayer, ...] = Field(default=(), description="3 -> 2, ReLU between layers")
    conv_kernel: np.ndarray | None = Field(default=None, description="K x K x C_in x C_out")

    @field_validator('w_q', 'w_k', 'w_v', mode='before')
    @classmethod
    def _validate_projection(cls, value):
        return frozen_array(value, float, ndim=2, name="projection")

    @field_validator('conv_kernel', mode='before')
    @classmethod
    def _validate_conv_kernel(cls, value):
        if value is None:
            return None
        return frozen_array(value, float, ndim=4, name="conv_kernel")

    @model_validator(mode='after')
    def _check_consistency(self):
        if self.kernel_size % 2 == 0:
            raise ValueError(f"kernel_size must be odd, got {self.kernel_size}")
        square = (self.channels, self.channels)
        for name in ('w_q', 'w_k', 'w_v'):
            if getattr(self, name).shape != square:
                raise ValueError(f"{name} must have shape {square}, got {getattr(self, name).shape}")
        if not self.mlp:
            raise ValueError("mlp needs at least one layer")
        _check_chain(self.mlp, 3 * self.channels, self.kernel_size ** 2 * self.channels, "mlp")
        _check_chain(self.dwa_layers, 3, 2, "dwa")
        if self.conv_kernel is not None:
            k = self.kernel_size
            if self.conv_kernel.shape[:2] != (k, k):
                raise ValueError(f"conv_kernel must be {k} x {k} spatially, got {self.conv_kernel.shape[:2]}")
        return self

    def parameter_count(self) -> int:
        """Number of scalar parameters across every tensor."""
        count = self.w_q.size + self.w_k.size + self.w_v.size
        for layer in (*self.mlp, *self.dwa_layers):
            count += layer.weight.size + layer.bias.size
        if self.conv_kernel is not None:
            count += self.conv_kernel.size
        return int(count)


class DwaInput(BaseModel):
    model_config = ConfigDict(frozen=True)

    snr1_db: float
    snr2_db: float
    scs: float = Field(ge=0, le=1)

    def as_vector(self) -> np.ndarray:
        return np.array([self.snr1_db, self.snr2_db, self.scs], dtype=float)
