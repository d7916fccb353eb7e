import numpy as np
from pydantic import BaseModel, ConfigDict


class ArrayModel(BaseModel):
    """Frozen schema that may carry numpy arrays."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)


def frozen_array(value, dtype, ndim: int | None = None, name: str = "array") -> np.ndarray:
    """Copy ``value`` into a read-only finite array of the given dtype and rank."""
    if dtype is not complex and np.iscomplexobj(value):
        raise ValueError(f"{name} must be real-valued")
    array = np.array(value, dtype=dtype)
    if ndim is not None and array.ndim != ndim:
        raise ValueError(f"{name} must be {ndim}-dimensional, got shape {array.shape}")
    if array.size == 0:
        raise ValueError(f"{name} must not be empty")
    if not np.all(np.isfinite(array)):
        raise ValueError(f"{name} must contain only finite values")
    array.flags.writeable = False
    return array


def validated(model_cls, **fields):
    """Build ``model_cls`` and report schema violations as InvalidArgumentError."""
    from pydantic import ValidationError

    from ..exceptions import InvalidArgumentError

    try:
        return model_cls(**fields)
    except ValidationError as exc:
        messages = "; ".join(error['msg'] for error in exc.errors())
        raise InvalidArgumentError(f"invalid {model_cls.__name__}: {messages}") from exc
