""" The core types of the tensor package: the rank-3 tensor carrier and learnable parameters.

Tensors are plain numpy arrays laid out as (batch, length, channels). Operations accept any real array and compute
in 64-bit; parameters store their values in 32-bit so that checkpoints hold them exactly.
"""
from __future__ import annotations

from typing import Any

import numpy as np
from numpy.typing import NDArray

from wge.exceptions import ShapeError


Tensor = NDArray[np.float64]
STORAGE_DTYPE: type = np.float32


def as_array(values: Any) -> Tensor:
    """ Convert any real array-like to a 64-bit array without copying when possible.

    :param values: the array-like
    :return: the 64-bit array
    """
    return np.asarray(values, dtype=np.float64)


def as_tensor(values: Any, operation: str = 'tensor') -> Tensor:
    """ Convert to a rank-3 (batch, length, channels) 64-bit tensor.

    :param values: the array-like
    :param operation: name used in the error message
    :return: the tensor
    """
    tensor: Tensor = as_array(values)
    if tensor.ndim != 3:
        raise ShapeError(operation, '(batch, length, channels)', tensor.shape)
    return tensor


def require_shape(operation: str, array: NDArray, shape: tuple[int, ...]) -> None:
    """ Reject an array whose shape differs from the expected one.

    :param operation: name of the calling operation
    :param array: the array to check
    :param shape: the expected shape
    """
    if tuple(array.shape) != tuple(shape):
        raise ShapeError(operation, tuple(shape), tuple(array.shape))


class Parameter:
    """ A named learnable array with its gradient accumulator.

    :param name: identifier of the parameter inside its parameter set
    :param value: the initial value, stored as 32-bit floats
    :param trainable: whether optimizer updates are applied to it
    """

    def __init__(self, name: str, value: Any, trainable: bool = True) -> None:
        """ Constructor of the class. """
        self.name: str = name
        self.value: NDArray = np.array(value, dtype=STORAGE_DTYPE)
        self.grad: Tensor = np.zeros(self.value.shape, dtype=np.float64)
        self.trainable: bool = trainable

    @property
    def shape(self) -> tuple[int, ...]:
        """ The shape shared by the value and the gradient. """
        return tuple(self.value.shape)

    def zero_grad(self) -> None:
        """ Reset the gradient accumulator. """
        self.grad.fill(0.0)

    def accumulate(self, grad: NDArray) -> None:
        """ Add a gradient contribution.

        :param grad: an array with the shape of the value
        """
        require_shape(f'accumulate({self.name})', grad, self.shape)
        self.grad += grad

    def assign(self, value: Any) -> None:
        """ Overwrite the value, keeping its shape and storage type.

        :param value: the new value
        """
        new_value: NDArray = np.asarray(value, dtype=STORAGE_DTYPE)
        require_shape(f'assign({self.name})', new_value, self.shape)
        self.value = new_value.copy()

    def __repr__(self) -> str:
        """ String representation of the parameter """
        return f"Parameter({self.name}, shape={self.shape}, trainable={self.trainable})"
