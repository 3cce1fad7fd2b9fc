""" Instance normalization: per item and per channel mean-variance normalization over the length axis, without
learnable scale or shift.
"""
from __future__ import annotations

from typing import Any

import numpy as np

from wge.const import INSTANCE_NORM_EPS
from wge.exceptions import ShapeError
from .core import Tensor, as_tensor


def _statistics(values: Tensor, eps: float) -> tuple[Tensor, Tensor]:
    """ Per (item, channel) mean and inverse standard deviation. """
    mean: Tensor = values.mean(axis=1, keepdims=True)
    variance: Tensor = values.var(axis=1, keepdims=True)
    return mean, 1.0 / np.sqrt(variance + eps)


def instance_norm(input: Any, eps: float = INSTANCE_NORM_EPS) -> Tensor:
    """ Normalize every channel of every item to zero mean and unit variance over time.

    :param input: tensor of shape (batch, length, channels)
    :param eps: added to the variance
    :return: the normalized tensor
    """
    values: Tensor = as_tensor(input, 'instance_norm')
    mean, inv_std = _statistics(values, eps)
    return (values - mean) * inv_std


def instance_norm_backward(grad_out: Any, input: Any, eps: float = INSTANCE_NORM_EPS) -> Tensor:
    """ Gradient of instance_norm with respect to its input.

    :param grad_out: gradient of the output
    :param input: the input of the matching forward call
    :param eps: the epsilon of the matching forward call
    :return: the input gradient
    """
    values: Tensor = as_tensor(input, 'instance_norm_backward')
    gradient: Tensor = np.asarray(grad_out, dtype=np.float64)
    if gradient.shape != values.shape:
        raise ShapeError('instance_norm_backward', values.shape, gradient.shape)
    mean, inv_std = _statistics(values, eps)
    normalized: Tensor = (values - mean) * inv_std
    mean_grad: Tensor = gradient.mean(axis=1, keepdims=True)
    mean_projection: Tensor = (gradient * normalized).mean(axis=1, keepdims=True)
    return inv_std * (gradient - mean_grad - normalized * mean_projection)
