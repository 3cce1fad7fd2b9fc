""" Pointwise non-linearities: parametric ReLU with one learnable slope per channel and the fixed-slope LeakyReLU.
"""
from __future__ import annotations

from typing import Any

import numpy as np

from wge.exceptions import ShapeError
from .core import Tensor, as_array


def _check_slope(operation: str, values: Tensor, slope: Tensor) -> None:
    """ A PReLU slope holds one entry per channel (last axis). """
    if slope.shape != (values.shape[-1],):
        raise ShapeError(operation, (values.shape[-1],), tuple(slope.shape))


def prelu(input: Any, slope: Any) -> Tensor:
    """ Parametric rectified linear unit: x if x > 0 else slope * x.

    :param input: tensor whose last axis holds the channels
    :param slope: one slope per channel
    :return: the activated tensor
    """
    values: Tensor = as_array(input)
    slopes: Tensor = as_array(slope)
    _check_slope('prelu', values, slopes)
    return np.where(values > 0, values, slopes * values)


def prelu_backward(grad_out: Any, input: Any, slope: Any) -> tuple[Tensor, Tensor]:
    """ Gradients of prelu with respect to its input and slopes.

    :param grad_out: gradient of the output
    :param input: the input of the matching forward call
    :param slope: the slopes of the matching forward call
    :return: a tuple (grad_input, grad_slope)
    """
    values: Tensor = as_array(input)
    slopes: Tensor = as_array(slope)
    gradient: Tensor = as_array(grad_out)
    _check_slope('prelu_backward', values, slopes)
    if gradient.shape != values.shape:
        raise ShapeError('prelu_backward', values.shape, gradient.shape)
    positive: np.ndarray = values > 0
    grad_input: Tensor = np.where(positive, gradient, slopes * gradient)
    reduce_axes: tuple[int, ...] = tuple(range(values.ndim - 1))
    grad_slope: Tensor = np.where(positive, 0.0, values * gradient).sum(axis=reduce_axes)
    return grad_input, grad_slope


def leaky_relu(input: Any, slope: float) -> Tensor:
    """ Leaky rectified linear unit with a fixed slope.

    :param input: any tensor
    :param slope: the negative-side slope
    :return: the activated tensor
    """
    values: Tensor = as_array(input)
    return np.where(values > 0, values, slope * values)


def leaky_relu_backward(grad_out: Any, input: Any, slope: float) -> Tensor:
    """ Gradient of leaky_relu with respect to its input.

    :param grad_out: gradient of the output
    :param input: the input of the matching forward call
    :param slope: the slope of the matching forward call
    :return: the input gradient
    """
    values: Tensor = as_array(input)
    gradient: Tensor = as_array(grad_out)
    if gradient.shape != values.shape:
        raise ShapeError('leaky_relu_backward', values.shape, gradient.shape)
    return np.where(values > 0, gradient, slope * gradient)
