""" Fully-connected layer and channel concatenation.
"""
from __future__ import annotations

from typing import Any

import numpy as np

from wge.exceptions import ShapeError
from .core import Tensor, as_array, as_tensor


def dense(input: Any, weight: Any, bias: Any) -> Tensor:
    """ Affine map of flattened features.

    :param input: array of shape (batch, n)
    :param weight: array of shape (n, m)
    :param bias: array of shape (m,)
    :return: array of shape (batch, m)
    """
    values: Tensor = as_array(input)
    weights: Tensor = as_array(weight)
    offsets: Tensor = as_array(bias)
    if values.ndim != 2 or weights.ndim != 2 or weights.shape[0] != values.shape[1]:
        raise ShapeError('dense', f"weight ({values.shape[-1]}, m) for input {values.shape}", weights.shape)
    if offsets.shape != (weights.shape[1],):
        raise ShapeError('dense', (weights.shape[1],), offsets.shape)
    return values @ weights + offsets


def dense_backward(grad_out: Any, input: Any, weight: Any) -> tuple[Tensor, Tensor, Tensor]:
    """ Gradients of dense with respect to its input, weight and bias.

    :param grad_out: gradient of the output, shape (batch, m)
    :param input: the input of the matching forward call
    :param weight: the weight of the matching forward call
    :return: a tuple (grad_input, grad_weight, grad_bias)
    """
    values: Tensor = as_array(input)
    weights: Tensor = as_array(weight)
    gradient: Tensor = as_array(grad_out)
    if gradient.shape != (values.shape[0], weights.shape[1]):
        raise ShapeError('dense_backward', (values.shape[0], weights.shape[1]), gradient.shape)
    return gradient @ weights.T, values.T @ gradient, gradient.sum(axis=0)


def concat_channels(first: Any, second: Any) -> Tensor:
    """ Concatenate two tensors along the channel axis.

    :param first: tensor of shape (batch, length, c1)
    :param second: tensor of shape (batch, length, c2)
    :return: tensor of shape (batch, length, c1 + c2)
    """
    left: Tensor = as_tensor(first, 'concat_channels')
    right: Tensor = as_tensor(second, 'concat_channels')
    if left.shape[:2] != right.shape[:2]:
        raise ShapeError('concat_channels', f"(batch, length) = {left.shape[:2]}", right.shape[:2])
    return np.concatenate([left, right], axis=2)


def split_channels(grad_out: Any, channels: int) -> tuple[Tensor, Tensor]:
    """ Backward of concat_channels: split a gradient after the first `channels` channels.

    :param grad_out: gradient of the concatenated tensor
    :param channels: number of channels of the first operand
    :return: a tuple (grad_first, grad_second)
    """
    gradient: Tensor = as_tensor(grad_out, 'split_channels')
    if not 0 <= channels <= gradient.shape[2]:
        raise ShapeError('split_channels', f"0 <= channels <= {gradient.shape[2]}", channels)
    return gradient[:, :, :channels], gradient[:, :, channels:]
