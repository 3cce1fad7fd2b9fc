""" Elementwise regression losses averaged over every element, with their gradients.
"""
from __future__ import annotations

from typing import Any

import numpy as np

from wge.exceptions import ShapeError
from .core import Tensor, as_array


def _pair(operation: str, first: Any, second: Any) -> tuple[Tensor, Tensor]:
    """ Convert both operands and reject shape mismatches. """
    left: Tensor = as_array(first)
    right: Tensor = as_array(second)
    if left.shape != right.shape:
        raise ShapeError(operation, left.shape, right.shape)
    if left.size == 0:
        raise ShapeError(operation, 'at least one element', left.shape)
    return left, right


def l1_loss(first: Any, second: Any) -> float:
    """ Mean absolute difference.

    :param first: the estimate
    :param second: the target
    :return: mean |first - second|
    """
    left, right = _pair('l1_loss', first, second)
    return float(np.mean(np.abs(left - right)))


def l1_loss_backward(first: Any, second: Any) -> Tensor:
    """ Gradient of l1_loss with respect to its first operand; the subgradient at ties is 0.

    :param first: the estimate
    :param second: the target
    :return: sign(first - second) / n
    """
    left, right = _pair('l1_loss_backward', first, second)
    return np.sign(left - right) / left.size


def mse(first: Any, second: Any) -> float:
    """ Mean squared difference.

    :param first: the estimate
    :param second: the target
    :return: mean (first - second)^2
    """
    left, right = _pair('mse', first, second)
    return float(np.mean((left - right) ** 2))


def mse_backward(first: Any, second: Any) -> Tensor:
    """ Gradient of mse with respect to its first operand.

    :param first: the estimate
    :param second: the target
    :return: 2 (first - second) / n
    """
    left, right = _pair('mse_backward', first, second)
    return 2.0 * (left - right) / left.size
