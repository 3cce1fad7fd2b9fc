""" Central finite differences and the gradient check suite run by the `gradcheck` command.

Every differentiable operation is checked on random small instances: a random projection R turns the operation
into the scalar f(x) = <op(x), R>, whose analytic gradient is the backward of the operation applied to R.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable

import numpy as np
from numpy.random import Generator, default_rng

from wge.logger import LOGGER
from .core import Tensor, as_array
from .conv import conv1d, conv1d_backward, conv1d_transpose, conv1d_transpose_backward, FFT_MIN_WIDTH
from .activations import prelu, prelu_backward, leaky_relu, leaky_relu_backward
from .normalization import instance_norm, instance_norm_backward
from .dense import dense, dense_backward, concat_channels, split_channels
from .losses import l1_loss, l1_loss_backward, mse, mse_backward

TOLERANCE: float = 1e-4


def finite_diff_grad(function: Callable[[Tensor], float], x: Any, h: float = 1e-5) -> Tensor:
    """ Central-difference gradient of a scalar function, one element at a time.

    :param function: maps an array shaped like x to a real number
    :param x: the evaluation point
    :param h: the step, within [1e-5, 1e-3] for 64-bit arithmetic
    :return: (f(x + h e_i) - f(x - h e_i)) / 2h for every element i
    """
    point: Tensor = np.array(x, dtype=np.float64)
    gradient: Tensor = np.zeros_like(point)
    flat_point: Tensor = point.reshape(-1)
    flat_gradient: Tensor = gradient.reshape(-1)
    for index in range(flat_point.size):
        original: float = flat_point[index]
        flat_point[index] = original + h
        upper: float = function(point)
        flat_point[index] = original - h
        lower: float = function(point)
        flat_point[index] = original
        flat_gradient[index] = (upper - lower) / (2.0 * h)
    return gradient


def relative_error(analytic: Any, numeric: Any) -> float:
    """ Norm-wise relative error between two gradients.

    :param analytic: the analytic gradient
    :param numeric: the finite difference gradient
    :return: ||analytic - numeric|| / max(||analytic||, ||numeric||), 0 when both vanish
    """
    first: Tensor = as_array(analytic)
    second: Tensor = as_array(numeric)
    scale: float = max(float(np.linalg.norm(first)), float(np.linalg.norm(second)))
    if scale < 1e-12:
        return 0.0
    return float(np.linalg.norm(first - second)) / scale


def away_from_zero(rng: Generator, shape: tuple[int, ...], margin: float = 0.05) -> Tensor:
    """ Random normal values pushed away from the kink of piecewise-linear functions. """
    values: Tensor = rng.standard_normal(shape)
    return np.sign(values) * (np.abs(values) + margin)


@dataclass
class GradCheckReport:
    """ Outcome of the gradient check suite. """
    errors: dict[str, float] = field(default_factory=dict)
    tolerance: float = TOLERANCE

    @property
    def failures(self) -> list[str]:
        """ Names of the checks whose worst relative error exceeds the tolerance. """
        return [name for name, error in self.errors.items() if not error < self.tolerance]

    @property
    def passed(self) -> bool:
        """ True when every check passed. """
        return not self.failures

    def record(self, name: str, error: float) -> None:
        """ Keep the worst error seen for a check. """
        self.errors[name] = float(np.maximum(self.errors.get(name, 0.0), error))


def _check(report: GradCheckReport, name: str, function: Callable[[Tensor], float], x: Tensor,
           analytic: Tensor) -> None:
    """ Compare one analytic gradient against finite differences. """
    report.record(name, relative_error(analytic, finite_diff_grad(function, x)))


def _check_conv(report: GradCheckReport, rng: Generator, widths: tuple[int, int] = (1, 5)) -> None:
    """ conv1d and conv1d_transpose against all three of their inputs, kernel widths drawn from [low, high). """
    batch, length, c_in, c_out = 2, int(rng.integers(5, 9)), int(rng.integers(1, 4)), int(rng.integers(1, 4))
    width, stride = int(rng.integers(*widths)), int(rng.integers(1, 3))
    x: Tensor = rng.standard_normal((batch, length, c_in))
    kernel: Tensor = rng.standard_normal((width, c_in, c_out))
    bias: Tensor = rng.standard_normal(c_out)

    projection: Tensor = rng.standard_normal(conv1d(x, kernel, bias, stride).shape)
    grad_x, grad_k, grad_b = conv1d_backward(projection, x, kernel, stride)
    _check(report, 'conv1d.input', lambda v: float(np.sum(conv1d(v, kernel, bias, stride) * projection)), x, grad_x)
    _check(report, 'conv1d.kernel', lambda v: float(np.sum(conv1d(x, v, bias, stride) * projection)), kernel, grad_k)
    _check(report, 'conv1d.bias', lambda v: float(np.sum(conv1d(x, kernel, v, stride) * projection)), bias, grad_b)

    projection = rng.standard_normal((batch, length * stride, c_out))
    grad_x, grad_k, grad_b = conv1d_transpose_backward(projection, x, kernel, stride)
    _check(report, 'conv1d_transpose.input',
           lambda v: float(np.sum(conv1d_transpose(v, kernel, bias, stride) * projection)), x, grad_x)
    _check(report, 'conv1d_transpose.kernel',
           lambda v: float(np.sum(conv1d_transpose(x, v, bias, stride) * projection)), kernel, grad_k)
    _check(report, 'conv1d_transpose.bias',
           lambda v: float(np.sum(conv1d_transpose(x, kernel, v, stride) * projection)), bias, grad_b)


def _check_pointwise(report: GradCheckReport, rng: Generator) -> None:
    """ prelu, leaky_relu and instance_norm. """
    shape: tuple[int, int, int] = (2, int(rng.integers(3, 7)), int(rng.integers(1, 4)))
    x: Tensor = away_from_zero(rng, shape)
    slope: Tensor = rng.uniform(-0.5, 0.5, shape[2])
    projection: Tensor = rng.standard_normal(shape)

    grad_x, grad_slope = prelu_backward(projection, x, slope)
    _check(report, 'prelu.input', lambda v: float(np.sum(prelu(v, slope) * projection)), x, grad_x)
    _check(report, 'prelu.slope', lambda v: float(np.sum(prelu(x, v) * projection)), slope, grad_slope)
    _check(report, 'leaky_relu.input', lambda v: float(np.sum(leaky_relu(v, 0.3) * projection)), x,
           leaky_relu_backward(projection, x, 0.3))
    x = rng.standard_normal(shape) * rng.uniform(0.5, 2.0)
    _check(report, 'instance_norm.input', lambda v: float(np.sum(instance_norm(v) * projection)), x,
           instance_norm_backward(projection, x))


def _check_dense(report: GradCheckReport, rng: Generator) -> None:
    """ dense and the channel concatenation. """
    batch, n, m = 2, int(rng.integers(1, 6)), int(rng.integers(1, 4))
    x: Tensor = rng.standard_normal((batch, n))
    weight: Tensor = rng.standard_normal((n, m))
    bias: Tensor = rng.standard_normal(m)
    projection: Tensor = rng.standard_normal((batch, m))
    grad_x, grad_w, grad_b = dense_backward(projection, x, weight)
    _check(report, 'dense.input', lambda v: float(np.sum(dense(v, weight, bias) * projection)), x, grad_x)
    _check(report, 'dense.weight', lambda v: float(np.sum(dense(x, v, bias) * projection)), weight, grad_w)
    _check(report, 'dense.bias', lambda v: float(np.sum(dense(x, weight, v) * projection)), bias, grad_b)

    first: Tensor = rng.standard_normal((batch, 4, 2))
    second: Tensor = rng.standard_normal((batch, 4, 3))
    projection = rng.standard_normal((batch, 4, 5))
    grad_first, grad_second = split_channels(projection, 2)
    _check(report, 'concat_channels.first',
           lambda v: float(np.sum(concat_channels(v, second) * projection)), first, grad_first)
    _check(report, 'concat_channels.second',
           lambda v: float(np.sum(concat_channels(first, v) * projection)), second, grad_second)


def _check_losses(report: GradCheckReport, rng: Generator) -> None:
    """ l1_loss away from ties and mse. """
    target: Tensor = rng.standard_normal((2, 5, 1))
    estimate: Tensor = target + away_from_zero(rng, target.shape)
    _check(report, 'l1_loss', lambda v: l1_loss(v, target), estimate, l1_loss_backward(estimate, target))
    _check(report, 'mse', lambda v: mse(v, target), estimate, mse_backward(estimate, target))


def run_gradient_suite(instances: int = 20, seed: int = 0) -> GradCheckReport:
    """ Check every differentiable operation on `instances` random small problems.

    :param instances: number of random instances per operation
    :param seed: seed of the random instances
    :return: the report with the worst relative error per check
    """
    rng: Generator = default_rng(seed)
    report: GradCheckReport = GradCheckReport()
    for _ in range(instances):
        _check_conv(report, rng)
        _check_conv(report, rng, (FFT_MIN_WIDTH, FFT_MIN_WIDTH + 4))
        _check_pointwise(report, rng)
        _check_dense(report, rng)
        _check_losses(report, rng)
    for name, error in sorted(report.errors.items()):
        LOGGER.info('%-26s max relative error %.3e', name, error)
    return report
