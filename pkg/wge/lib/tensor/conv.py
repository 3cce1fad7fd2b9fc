""" Strided 1-D convolutions over (batch, length, channels) tensors and their exact gradients.

Convolutions follow the cross-correlation convention. 'same' padding splits the zeros symmetrically, the extra one
going on the right, so that the output length is exactly ceil(length / stride). 'causal' padding puts width - 1
zeros on the left only; it is used by the pre-emphasis layer.

Narrow kernels are applied as one matrix product over the gathered receptive fields. Kernels of FFT_MIN_WIDTH taps
or more go through the frequency domain: a linear (not circular) correlation of the padded input, computed at the
next fast FFT size and decimated by the stride, with the channels mixed by one matrix product per frequency bin.
Both routes run in 64-bit arithmetic.
"""
from __future__ import annotations

from typing import Any

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view
from numpy.typing import NDArray
from scipy.fft import rfft, irfft, next_fast_len

from wge.exceptions import ShapeError
from .core import Tensor, as_array, as_tensor, require_shape

PADDING_MODES: tuple[str, ...] = ('same', 'causal')
FFT_MIN_WIDTH: int = 16


def conv_geometry(length: int, width: int, stride: int, padding: str = 'same') -> tuple[int, int, int]:
    """ Compute the zero padding and output length of a strided convolution.

    :param length: the input length
    :param width: the kernel width
    :param stride: the stride
    :param padding: 'same' or 'causal'
    :return: a tuple (left padding, right padding, output length)
    """
    if length < 1:
        raise ShapeError('conv1d', 'length >= 1', length)
    if stride < 1 or width < 1:
        raise ShapeError('conv1d', 'width >= 1 and stride >= 1', (width, stride))
    if padding not in PADDING_MODES:
        raise ValueError(f"Unknown padding '{padding}', expected one of {PADDING_MODES}")
    out_length: int = -(-length // stride)
    needed: int = (out_length - 1) * stride + width
    if padding == 'same':
        total: int = max(needed - length, 0)
        left: int = total // 2
        return left, total - left, out_length
    left = width - 1
    return left, max(needed - length - left, 0), out_length


def _check_kernel(operation: str, input_shape: tuple[int, ...], kernel: Tensor, bias: Tensor | None = None) -> None:
    """ Reject kernels and biases that do not match the input channels. """
    if kernel.ndim != 3 or kernel.shape[1] != input_shape[2]:
        raise ShapeError(operation, f"kernel (width, {input_shape[2]}, c_out) for input {tuple(input_shape)}",
                         tuple(kernel.shape))
    if bias is not None and bias.shape != (kernel.shape[2],):
        raise ShapeError(operation, (kernel.shape[2],), tuple(bias.shape))


def _im2col(padded: Tensor, width: int, stride: int, out_length: int) -> Tensor:
    """ Gather the receptive fields of a padded input into a (batch * out_length, width * channels) matrix. """
    batch, _, channels = padded.shape
    windows: Tensor = sliding_window_view(padded, width, axis=1)[:, ::stride][:, :out_length]
    return windows.transpose(0, 1, 3, 2).reshape(batch * out_length, width * channels)


def _col2im(columns: Tensor, padded_length: int, stride: int) -> Tensor:
    """ Scatter-add receptive field gradients (batch, out_length, width, channels) onto the padded length axis. """
    batch, out_length, width, channels = columns.shape
    padded: Tensor = np.zeros((batch, padded_length, channels))
    span: int = stride * (out_length - 1) + 1
    for tap in range(width):
        padded[:, tap:tap + span:stride, :] += columns[:, :, tap, :]
    return padded


def _pad(values: Tensor, left: int, right: int) -> Tensor:
    """ Zero-pad the length axis. """
    return np.pad(values, ((0, 0), (left, right), (0, 0)))


def _zero_stuff(values: Tensor, stride: int) -> Tensor:
    """ Spread (batch, length, channels) samples `stride` positions apart, zeros in between. """
    batch, length, channels = values.shape
    stuffed: Tensor = np.zeros((batch, (length - 1) * stride + 1, channels))
    stuffed[:, ::stride] = values
    return stuffed


def _mix(spectrum: NDArray[np.complex128], kernel_spectrum: NDArray[np.complex128]) -> NDArray[np.complex128]:
    """ Mix channels bin by bin: (batch, bins, c_a) with (bins, c_a, c_b) into (batch, bins, c_b). """
    return np.matmul(spectrum.transpose(1, 0, 2), kernel_spectrum).transpose(1, 0, 2)


def _correlate(padded: Tensor, weights: Tensor, stride: int, out_length: int) -> Tensor:
    """ Strided cross-correlation of a padded input with a (width, c_in, c_out) kernel.

    :return: tensor of shape (batch, out_length, c_out), without bias
    """
    batch, padded_length, _ = padded.shape
    width, c_in, c_out = weights.shape
    if width < FFT_MIN_WIDTH:
        columns: Tensor = _im2col(padded, width, stride, out_length)
        return (columns @ weights.reshape(width * c_in, c_out)).reshape(batch, out_length, c_out)
    size: int = next_fast_len(padded_length, real=True)
    kernel_spectrum: NDArray[np.complex128] = np.conj(rfft(weights, size, axis=0))
    full: Tensor = irfft(_mix(rfft(padded, size, axis=1), kernel_spectrum), size, axis=1)
    return full[:, :(out_length - 1) * stride + 1:stride]


def _correlate_adjoint(gradient: Tensor, weights: Tensor, padded_length: int, stride: int) -> Tensor:
    """ Adjoint of _correlate: spread a (batch, out_length, c_out) gradient back over the padded input.

    :return: tensor of shape (batch, padded_length, c_in)
    """
    batch, out_length, c_out = gradient.shape
    width, c_in, _ = weights.shape
    if width < FFT_MIN_WIDTH:
        grad_columns: Tensor = gradient.reshape(-1, c_out) @ weights.reshape(width * c_in, c_out).T
        return _col2im(grad_columns.reshape(batch, out_length, width, c_in), padded_length, stride)
    size: int = next_fast_len(padded_length, real=True)
    kernel_spectrum: NDArray[np.complex128] = rfft(weights, size, axis=0).transpose(0, 2, 1)
    full: Tensor = irfft(_mix(rfft(_zero_stuff(gradient, stride), size, axis=1), kernel_spectrum), size, axis=1)
    return full[:, :padded_length]


def _kernel_gradient(padded: Tensor, gradient: Tensor, width: int, stride: int) -> Tensor:
    """ Gradient of _correlate with respect to the kernel, summed over the batch.

    :return: array of shape (width, c_in, c_out)
    """
    batch, padded_length, c_in = padded.shape
    _, out_length, c_out = gradient.shape
    if width < FFT_MIN_WIDTH:
        columns: Tensor = _im2col(padded, width, stride, out_length)
        return (columns.T @ gradient.reshape(batch * out_length, c_out)).reshape(width, c_in, c_out)
    size: int = next_fast_len(padded_length, real=True)
    spectrum: NDArray[np.complex128] = rfft(padded, size, axis=1).transpose(1, 2, 0)
    grad_spectrum: NDArray[np.complex128] = np.conj(rfft(_zero_stuff(gradient, stride), size, axis=1))
    return irfft(np.matmul(spectrum, grad_spectrum.transpose(1, 0, 2)), size, axis=0)[:width]


def conv1d(input: Any, kernel: Any, bias: Any, stride: int = 1, padding: str = 'same') -> Tensor:
    """ Strided 1-D convolution.

    :param input: tensor of shape (batch, length, c_in)
    :param kernel: array of shape (width, c_in, c_out)
    :param bias: array of shape (c_out,)
    :param stride: the stride
    :param padding: 'same' or 'causal'
    :return: tensor of shape (batch, ceil(length / stride), c_out)
    """
    values: Tensor = as_tensor(input, 'conv1d')
    weights: Tensor = as_array(kernel)
    offsets: Tensor = as_array(bias)
    _check_kernel('conv1d', values.shape, weights, offsets)
    left, right, out_length = conv_geometry(values.shape[1], weights.shape[0], stride, padding)
    return _correlate(_pad(values, left, right), weights, stride, out_length) + offsets


def conv1d_input_grad(grad_out: Any, kernel: Any, length: int, stride: int = 1, padding: str = 'same') -> Tensor:
    """ Gradient of conv1d with respect to its input only, for callers that do not train the kernel.

    :param grad_out: gradient of the output, shape (batch, ceil(length / stride), c_out)
    :param kernel: the kernel of the matching forward call
    :param length: the input length of the matching forward call
    :param stride: the stride of the matching forward call
    :param padding: the padding of the matching forward call
    :return: the input gradient, shape (batch, length, c_in)
    """
    weights: Tensor = as_array(kernel)
    gradient: Tensor = as_array(grad_out)
    width, _, c_out = weights.shape
    left, right, out_length = conv_geometry(length, width, stride, padding)
    require_shape('conv1d_input_grad', gradient, (gradient.shape[0], out_length, c_out))
    return _correlate_adjoint(gradient, weights, length + left + right, stride)[:, left:left + length]


def conv1d_backward(grad_out: Any, input: Any, kernel: Any, stride: int = 1,
                    padding: str = 'same') -> tuple[Tensor, Tensor, Tensor]:
    """ Gradients of conv1d with respect to its input, kernel and bias.

    :param grad_out: gradient of the output, shape (batch, ceil(length / stride), c_out)
    :param input: the input of the matching forward call
    :param kernel: the kernel of the matching forward call
    :param stride: the stride of the matching forward call
    :param padding: the padding of the matching forward call
    :return: a tuple (grad_input, grad_kernel, grad_bias)
    """
    values: Tensor = as_tensor(input, 'conv1d_backward')
    weights: Tensor = as_array(kernel)
    gradient: Tensor = as_array(grad_out)
    _check_kernel('conv1d_backward', values.shape, weights)
    batch, length, _ = values.shape
    width, _, c_out = weights.shape
    left, right, out_length = conv_geometry(length, width, stride, padding)
    require_shape('conv1d_backward', gradient, (batch, out_length, c_out))

    grad_kernel: Tensor = _kernel_gradient(_pad(values, left, right), gradient, width, stride)
    return conv1d_input_grad(gradient, weights, length, stride, padding), grad_kernel, gradient.sum(axis=(0, 1))


def conv1d_transpose(input: Any, kernel: Any, bias: Any, stride: int = 1) -> Tensor:
    """ Fractionally-strided convolution, the adjoint of conv1d up to the bias.

    The kernel is laid out (width, c_in, c_out) like a conv1d kernel; the transposed convolution with it is the
    adjoint of conv1d with kernel.transpose(0, 2, 1) on signals of length length * stride.

    :param input: tensor of shape (batch, length, c_in)
    :param kernel: array of shape (width, c_in, c_out)
    :param bias: array of shape (c_out,)
    :param stride: the upsampling factor
    :return: tensor of shape (batch, length * stride, c_out)
    """
    values: Tensor = as_tensor(input, 'conv1d_transpose')
    weights: Tensor = as_array(kernel)
    offsets: Tensor = as_array(bias)
    _check_kernel('conv1d_transpose', values.shape, weights, offsets)
    return conv1d_input_grad(values, weights.transpose(0, 2, 1), values.shape[1] * stride, stride) + offsets


def conv1d_transpose_backward(grad_out: Any, input: Any, kernel: Any,
                              stride: int = 1) -> tuple[Tensor, Tensor, Tensor]:
    """ Gradients of conv1d_transpose with respect to its input, kernel and bias.

    :param grad_out: gradient of the output, shape (batch, length * stride, c_out)
    :param input: the input of the matching forward call
    :param kernel: the kernel of the matching forward call
    :param stride: the stride of the matching forward call
    :return: a tuple (grad_input, grad_kernel, grad_bias)
    """
    values: Tensor = as_tensor(input, 'conv1d_transpose_backward')
    weights: Tensor = as_array(kernel)
    gradient: Tensor = as_array(grad_out)
    _check_kernel('conv1d_transpose_backward', values.shape, weights)
    batch, length, _ = values.shape
    width, _, c_out = weights.shape
    out_length: int = length * stride
    require_shape('conv1d_transpose_backward', gradient, (batch, out_length, c_out))
    left, right, _ = conv_geometry(out_length, width, stride)

    padded: Tensor = _pad(gradient, left, right)
    adjoint: Tensor = weights.transpose(0, 2, 1)
    grad_input: Tensor = _correlate(padded, adjoint, stride, length)
    grad_kernel: Tensor = _kernel_gradient(padded, values, width, stride).transpose(0, 2, 1)
    return grad_input, grad_kernel, gradient.sum(axis=(0, 1))
