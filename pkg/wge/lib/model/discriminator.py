""" The conditional discriminator: the (candidate, noisy) pair stacked on two channels, a strided convolution stack
mirroring the encoder with optional instance normalisation and LeakyReLU, a 1x1 convolution to one channel and a
dense layer producing one unbounded score per item.

Parameter names: `disc{i}.kernel|bias` for i = 1..N, `head.kernel|bias`, `dense.weight|bias`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np
from numpy.random import Generator

from wge.const import SEED_INIT_D
from wge.exceptions import ShapeError
from wge.lib.utils import derive_rng
from wge.lib.dsp import design_gammatone_bank
from wge.lib.tensor import (
    Tensor, as_tensor, as_array, conv1d, conv1d_backward, conv1d_input_grad, leaky_relu, leaky_relu_backward,
    instance_norm, instance_norm_backward, dense, dense_backward, concat_channels, split_channels
)
from .config import GeneratorConfig
from .params import DiscriminatorParams, truncated_normal


def build_discriminator(config: GeneratorConfig) -> DiscriminatorParams:
    """ Build and initialise the discriminator parameters from the init-D sub-seed.

    :param config: the layer plan and flags
    :return: the parameters
    """
    config.validate()
    rng: Generator = derive_rng(config.seed, SEED_INIT_D)
    params: DiscriminatorParams = DiscriminatorParams(config)
    width: int = config.filter_width

    c_in: int = 2
    for layer, maps in enumerate(config.feature_maps, start=1):
        kernel: Tensor = truncated_normal(rng, (width, c_in, maps))
        trainable: bool = True
        if layer == 1 and config.flags.use_gt_layer:
            bank: Tensor = design_gammatone_bank(n_filters=maps, width=width).kernels
            kernel[:, 0, :] = bank
            kernel[:, 1, :] = bank
            trainable = not config.freeze_gt
        params.add(f'disc{layer}.kernel', kernel, trainable)
        params.add(f'disc{layer}.bias', np.zeros(maps), trainable)
        c_in = maps
    params.add('head.kernel', truncated_normal(rng, (1, c_in, 1)))
    params.add('head.bias', np.zeros(1))
    params.add('dense.weight', truncated_normal(rng, (config.bottleneck_length, 1)))
    params.add('dense.bias', np.zeros(1))
    return params


@dataclass
class DiscriminatorTrace:
    """ Intermediate values of one discriminator forward pass. """
    input: Tensor
    conv_inputs: list[Tensor] = field(default_factory=list)
    conv_pre: list[Tensor] = field(default_factory=list)
    normalized: list[Tensor] = field(default_factory=list)
    features: Tensor | None = None
    head: Tensor | None = None
    scores: Tensor | None = None


def run_discriminator(params: DiscriminatorParams, a: Any, y: Any) -> DiscriminatorTrace:
    """ Forward pass keeping every intermediate value.

    :param params: the discriminator parameters
    :param a: the clean or generated candidate, shape (batch, input_length, 1)
    :param y: the paired noisy signal, same shape
    :return: the trace, with scores of shape (batch, 1)
    """
    config: GeneratorConfig = params.config
    candidate: Tensor = as_tensor(a, 'discriminator_forward')
    noisy: Tensor = as_tensor(y, 'discriminator_forward')
    if candidate.shape != noisy.shape:
        raise ShapeError('discriminator_forward', candidate.shape, noisy.shape)
    if candidate.shape[1:] != (config.input_length, 1):
        raise ShapeError('discriminator_forward', f"(batch, {config.input_length}, 1)", candidate.shape)

    hidden: Tensor = concat_channels(candidate, noisy)
    trace: DiscriminatorTrace = DiscriminatorTrace(input=hidden)
    for layer in range(1, config.n_layers + 1):
        trace.conv_inputs.append(hidden)
        pre: Tensor = conv1d(hidden, params.value(f'disc{layer}.kernel'), params.value(f'disc{layer}.bias'),
                             config.stride)
        normalized: Tensor = instance_norm(pre) if config.flags.use_instance_norm else pre
        trace.conv_pre.append(pre)
        trace.normalized.append(normalized)
        hidden = leaky_relu(normalized, config.leaky_slope)
    trace.features = hidden
    trace.head = conv1d(hidden, params.value('head.kernel'), params.value('head.bias'))
    trace.scores = dense(trace.head[:, :, 0], params.value('dense.weight'), params.value('dense.bias'))
    return trace


def discriminator_forward(params: DiscriminatorParams, a: Any, y: Any) -> Tensor:
    """ Unbounded realness scores D(a, y).

    :param params: the discriminator parameters
    :param a: the candidate, shape (batch, input_length, 1)
    :param y: the noisy condition, same shape
    :return: scores of shape (batch, 1)
    """
    scores: Tensor | None = run_discriminator(params, a, y).scores
    assert scores is not None
    return scores


def discriminator_backward(params: DiscriminatorParams, trace: DiscriminatorTrace, grad_scores: Any,
                           accumulate: bool = True) -> Tensor:
    """ Backpropagate a score gradient through the discriminator.

    :param params: the parameters used for the traced forward pass
    :param trace: the trace of that pass
    :param grad_scores: gradient of the loss with respect to the scores, shape (batch, 1)
    :param accumulate: add parameter gradients to the accumulators; False skips computing them
    :return: gradient with respect to the candidate a, shape (batch, input_length, 1)
    """
    config: GeneratorConfig = params.config
    grad: Tensor = as_array(grad_scores)
    if trace.scores is None or trace.head is None or grad.shape != trace.scores.shape:
        raise ShapeError('discriminator_backward', None if trace.scores is None else trace.scores.shape, grad.shape)

    def through_conv(name: str, grad_out: Tensor, layer_input: Tensor, stride: int = 1) -> Tensor:
        """ Input gradient of a convolution, accumulating its parameter gradients when training. """
        kernel: Tensor = params.value(f'{name}.kernel')
        if not accumulate:
            return conv1d_input_grad(grad_out, kernel, layer_input.shape[1], stride)
        grad_input, grad_kernel, grad_bias = conv1d_backward(grad_out, layer_input, kernel, stride)
        params[f'{name}.kernel'].accumulate(grad_kernel)
        params[f'{name}.bias'].accumulate(grad_bias)
        return grad_input

    grad_head, grad_weight, grad_bias = dense_backward(grad, trace.head[:, :, 0], params.value('dense.weight'))
    if accumulate:
        params['dense.weight'].accumulate(grad_weight)
        params['dense.bias'].accumulate(grad_bias)
    grad = through_conv('head', grad_head[:, :, np.newaxis], trace.features)
    for layer in range(config.n_layers, 0, -1):
        grad = leaky_relu_backward(grad, trace.normalized[layer - 1], config.leaky_slope)
        if config.flags.use_instance_norm:
            grad = instance_norm_backward(grad, trace.conv_pre[layer - 1])
        grad = through_conv(f'disc{layer}', grad, trace.conv_inputs[layer - 1], config.stride)
    grad_candidate, _ = split_channels(grad, 1)
    return grad_candidate
