""" The generator: a strided convolutional encoder, an optional latent concatenation at the bottleneck and a
transposed convolutional decoder joined to the encoder by channel-concatenation skips.

Parameter names: `preemph.kernel` (optional), `enc{i}.kernel|bias|slope` for i = 1..N and
`dec{j}.kernel|bias|slope` for j = 1..N, the last decoder layer having no slope (identity output).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np
from numpy.random import Generator

from wge.const import SEED_INIT_G
from wge.exceptions import ShapeError
from wge.lib.utils import derive_rng
from wge.lib.dsp import design_gammatone_bank
from wge.lib.tensor import (
    Tensor, as_tensor, conv1d, conv1d_backward, conv1d_transpose, conv1d_transpose_backward, prelu, prelu_backward,
    concat_channels, split_channels
)
from .config import GeneratorConfig
from .params import GeneratorParams, truncated_normal

PRELU_INIT: float = 0.0
_NO_BIAS: Tensor = np.zeros(1)


def decoder_channels(config: GeneratorConfig, layer: int) -> tuple[int, int]:
    """ Input and output channels of decoder layer `layer` (1-based).

    :param config: the layer plan
    :param layer: the decoder layer index j
    :return: a tuple (c_in, c_out)
    """
    maps: tuple[int, ...] = config.feature_maps
    n_layers: int = config.n_layers
    c_in: int = maps[-1] * (2 if config.flags.use_latent else 1) if layer == 1 else 2 * maps[n_layers - layer]
    c_out: int = maps[n_layers - layer - 1] if layer < n_layers else 1
    return c_in, c_out


def build_generator(config: GeneratorConfig) -> GeneratorParams:
    """ Build and initialise the generator parameters. Kernels are truncated normal (std 0.02) drawn from the
    init-G sub-seed, biases are zero and PReLU slopes start at 0.

    :param config: the layer plan and flags
    :return: the parameters
    """
    config.validate()
    rng: Generator = derive_rng(config.seed, SEED_INIT_G)
    params: GeneratorParams = GeneratorParams(config)
    width: int = config.filter_width
    flags = config.flags

    if flags.use_preemph_layer:
        params.add('preemph.kernel', np.array([-config.preemph_alpha, 1.0]).reshape(2, 1, 1))

    c_in: int = 1
    for layer, maps in enumerate(config.feature_maps, start=1):
        kernel: Tensor = truncated_normal(rng, (width, c_in, maps))
        trainable: bool = True
        if layer == 1 and flags.use_gt_layer:
            kernel[:, 0, :] = design_gammatone_bank(n_filters=maps, width=width).kernels
            trainable = not config.freeze_gt
        params.add(f'enc{layer}.kernel', kernel, trainable)
        params.add(f'enc{layer}.bias', np.zeros(maps), trainable)
        params.add(f'enc{layer}.slope', np.full(maps, PRELU_INIT))
        c_in = maps

    for layer in range(1, config.n_layers + 1):
        c_in, c_out = decoder_channels(config, layer)
        params.add(f'dec{layer}.kernel', truncated_normal(rng, (width, c_in, c_out)))
        params.add(f'dec{layer}.bias', np.zeros(c_out))
        if layer < config.n_layers:
            params.add(f'dec{layer}.slope', np.full(c_out, PRELU_INIT))
    return params


@dataclass
class GeneratorTrace:
    """ Intermediate values of one generator forward pass, consumed by the backward pass.

    encoder_input is the (optionally pre-emphasised) input; encoder_pre/encoder_act hold each encoder layer before
    and after its PReLU; decoder_inputs holds what each decoder layer consumed (bottleneck concatenation first);
    decoder_pre the transposed convolution outputs.
    """
    input: Tensor
    encoder_input: Tensor
    encoder_pre: list[Tensor] = field(default_factory=list)
    encoder_act: list[Tensor] = field(default_factory=list)
    decoder_inputs: list[Tensor] = field(default_factory=list)
    decoder_pre: list[Tensor] = field(default_factory=list)
    output: Tensor | None = None

    @property
    def bottleneck(self) -> Tensor:
        """ The encoder output, before any latent concatenation """
        return self.encoder_act[-1]


def _check_inputs(params: GeneratorParams, y: Any, z: Any) -> tuple[Tensor, Tensor | None]:
    """ Validate the noisy input and the latent against the configuration. """
    config: GeneratorConfig = params.config
    noisy: Tensor = as_tensor(y, 'generator_forward')
    if noisy.shape[1:] != (config.input_length, 1):
        raise ShapeError('generator_forward', f"(batch, {config.input_length}, 1)", noisy.shape)
    if config.flags.use_latent != (z is not None):
        raise ShapeError('generator_forward', 'a latent tensor' if config.flags.use_latent else 'no latent tensor',
                         'none' if z is None else np.shape(z))
    if z is None:
        return noisy, None
    latent: Tensor = as_tensor(z, 'generator_forward')
    expected: tuple[int, int, int] = (noisy.shape[0], config.bottleneck_length, config.bottleneck_channels)
    if latent.shape != expected:
        raise ShapeError('generator_forward', expected, latent.shape)
    return noisy, latent


def run_generator(params: GeneratorParams, y: Any, z: Any = None) -> GeneratorTrace:
    """ Forward pass keeping every intermediate value.

    :param params: the generator parameters
    :param y: the noisy input, shape (batch, input_length, 1)
    :param z: the latent, shape (batch, bottleneck_length, bottleneck_channels), present iff use_latent
    :return: the trace, whose output has the shape of y
    """
    config: GeneratorConfig = params.config
    noisy, latent = _check_inputs(params, y, z)
    stride: int = config.stride
    hidden: Tensor = noisy
    if 'preemph.kernel' in params:
        hidden = conv1d(noisy, params.value('preemph.kernel'), _NO_BIAS, 1, 'causal')
    trace: GeneratorTrace = GeneratorTrace(input=noisy, encoder_input=hidden)

    for layer in range(1, config.n_layers + 1):
        pre: Tensor = conv1d(hidden, params.value(f'enc{layer}.kernel'), params.value(f'enc{layer}.bias'), stride)
        hidden = prelu(pre, params.value(f'enc{layer}.slope'))
        trace.encoder_pre.append(pre)
        trace.encoder_act.append(hidden)

    if latent is not None:
        hidden = concat_channels(hidden, latent)
    for layer in range(1, config.n_layers + 1):
        trace.decoder_inputs.append(hidden)
        pre = conv1d_transpose(hidden, params.value(f'dec{layer}.kernel'), params.value(f'dec{layer}.bias'), stride)
        trace.decoder_pre.append(pre)
        if layer == config.n_layers:
            hidden = pre
        else:
            activation: Tensor = prelu(pre, params.value(f'dec{layer}.slope'))
            hidden = concat_channels(activation, trace.encoder_act[config.n_layers - layer - 1])
    trace.output = hidden
    return trace


def generator_forward(params: GeneratorParams, y: Any, z: Any = None) -> Tensor:
    """ Enhanced estimate x_hat = G(y, z).

    :param params: the generator parameters
    :param y: the noisy input, shape (batch, input_length, 1)
    :param z: the latent, present iff use_latent
    :return: the estimate, shape (batch, input_length, 1)
    """
    output: Tensor | None = run_generator(params, y, z).output
    assert output is not None
    return output


def generator_backward(params: GeneratorParams, trace: GeneratorTrace, grad_output: Any) -> Tensor:
    """ Accumulate the gradient of a scalar loss into every generator parameter.

    :param params: the parameters used for the traced forward pass
    :param trace: the trace of that pass
    :param grad_output: gradient of the loss with respect to the output
    :return: gradient with respect to the noisy input y
    """
    config: GeneratorConfig = params.config
    n_layers, stride = config.n_layers, config.stride
    grad: Tensor = as_tensor(grad_output, 'generator_backward')
    if trace.output is None or grad.shape != trace.output.shape:
        raise ShapeError('generator_backward', None if trace.output is None else trace.output.shape, grad.shape)
    grad_act: list[Tensor] = [np.zeros_like(activation) for activation in trace.encoder_act]

    for layer in range(n_layers, 0, -1):
        if layer < n_layers:
            channels: int = trace.decoder_pre[layer - 1].shape[2]
            grad, grad_skip = split_channels(grad, channels)
            grad_act[n_layers - layer - 1] += grad_skip
            grad, grad_slope = prelu_backward(grad, trace.decoder_pre[layer - 1], params.value(f'dec{layer}.slope'))
            params[f'dec{layer}.slope'].accumulate(grad_slope)
        grad, grad_kernel, grad_bias = conv1d_transpose_backward(
            grad, trace.decoder_inputs[layer - 1], params.value(f'dec{layer}.kernel'), stride)
        params[f'dec{layer}.kernel'].accumulate(grad_kernel)
        params[f'dec{layer}.bias'].accumulate(grad_bias)

    if config.flags.use_latent:
        grad, _ = split_channels(grad, config.bottleneck_channels)
    grad_act[-1] += grad

    for layer in range(n_layers, 0, -1):
        grad, grad_slope = prelu_backward(grad_act[layer - 1], trace.encoder_pre[layer - 1],
                                          params.value(f'enc{layer}.slope'))
        params[f'enc{layer}.slope'].accumulate(grad_slope)
        layer_input: Tensor = trace.encoder_act[layer - 2] if layer > 1 else trace.encoder_input
        grad, grad_kernel, grad_bias = conv1d_backward(grad, layer_input, params.value(f'enc{layer}.kernel'), stride)
        params[f'enc{layer}.kernel'].accumulate(grad_kernel)
        params[f'enc{layer}.bias'].accumulate(grad_bias)
        if layer > 1:
            grad_act[layer - 2] += grad

    if 'preemph.kernel' in params:
        grad, grad_kernel, _ = conv1d_backward(grad, trace.input, params.value('preemph.kernel'), 1, 'causal')
        params['preemph.kernel'].accumulate(grad_kernel)
    return grad
