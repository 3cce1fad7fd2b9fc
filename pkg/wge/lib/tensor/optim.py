""" The Adam optimizer. Moments are kept per parameter name; updates are computed in 64-bit and written back to the
32-bit parameter storage.
"""
from __future__ import annotations

from typing import Iterable

import numpy as np
from numpy.typing import NDArray

from wge.exceptions import OptimizerError
from .core import Parameter, STORAGE_DTYPE

MAX_STEPS: int = 2 ** 31 - 1


class AdamState:
    """ Per-parameter first and second moments plus the step counter of an Adam optimizer.

    :param parameters: the parameters the optimizer updates; moments start at zero
    :param lr: the learning rate
    :param beta1: decay of the first moment
    :param beta2: decay of the second moment
    :param eps: added to the root of the second moment
    """

    def __init__(self, parameters: Iterable[Parameter], lr: float = 0.0002, beta1: float = 0.5,
                 beta2: float = 0.999, eps: float = 1e-8) -> None:
        """ Constructor of the class. """
        self.lr: float = lr
        self.beta1: float = beta1
        self.beta2: float = beta2
        self.eps: float = eps
        self.t: int = 0
        self.m: dict[str, NDArray] = {}
        self.v: dict[str, NDArray] = {}
        for parameter in parameters:
            self.m[parameter.name] = np.zeros(parameter.shape, dtype=STORAGE_DTYPE)
            self.v[parameter.name] = np.zeros(parameter.shape, dtype=STORAGE_DTYPE)

    def scalars(self) -> dict:
        """ The hyperparameters and counter, as stored in checkpoints. """
        return {'lr': self.lr, 'beta1': self.beta1, 'beta2': self.beta2, 'eps': self.eps, 't': self.t}


def adam_step(parameters: Iterable[Parameter], state: AdamState) -> None:
    """ Apply one bias-corrected Adam update to every trainable parameter from its accumulated gradient.
    The whole parameter set is validated before anything is modified.

    :param parameters: the parameters, with gradients populated
    :param state: the optimizer state, updated in place
    """
    if state.t >= MAX_STEPS:
        raise OptimizerError(f"Adam step counter overflow at t={state.t}")
    selected: list[Parameter] = [parameter for parameter in parameters if parameter.trainable]
    for parameter in selected:
        if parameter.name not in state.m:
            raise OptimizerError("No optimizer moments for parameter", parameter.name)
        if state.m[parameter.name].shape != parameter.shape:
            raise OptimizerError(f"Moment shape {state.m[parameter.name].shape} does not match {parameter.shape}",
                                 parameter.name)
        if not np.all(np.isfinite(parameter.grad)):
            raise OptimizerError("Non-finite gradient", parameter.name)

    state.t += 1
    correction1: float = 1.0 - state.beta1 ** state.t
    correction2: float = 1.0 - state.beta2 ** state.t
    for parameter in selected:
        grad: NDArray = parameter.grad
        first: NDArray = state.beta1 * state.m[parameter.name].astype(np.float64) + (1.0 - state.beta1) * grad
        second: NDArray = state.beta2 * state.v[parameter.name].astype(np.float64) + (1.0 - state.beta2) * grad * grad
        update: NDArray = state.lr * (first / correction1) / (np.sqrt(second / correction2) + state.eps)
        parameter.value = (parameter.value.astype(np.float64) - update).astype(STORAGE_DTYPE)
        state.m[parameter.name] = first.astype(STORAGE_DTYPE)
        state.v[parameter.name] = second.astype(STORAGE_DTYPE)
