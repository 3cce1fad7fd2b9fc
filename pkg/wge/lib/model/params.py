""" Named parameter collections and their initialisation.
"""
from __future__ import annotations

from typing import Iterator, Any

import numpy as np
from numpy.random import Generator
from numpy.typing import NDArray
from scipy.stats import truncnorm

from wge.const import INIT_STDDEV
from wge.exceptions import CheckpointError
from wge.lib.tensor import Parameter
from .config import GeneratorConfig


def truncated_normal(rng: Generator, shape: tuple[int, ...], stddev: float = INIT_STDDEV) -> NDArray:
    """ Zero-mean normal samples truncated at two standard deviations.

    :param rng: the random generator
    :param shape: the output shape
    :param stddev: the standard deviation before truncation
    :return: the samples
    """
    return truncnorm.rvs(-2.0, 2.0, loc=0.0, scale=stddev, size=shape, random_state=rng)


class ParameterSet:
    """ An ordered, name-indexed collection of parameters.

    :param config: the layer plan the parameters were built for
    """

    def __init__(self, config: GeneratorConfig) -> None:
        """ Constructor of the class. """
        self.config: GeneratorConfig = config
        self._parameters: dict[str, Parameter] = {}

    def add(self, name: str, value: Any, trainable: bool = True) -> Parameter:
        """ Register a new parameter.

        :param name: unique name of the parameter
        :param value: its initial value
        :param trainable: whether optimizer updates apply to it
        :return: the parameter
        """
        if name in self._parameters:
            raise KeyError(f"Duplicate parameter '{name}'")
        parameter: Parameter = Parameter(name, value, trainable)
        self._parameters[name] = parameter
        return parameter

    def __getitem__(self, name: str) -> Parameter:
        """ Parameter lookup by name """
        return self._parameters[name]

    def __contains__(self, name: object) -> bool:
        """ Whether a parameter is registered """
        return name in self._parameters

    def __iter__(self) -> Iterator[Parameter]:
        """ Parameters in registration order """
        return iter(self._parameters.values())

    def __len__(self) -> int:
        """ Number of parameters """
        return len(self._parameters)

    @property
    def names(self) -> list[str]:
        """ Parameter names in registration order """
        return list(self._parameters)

    def value(self, name: str) -> NDArray[np.float64]:
        """ The value of a parameter as a 64-bit array. """
        return self._parameters[name].value.astype(np.float64)

    def zero_grad(self) -> None:
        """ Reset every gradient accumulator. """
        for parameter in self:
            parameter.zero_grad()

    def count(self) -> int:
        """ Total number of scalar parameters. """
        return int(sum(parameter.value.size for parameter in self))

    def arrays(self) -> dict[str, NDArray]:
        """ Copies of the 32-bit values keyed by name, in registration order. """
        return {name: parameter.value.copy() for name, parameter in self._parameters.items()}

    def load_arrays(self, arrays: dict[str, NDArray]) -> None:
        """ Overwrite every value from a name-keyed mapping.

        :param arrays: one array per parameter, with matching shapes
        :raises CheckpointError: on missing, extra or mis-shaped arrays
        """
        missing: set[str] = set(self._parameters) - set(arrays)
        extra: set[str] = set(arrays) - set(self._parameters)
        if missing or extra:
            raise CheckpointError(f"Parameter names do not match: missing {sorted(missing)}, extra {sorted(extra)}")
        for name, parameter in self._parameters.items():
            if tuple(arrays[name].shape) != parameter.shape:
                raise CheckpointError(f"Parameter '{name}' has shape {tuple(arrays[name].shape)}, "
                                      f"expected {parameter.shape}")
        for name, parameter in self._parameters.items():
            parameter.assign(arrays[name])

    def __repr__(self) -> str:
        """ String representation of the set """
        return f"{type(self).__name__}({len(self)} parameters, {self.count()} values)"


class GeneratorParams(ParameterSet):
    """ Parameters of the generator: optional pre-emphasis layer, encoder and decoder layers. """


class DiscriminatorParams(ParameterSet):
    """ Parameters of the discriminator: convolution stack, 1x1 head and final dense layer. """
