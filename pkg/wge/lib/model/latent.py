""" Seeded latent vector sampling.
"""
from __future__ import annotations

from numpy.random import default_rng

from wge.lib.tensor import Tensor
from .config import LatentSpec


def sample_latent(spec: LatentSpec, batch: int) -> Tensor:
    """ Draw i.i.d. standard-normal latents.

    :param spec: shape and seed of the sample
    :param batch: number of items
    :return: tensor of shape (batch, spec.length, spec.channels)
    """
    return default_rng(spec.seed).standard_normal((batch, spec.length, spec.channels))
