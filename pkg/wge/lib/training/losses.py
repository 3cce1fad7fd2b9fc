""" Least-squares adversarial objectives. The discriminator targets s (0.9 with one-sided label smoothing, else 1)
on real pairs and 0 on generated pairs; the generator always targets 1 and adds a weighted L1 term.
"""
from __future__ import annotations

from typing import Any

import numpy as np

from wge.exceptions import ShapeError
from wge.lib.tensor import Tensor, as_array, mse, mse_backward, l1_loss, l1_loss_backward


def _scores(operation: str, scores: Any) -> Tensor:
    """ Non-empty score array. """
    values: Tensor = as_array(scores)
    if values.size == 0:
        raise ShapeError(operation, 'a non-empty batch of scores', values.shape)
    return values


def d_loss_terms(real_scores: Any, fake_scores: Any, smoothing_target: float = 1.0) -> tuple[float, float]:
    """ The two halves of the discriminator loss.

    :param real_scores: scores of (clean, noisy) pairs
    :param fake_scores: scores of (generated, noisy) pairs
    :param smoothing_target: the real target s
    :return: a tuple (1/2 mean (real - s)^2, 1/2 mean fake^2)
    """
    real: Tensor = _scores('d_loss', real_scores)
    fake: Tensor = _scores('d_loss', fake_scores)
    return 0.5 * mse(real, np.full_like(real, smoothing_target)), 0.5 * mse(fake, np.zeros_like(fake))


def d_loss(real_scores: Any, fake_scores: Any, smoothing_target: float = 1.0) -> float:
    """ Discriminator loss 1/2 mean (real - s)^2 + 1/2 mean fake^2.

    :param real_scores: scores of (clean, noisy) pairs
    :param fake_scores: scores of (generated, noisy) pairs
    :param smoothing_target: the real target s
    :return: the loss
    """
    real_term, fake_term = d_loss_terms(real_scores, fake_scores, smoothing_target)
    return real_term + fake_term


def d_loss_grads(real_scores: Any, fake_scores: Any, smoothing_target: float = 1.0) -> tuple[Tensor, Tensor]:
    """ Gradients of d_loss with respect to the real and the fake scores. """
    real: Tensor = _scores('d_loss', real_scores)
    fake: Tensor = _scores('d_loss', fake_scores)
    return (0.5 * mse_backward(real, np.full_like(real, smoothing_target)),
            0.5 * mse_backward(fake, np.zeros_like(fake)))


def g_loss(fake_scores: Any, estimate: Any, target: Any, lambda_l1: float) -> tuple[float, float, float]:
    """ Generator loss mean (fake - 1)^2 + lambda mean |estimate - target|.

    :param fake_scores: scores of (generated, noisy) pairs
    :param estimate: the generator output
    :param target: the clean target
    :param lambda_l1: weight of the L1 term
    :return: a tuple (total, adversarial term, L1 term)
    """
    fake: Tensor = _scores('g_loss', fake_scores)
    adversarial: float = mse(fake, np.ones_like(fake))
    l1: float = l1_loss(estimate, target)
    return adversarial + lambda_l1 * l1, adversarial, l1


def g_loss_grads(fake_scores: Any, estimate: Any, target: Any, lambda_l1: float) -> tuple[Tensor, Tensor]:
    """ Gradients of g_loss with respect to the fake scores and the estimate. """
    fake: Tensor = _scores('g_loss', fake_scores)
    return mse_backward(fake, np.ones_like(fake)), lambda_l1 * l1_loss_backward(estimate, target)
