from unittest import TestCase

import numpy as np

from wge.exceptions import ShapeError
from wge.lib.dsp import design_gammatone_bank
from wge.lib.model import (
    VariantFlags, GeneratorConfig, build_discriminator, discriminator_forward, discriminator_backward,
    run_discriminator
)
from wge.lib.tensor import finite_diff_grad, relative_error


def small_config(**flags):
    return GeneratorConfig(n_layers=3, filter_width=5, feature_maps=(4, 6, 8), input_length=64,
                           flags=VariantFlags(**flags), seed=5)


class TestBuildDiscriminator(TestCase):

    def test_parameters(self):
        params = build_discriminator(small_config())
        self.assertEqual(params['disc1.kernel'].shape, (5, 2, 4))
        self.assertEqual(params['head.kernel'].shape, (1, 8, 1))
        self.assertEqual(params['dense.weight'].shape, (8, 1))
        self.assertEqual(params.names[-1], 'dense.bias')

    def test_determinism(self):
        first, second = build_discriminator(small_config()), build_discriminator(small_config())
        for name in first.names:
            np.testing.assert_array_equal(first[name].value, second[name].value)

    def test_gammatone_on_both_channels(self):
        params = build_discriminator(small_config(use_gt_layer=True))
        bank = design_gammatone_bank(n_filters=4, width=5)
        np.testing.assert_allclose(params.value('disc1.kernel')[:, 0, :], bank.kernels, atol=1e-7)
        np.testing.assert_allclose(params.value('disc1.kernel')[:, 1, :], bank.kernels, atol=1e-7)


class TestDiscriminatorForward(TestCase):

    def setUp(self):
        rng = np.random.default_rng(0)
        self.a = rng.uniform(-0.5, 0.5, (3, 64, 1))
        self.y = rng.uniform(-0.5, 0.5, (3, 64, 1))

    def test_shapes(self):
        params = build_discriminator(small_config())
        trace = run_discriminator(params, self.a, self.y)
        self.assertEqual(trace.input.shape, (3, 64, 2))
        self.assertEqual(trace.features.shape, (3, 8, 8))
        self.assertEqual(trace.head.shape, (3, 8, 1))
        self.assertEqual(trace.scores.shape, (3, 1))

    def test_batch_permutation(self):
        params = build_discriminator(small_config())
        scores = discriminator_forward(params, self.a, self.y)
        order = [2, 0, 1]
        np.testing.assert_allclose(discriminator_forward(params, self.a[order], self.y[order]), scores[order],
                                   atol=1e-12)
        np.testing.assert_array_equal(discriminator_forward(params, self.a, self.y), scores)

    def test_without_instance_norm(self):
        params = build_discriminator(small_config(use_instance_norm=False))
        trace = run_discriminator(params, self.a, self.y)
        np.testing.assert_array_equal(trace.normalized[0], trace.conv_pre[0])

    def test_mismatch(self):
        params = build_discriminator(small_config())
        with self.assertRaises(ShapeError):
            discriminator_forward(params, self.a, self.y[:, :32])
        with self.assertRaises(ShapeError):
            discriminator_forward(params, self.a[:, :32], self.y[:, :32])


class TestDiscriminatorBackward(TestCase):

    def test_candidate_gradient(self):
        rng = np.random.default_rng(1)
        params = build_discriminator(small_config())
        a, y = rng.uniform(-0.5, 0.5, (2, 64, 1)), rng.uniform(-0.5, 0.5, (2, 64, 1))
        projection = rng.standard_normal((2, 1))
        grad_a = discriminator_backward(params, run_discriminator(params, a, y), projection)
        numeric = finite_diff_grad(lambda v: float(np.sum(discriminator_forward(params, v, y) * projection)), a)
        self.assertLess(relative_error(grad_a, numeric), 1e-4)
        for parameter in params:
            if parameter.name.startswith('disc') and parameter.name.endswith('.bias'):
                continue
            self.assertTrue(np.any(parameter.grad != 0), parameter.name)

    def test_bias_gradient_without_instance_norm(self):
        rng = np.random.default_rng(3)
        params = build_discriminator(small_config(use_instance_norm=False))
        trace = run_discriminator(params, rng.standard_normal((2, 64, 1)), rng.standard_normal((2, 64, 1)))
        discriminator_backward(params, trace, np.ones((2, 1)))
        self.assertTrue(np.any(params['disc1.bias'].grad != 0))

    def test_discarding_gradients(self):
        rng = np.random.default_rng(2)
        params = build_discriminator(small_config())
        trace = run_discriminator(params, rng.standard_normal((2, 64, 1)), rng.standard_normal((2, 64, 1)))
        grad_a = discriminator_backward(params, trace, np.ones((2, 1)), accumulate=False)
        self.assertEqual(grad_a.shape, (2, 64, 1))
        for parameter in params:
            self.assertFalse(np.any(parameter.grad), parameter.name)
        np.testing.assert_allclose(grad_a, discriminator_backward(params, trace, np.ones((2, 1))), atol=1e-12)

    def test_stacked_batch_matches_separate_items(self):
        rng = np.random.default_rng(4)
        params = build_discriminator(small_config())
        a, y = rng.standard_normal((4, 64, 1)), rng.standard_normal((4, 64, 1))
        stacked = discriminator_forward(params, a, y)
        separate = np.concatenate([discriminator_forward(params, a[:2], y[:2]),
                                   discriminator_forward(params, a[2:], y[2:])])
        np.testing.assert_allclose(stacked, separate, atol=1e-12)

    def test_full_scale_ledger(self):
        config = GeneratorConfig.from_preset('full')
        trace = run_discriminator(build_discriminator(config), np.zeros((1, 16384, 1)), np.zeros((1, 16384, 1)))
        self.assertEqual(trace.features.shape, (1, 8, 1024))
        self.assertEqual(trace.head.shape, (1, 8, 1))
        self.assertEqual(trace.scores.shape, (1, 1))
