from os import path
from tempfile import TemporaryDirectory
from unittest import TestCase
from unittest.mock import patch

import numpy as np
import yaml
from pandas import read_csv

from wge.const import HISTORY_COLUMNS
from wge.exceptions import NumericalInstabilityError, OptimizerError, ManifestError
from wge.lib.checkpoint import load_checkpoint
from wge.lib.corpus import Dataset
from wge.lib.model import build_generator, generator_forward, run_generator, run_discriminator, discriminator_backward
from wge.lib.training import (
    TrainingState, train_step, train_epochs, epoch_batches, step_latent, write_summary, STATUS_COMPLETED,
    STATUS_UNSTABLE
)
from wge.lib.training.core import _discriminator_update
from wge.lib.training.losses import d_loss_grads
from .fixtures import toy_config, toy_dataset


def parameter_bytes(params):
    return {name: value.tobytes() for name, value in params.arrays().items()}


class TestTrainStep(TestCase):

    def setUp(self):
        self.dataset = toy_dataset()
        self.batch = self.dataset.frames('train').take(np.arange(4))

    def test_report(self):
        state = TrainingState.initial(toy_config())
        report = train_step(state, self.batch)
        self.assertEqual(report.step, 0)
        self.assertEqual(state.global_step, 1)
        for value in (report.d_loss_real, report.d_loss_fake, report.g_adv, report.g_l1):
            self.assertTrue(np.isfinite(value))
            self.assertGreaterEqual(value, 0.0)
        self.assertEqual((state.adam_d.t, state.adam_g.t), (1, 1))

    def test_determinism(self):
        states = [TrainingState.initial(toy_config()) for _ in range(2)]
        for state in states:
            for _ in range(3):
                train_step(state, self.batch)
        self.assertEqual(parameter_bytes(states[0].gen), parameter_bytes(states[1].gen))
        self.assertEqual(parameter_bytes(states[0].disc), parameter_bytes(states[1].disc))

    def test_generator_update_leaves_discriminator(self):
        trained, reference = TrainingState.initial(toy_config()), TrainingState.initial(toy_config())
        train_step(trained, self.batch)
        generator_input = self.batch.generator_input(False)
        estimate = generator_forward(reference.gen, generator_input, step_latent(reference, len(self.batch)))
        _discriminator_update(reference, self.batch.clean, self.batch.noisy, estimate)
        self.assertEqual(parameter_bytes(trained.disc), parameter_bytes(reference.disc))
        self.assertNotEqual(parameter_bytes(trained.gen), parameter_bytes(reference.gen))

    def test_discriminator_update_leaves_generator(self):
        state = TrainingState.initial(toy_config())
        before = parameter_bytes(state.gen)
        estimate = generator_forward(state.gen, self.batch.noisy, step_latent(state, len(self.batch)))
        _discriminator_update(state, self.batch.clean, self.batch.noisy, estimate)
        self.assertEqual(parameter_bytes(state.gen), before)

    def test_two_step_discriminator(self):
        state = TrainingState.initial(toy_config(d_two_steps=True))
        train_step(state, self.batch)
        self.assertEqual(state.adam_d.t, 2)

    def test_vanishing_learning_rate(self):
        state = TrainingState.initial(toy_config(lr=1e-9))
        before = {name: value.astype(np.float64) for name, value in state.gen.arrays().items()}
        first = train_step(state, self.batch)
        state.global_step = 0
        second = train_step(state, self.batch)
        for name, value in state.gen.arrays().items():
            self.assertLess(float(np.max(np.abs(value - before[name]))), 1e-6, name)
        self.assertLess(abs(second.g_l1 - first.g_l1), 1e-6)
        self.assertLess(abs(second.d_loss_real - first.d_loss_real), 1e-6)

    def test_frozen_gammatone_layer(self):
        state = TrainingState.initial(toy_config(gt=True, freeze_gt=True))
        kernel = state.gen['enc1.kernel'].value.copy()
        disc_kernel = state.disc['disc1.kernel'].value.copy()
        train_step(state, self.batch)
        np.testing.assert_array_equal(state.gen['enc1.kernel'].value, kernel)
        np.testing.assert_array_equal(state.disc['disc1.kernel'].value, disc_kernel)
        self.assertFalse(np.array_equal(state.gen['enc2.kernel'].value, build_generator(
            state.gen.config)['enc2.kernel'].value))

    def test_own_preemphasis_uses_raw_frames(self):
        state = TrainingState.initial(toy_config(preem=True))
        with patch('wge.lib.training.core.run_generator', wraps=run_generator) as mock_run:
            train_step(state, self.batch)
        self.assertEqual(mock_run.call_count, 1)
        np.testing.assert_array_equal(mock_run.call_args[0][1], self.batch.noisy_raw)

    def test_stacked_discriminator_update(self):
        state = TrainingState.initial(toy_config())
        clean, noisy = self.batch.clean, self.batch.noisy
        estimate = generator_forward(state.gen, noisy, step_latent(state, len(self.batch)))
        real, fake = run_discriminator(state.disc, clean, noisy), run_discriminator(state.disc, estimate, noisy)
        grad_real, grad_fake = d_loss_grads(real.scores, fake.scores, state.config.smoothing_target)
        discriminator_backward(state.disc, real, grad_real)
        discriminator_backward(state.disc, fake, grad_fake)
        expected = {parameter.name: parameter.grad.copy() for parameter in state.disc}
        with patch('wge.lib.training.core.adam_step') as mock_step:
            _discriminator_update(state, clean, noisy, estimate)
        mock_step.assert_called_once()
        for parameter in state.disc:
            np.testing.assert_allclose(parameter.grad, expected[parameter.name], rtol=1e-9, atol=1e-12,
                                       err_msg=parameter.name)

    @patch('wge.lib.training.core.adam_step', side_effect=OptimizerError('Non-finite gradient', 'disc1.kernel'))
    def test_optimizer_refusal(self, mock_step):
        state = TrainingState.initial(toy_config())
        with self.assertRaises(NumericalInstabilityError) as context:
            train_step(state, self.batch)
        self.assertEqual((context.exception.epoch, context.exception.step), (0, 0))
        self.assertIn('Non-finite gradient', str(context.exception))

    def test_latent_per_step(self):
        state = TrainingState.initial(toy_config())
        first = step_latent(state, 2)
        state.global_step += 1
        self.assertEqual(first.shape, (2, 8, 8))
        self.assertFalse(np.array_equal(first, step_latent(state, 2)))
        self.assertIsNone(step_latent(TrainingState.initial(toy_config(latent=False)), 2))

    def test_l1_decreases_on_toy_problem(self):
        state = TrainingState.initial(toy_config(lr=0.001, lambda_l1=1000.0, latent=False))
        single = self.dataset.frames('train').take(np.array([3]))
        losses = [train_step(state, single).g_l1 for _ in range(60)]
        self.assertLess(np.mean(losses[-10:]), np.mean(losses[:10]))

    @patch('wge.lib.training.core.d_loss_terms', return_value=(float('nan'), 0.0))
    def test_non_finite_loss(self, mock_terms):
        state = TrainingState.initial(toy_config())
        with self.assertRaises(NumericalInstabilityError) as context:
            train_step(state, self.batch)
        self.assertEqual((context.exception.epoch, context.exception.step), (0, 0))
        self.assertIn('d_loss_real', str(context.exception))

    def test_exploding_scores(self):
        state = TrainingState.initial(toy_config(score_limit=1e-12, instability_window=2))
        train_step(state, self.batch)
        with self.assertRaises(NumericalInstabilityError) as context:
            train_step(state, self.batch)
        self.assertEqual(context.exception.step, 1)


class TestEpochs(TestCase):

    def setUp(self):
        self.dataset = toy_dataset()

    def test_batches(self):
        state = TrainingState.initial(toy_config(batch_size=5))
        batches = epoch_batches(state, 23)
        self.assertEqual([len(batch) for batch in batches], [5, 5, 5, 5, 3])
        self.assertEqual(sorted(np.concatenate(batches).tolist()), list(range(23)))
        self.assertEqual([b.tolist() for b in batches], [b.tolist() for b in epoch_batches(state, 23)])
        state.epoch = 1
        self.assertNotEqual(np.concatenate(batches).tolist(), np.concatenate(epoch_batches(state, 23)).tolist())

    def test_zero_epochs(self):
        config = toy_config(epochs=0)
        with TemporaryDirectory() as out_dir:
            state = train_epochs(self.dataset, config, out_dir)
            checkpoint = load_checkpoint(path.join(out_dir, 'latest.wge'))
            self.assertTrue(path.isfile(path.join(out_dir, 'history.csv')))
        self.assertEqual(state.status, STATUS_COMPLETED)
        self.assertEqual(state.history, [])
        initial = build_generator(config.generator_config())
        for name, value in initial.arrays().items():
            np.testing.assert_array_equal(checkpoint.arrays[f'gen/{name}'], value)

    def test_history_and_outputs(self):
        with TemporaryDirectory() as out_dir:
            state = train_epochs(self.dataset, toy_config(), out_dir)
            history = read_csv(path.join(out_dir, 'history.csv'))
            self.assertTrue(path.isfile(path.join(out_dir, 'ckpt', 'epoch_0001.wge')))
            self.assertTrue(path.isfile(path.join(out_dir, 'ckpt', 'epoch_0002.wge')))
            summary = write_summary(state, self.dataset, out_dir)
            with open(path.join(out_dir, 'summary.yml')) as handle:
                stored = yaml.safe_load(handle)
        self.assertEqual(list(history.columns), HISTORY_COLUMNS)
        self.assertEqual(history['epoch'].tolist(), [1, 2])
        self.assertEqual(len(state.history), 2)
        self.assertEqual(state.epoch, 2)
        self.assertEqual(stored['status'], STATUS_COMPLETED)
        self.assertEqual(stored['variant'], 'IN + LabSmth')
        self.assertEqual(stored['config']['labsmth'], True)
        self.assertEqual(summary['epochs_completed'], 2)
        self.assertIn('heldout_segsnr', stored['baseline'])

    def test_identical_runs(self):
        first = train_epochs(self.dataset, toy_config())
        second = train_epochs(toy_dataset(), toy_config())
        self.assertEqual(parameter_bytes(first.gen), parameter_bytes(second.gen))
        self.assertEqual(first.history, second.history)

    def test_resume_equals_straight_run(self):
        straight = train_epochs(self.dataset, toy_config(epochs=3))
        with TemporaryDirectory() as out_dir:
            train_epochs(toy_dataset(), toy_config(epochs=1), out_dir)
            checkpoint = load_checkpoint(path.join(out_dir, 'latest.wge'))
        resumed = train_epochs(toy_dataset(), toy_config(epochs=3),
                               state=TrainingState.from_checkpoint(checkpoint, toy_config(epochs=3)))
        self.assertEqual(resumed.global_step, straight.global_step)
        self.assertEqual(parameter_bytes(resumed.gen), parameter_bytes(straight.gen))
        self.assertEqual(parameter_bytes(resumed.disc), parameter_bytes(straight.disc))
        self.assertEqual(resumed.history, straight.history)
        self.assertEqual(resumed.to_checkpoint().arrays.keys(), straight.to_checkpoint().arrays.keys())

    def test_instability_is_recorded(self):
        state = train_epochs(self.dataset, toy_config(score_limit=1e-12, instability_window=3))
        self.assertEqual(state.status, STATUS_UNSTABLE)
        self.assertEqual((state.abort['epoch'], state.abort['step']), (0, 2))
        self.assertEqual(state.history, [])

    @patch('wge.lib.training.core.LOGGER')
    def test_optimizer_refusal_is_recorded(self, mock_logger):
        refusal = OptimizerError('Non-finite gradient', 'enc1.kernel')
        with patch('wge.lib.training.core.adam_step', side_effect=refusal):
            state = train_epochs(self.dataset, toy_config())
        self.assertEqual(state.status, STATUS_UNSTABLE)
        self.assertEqual((state.abort['epoch'], state.abort['step']), (0, 0))
        self.assertIn("Non-finite gradient (parameter 'enc1.kernel')", state.abort['reason'])
        self.assertEqual(state.history, [])
        mock_logger.error.assert_called_once()

    def test_empty_training_split(self):
        dataset = Dataset({'train': [], 'heldout': [], 'test': []}, 32)
        with self.assertRaises(ManifestError):
            train_epochs(dataset, toy_config())
