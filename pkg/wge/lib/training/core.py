""" Adversarial training: the per-step discriminator and generator updates, the epoch loop with held-out
evaluation and checkpoints, and the training state that checkpoints capture.
"""
from __future__ import annotations

from dataclasses import dataclass
from os import makedirs, path
from typing import Any

import numpy as np
from numpy.typing import NDArray
from pandas import DataFrame
from yaml import safe_dump

from wge.config import TrainConfig
from wge.const import HISTORY_COLUMNS, SEED_LATENT, SEED_SHUFFLE, SEED_ENHANCE
from wge.exceptions import NumericalInstabilityError, OptimizerError, CheckpointError, ManifestError
from wge.logger import LOGGER
from wge.lib.utils import derive_seed, derive_rng
from wge.lib.tensor import Tensor, AdamState, adam_step
from wge.lib.model import (
    GeneratorParams, DiscriminatorParams, LatentSpec, GeneratorTrace, DiscriminatorTrace, build_generator,
    build_discriminator, run_generator, generator_backward, run_discriminator,
    discriminator_backward, sample_latent
)
from wge.lib.corpus import Dataset, FramePairs
from wge.lib.checkpoint import Checkpoint, save_checkpoint
from .losses import d_loss_terms, d_loss_grads, g_loss, g_loss_grads
from .enhance import evaluate_heldout

STATUS_RUNNING: str = 'running'
STATUS_COMPLETED: str = 'completed'
STATUS_UNSTABLE: str = 'unstable'


@dataclass
class StepReport:
    """ Loss components of one training step. """
    step: int
    d_loss_real: float
    d_loss_fake: float
    g_adv: float
    g_l1: float
    max_score: float


class TrainingState:
    """ Everything needed to continue training bit-exactly: parameters, optimizer moments, counters and history.

    :param config: the training configuration
    :param gen: the generator parameters
    :param disc: the discriminator parameters
    :param adam_g: the generator optimizer
    :param adam_d: the discriminator optimizer
    """

    def __init__(self, config: TrainConfig, gen: GeneratorParams, disc: DiscriminatorParams, adam_g: AdamState,
                 adam_d: AdamState) -> None:
        """ Constructor of the class. """
        self.config: TrainConfig = config
        self.gen: GeneratorParams = gen
        self.disc: DiscriminatorParams = disc
        self.adam_g: AdamState = adam_g
        self.adam_d: AdamState = adam_d
        self.epoch: int = 0
        self.global_step: int = 0
        self.score_streak: int = 0
        self.history: list[dict] = []
        self.status: str = STATUS_RUNNING
        self.abort: dict | None = None

    @classmethod
    def initial(cls, config: TrainConfig) -> TrainingState:
        """ Freshly initialised networks and zero optimizer moments. """
        gen_config = config.generator_config()
        gen: GeneratorParams = build_generator(gen_config)
        disc: DiscriminatorParams = build_discriminator(gen_config)
        adam: dict = {'lr': config.lr, 'beta1': config.beta1, 'beta2': config.beta2, 'eps': config.adam_eps}
        return cls(config, gen, disc, AdamState(gen, **adam), AdamState(disc, **adam))

    def history_frame(self) -> DataFrame:
        """ The per-epoch history as a table. """
        return DataFrame(self.history, columns=HISTORY_COLUMNS)

    def to_checkpoint(self) -> Checkpoint:
        """ Snapshot of the state. """
        arrays: dict[str, NDArray] = {}
        for prefix, params in (('gen', self.gen), ('disc', self.disc)):
            arrays.update({f'{prefix}/{name}': value for name, value in params.arrays().items()})
        for prefix, adam in (('adam_g', self.adam_g), ('adam_d', self.adam_d)):
            arrays.update({f'{prefix}/m/{name}': moment for name, moment in adam.m.items()})
            arrays.update({f'{prefix}/v/{name}': moment for name, moment in adam.v.items()})
        metadata: dict = {
            'config': self.config.to_mapping(),
            'epoch': self.epoch,
            'global_step': self.global_step,
            'score_streak': self.score_streak,
            'adam_g': self.adam_g.scalars(),
            'adam_d': self.adam_d.scalars(),
            'history': self.history,
            'status': self.status,
            'abort': self.abort,
            'seeds': {SEED_LATENT: self.global_step, SEED_SHUFFLE: self.epoch}
        }
        return Checkpoint(metadata, arrays)

    @classmethod
    def from_checkpoint(cls, checkpoint: Checkpoint, config: TrainConfig | None = None) -> TrainingState:
        """ Rebuild a state from a checkpoint.

        :param checkpoint: the decoded checkpoint
        :param config: overrides the stored configuration (e.g. to train for more epochs); the layer plan must match
        :return: the state
        :raises CheckpointError: when the metadata or arrays do not match the configuration
        """
        metadata: dict = checkpoint.metadata
        try:
            stored: TrainConfig = TrainConfig.from_mapping(metadata['config'])
            state: TrainingState = cls.initial(config or stored)
            arrays: dict[str, NDArray] = checkpoint.arrays
            state.gen.load_arrays(_section(arrays, 'gen/'))
            state.disc.load_arrays(_section(arrays, 'disc/'))
            for prefix, adam in (('adam_g', state.adam_g), ('adam_d', state.adam_d)):
                _load_moments(adam, _section(arrays, f'{prefix}/m/'), _section(arrays, f'{prefix}/v/'))
                adam.t = int(metadata[prefix]['t'])
            state.epoch = int(metadata['epoch'])
            state.global_step = int(metadata['global_step'])
            state.score_streak = int(metadata['score_streak'])
            state.history = list(metadata['history'])
            state.status = str(metadata['status'])
            state.abort = metadata['abort']
        except (KeyError, TypeError, ValueError) as error:
            raise CheckpointError(f"Checkpoint metadata is incomplete or inconsistent ({error})")
        unknown: list[str] = [name for name in checkpoint.arrays
                              if not name.startswith(('gen/', 'disc/', 'adam_g/m/', 'adam_g/v/', 'adam_d/m/',
                                                      'adam_d/v/'))]
        if unknown:
            raise CheckpointError(f"Unexpected arrays in checkpoint: {unknown}")
        return state


def _section(arrays: dict[str, NDArray], prefix: str) -> dict[str, NDArray]:
    """ Arrays under a name prefix, with the prefix removed. """
    return {name[len(prefix):]: value for name, value in arrays.items() if name.startswith(prefix)}


def _load_moments(adam: AdamState, first: dict[str, NDArray], second: dict[str, NDArray]) -> None:
    """ Overwrite optimizer moments, checking names and shapes. """
    if set(first) != set(adam.m) or set(second) != set(adam.v):
        raise CheckpointError("Optimizer moment names do not match the parameters")
    for name in adam.m:
        if first[name].shape != adam.m[name].shape or second[name].shape != adam.v[name].shape:
            raise CheckpointError(f"Optimizer moments of '{name}' have the wrong shape")
        adam.m[name] = first[name].astype(np.float32)
        adam.v[name] = second[name].astype(np.float32)


def _require_finite(state: TrainingState, **losses: float) -> None:
    """ Abort on a non-finite loss. """
    for name, value in losses.items():
        if not np.isfinite(value):
            raise NumericalInstabilityError(f"non-finite {name} ({value})", state.epoch, state.global_step)


def step_latent(state: TrainingState, batch: int) -> Tensor | None:
    """ Fresh latent of the current global step, None without latent. """
    gen_config = state.gen.config
    if not gen_config.flags.use_latent:
        return None
    seed: int = derive_seed(state.config.seed, SEED_LATENT, state.global_step)
    return sample_latent(LatentSpec.for_config(gen_config, seed), batch)


def _optimizer_step(state: TrainingState, params: Any, adam: AdamState) -> None:
    """ Adam update; an update the optimizer refuses (e.g. a non-finite gradient) ends the run as unstable. """
    try:
        adam_step(params, adam)
    except OptimizerError as error:
        raise NumericalInstabilityError(error.message, state.epoch, state.global_step) from error


def _discriminator_update(state: TrainingState, clean: Tensor, noisy: Tensor,
                          estimate: Tensor) -> tuple[float, float, float]:
    """ The discriminator update of a step. The real and fake pairs go through D as one stacked batch; the update is
    one combined step, or a real step followed by a fake step re-scored by the updated D. """
    config: TrainConfig = state.config
    target: float = config.smoothing_target
    count: int = clean.shape[0]
    state.disc.zero_grad()
    trace: DiscriminatorTrace = run_discriminator(state.disc, np.concatenate([clean, estimate]),
                                                  np.concatenate([noisy, noisy]))
    real_scores, fake_scores = trace.scores[:count], trace.scores[count:]
    real_term, fake_term = d_loss_terms(real_scores, fake_scores, target)
    _require_finite(state, d_loss_real=real_term, d_loss_fake=fake_term)
    grad_real, grad_fake = d_loss_grads(real_scores, fake_scores, target)
    peak: float = float(np.max(np.abs(trace.scores)))

    if not config.d_two_steps:
        discriminator_backward(state.disc, trace, np.concatenate([grad_real, grad_fake]))
        _optimizer_step(state, state.disc, state.adam_d)
        return real_term, fake_term, peak
    discriminator_backward(state.disc, trace, np.concatenate([grad_real, np.zeros_like(grad_fake)]))
    _optimizer_step(state, state.disc, state.adam_d)
    state.disc.zero_grad()
    fake_trace: DiscriminatorTrace = run_discriminator(state.disc, estimate, noisy)
    _, grad_fake = d_loss_grads(real_scores, fake_trace.scores, target)
    discriminator_backward(state.disc, fake_trace, grad_fake)
    _optimizer_step(state, state.disc, state.adam_d)
    return real_term, fake_term, peak


def train_step(state: TrainingState, batch: FramePairs) -> StepReport:
    """ One adversarial step: update D on (clean, noisy) against (G(noisy), noisy), then update G through the updated
    and frozen D. The generator runs once per step and D's parameter gradients are not computed during the generator
    update.

    :param state: the training state, updated in place
    :param batch: pre-emphasised frame pairs
    :return: the loss components
    :raises NumericalInstabilityError: on a non-finite loss or gradient, or persistently exploding scores
    """
    config: TrainConfig = state.config
    own_preemphasis: bool = state.gen.config.flags.use_preemph_layer
    clean, noisy = batch.clean, batch.noisy
    generator_input: Tensor = batch.generator_input(own_preemphasis)
    latent: Tensor | None = step_latent(state, len(batch))

    trace: GeneratorTrace = run_generator(state.gen, generator_input, latent)
    estimate: Tensor | None = trace.output
    assert estimate is not None
    real_term, fake_term, peak = _discriminator_update(state, clean, noisy, estimate)

    state.gen.zero_grad()
    fake_trace: DiscriminatorTrace = run_discriminator(state.disc, estimate, noisy)
    _, adversarial, l1 = g_loss(fake_trace.scores, estimate, clean, config.lambda_l1)
    _require_finite(state, g_adv=adversarial, g_l1=l1)
    grad_scores, grad_estimate = g_loss_grads(fake_trace.scores, estimate, clean, config.lambda_l1)
    grad_from_disc: Tensor = discriminator_backward(state.disc, fake_trace, grad_scores, accumulate=False)
    generator_backward(state.gen, trace, grad_from_disc + grad_estimate)
    _optimizer_step(state, state.gen, state.adam_g)

    peak = max(peak, float(np.max(np.abs(fake_trace.scores))))
    state.score_streak = state.score_streak + 1 if peak > config.score_limit else 0
    report: StepReport = StepReport(state.global_step, real_term, fake_term, adversarial, l1, peak)
    state.global_step += 1
    if state.score_streak >= config.instability_window:
        raise NumericalInstabilityError(f"|score| above {config.score_limit:g} for {state.score_streak} steps",
                                        state.epoch, state.global_step - 1)
    return report


def epoch_batches(state: TrainingState, n_frames: int) -> list[NDArray[np.int64]]:
    """ Shuffled batch indices of the current epoch, from the shuffle sub-seed of that epoch. """
    order: NDArray[np.int64] = derive_rng(state.config.seed, SEED_SHUFFLE, state.epoch).permutation(n_frames)
    size: int = state.config.batch_size
    return [order[start:start + size] for start in range(0, n_frames, size)]


def write_outputs(state: TrainingState, out_dir: str, checkpoint_name: str | None = None) -> None:
    """ Write the latest checkpoint, an optional per-epoch checkpoint and the history table. """
    checkpoint: Checkpoint = state.to_checkpoint()
    if checkpoint_name is not None:
        save_checkpoint(path.join(out_dir, 'ckpt', checkpoint_name), checkpoint)
    save_checkpoint(path.join(out_dir, 'latest.wge'), checkpoint)
    state.history_frame().to_csv(path.join(out_dir, 'history.csv'), index=False, float_format='%.6f')


def write_summary(state: TrainingState, dataset: Dataset, out_dir: str) -> dict:
    """ Write summary.yml: resolved configuration, noisy-input baseline, final held-out values and status. """
    baseline_l1, baseline_snr = evaluate_heldout(None, dataset.split('heldout'))
    final: dict = state.history[-1] if state.history else {}
    summary: dict = {
        'status': state.status,
        'epochs_completed': state.epoch,
        'global_step': state.global_step,
        'variant': state.config.flags.label,
        'baseline': {'heldout_l1': baseline_l1, 'heldout_segsnr': baseline_snr},
        'final': {'heldout_l1': final.get('heldout_l1'), 'heldout_segsnr': final.get('heldout_segsnr')},
        'abort': state.abort,
        'config': state.config.to_mapping()
    }
    with open(path.join(out_dir, 'summary.yml'), 'w') as handle:
        safe_dump(summary, handle, default_flow_style=False, sort_keys=False)
    return summary


def train_epochs(dataset: Dataset, config: TrainConfig, out_dir: str | None = None,
                 state: TrainingState | None = None) -> TrainingState:
    """ Train until config.epochs epochs are completed, evaluating on the held-out split after every epoch.
    An instability abort is recorded in the state (status 'unstable' with epoch and step) instead of raised.

    :param dataset: the framed corpus
    :param config: the training configuration
    :param out_dir: when given, receives ckpt/epoch_XXXX.wge and latest.wge after every epoch and history.csv
    :param state: a state to resume from, typically loaded from a checkpoint
    :return: the final state
    """
    state = state or TrainingState.initial(config)
    frames: FramePairs = dataset.frames('train')
    if len(frames) == 0:
        raise ManifestError("The dataset has no training frames")
    if out_dir is not None:
        makedirs(path.join(out_dir, 'ckpt'), exist_ok=True)
    enhance_seed: int = derive_seed(config.seed, SEED_ENHANCE)
    state.status, state.abort = STATUS_RUNNING, None

    while state.epoch < config.epochs:
        reports: list[StepReport] = []
        try:
            for indices in epoch_batches(state, len(frames)):
                reports.append(train_step(state, frames.take(indices)))
        except NumericalInstabilityError as error:
            state.status = STATUS_UNSTABLE
            state.abort = {'epoch': error.epoch, 'step': error.step, 'reason': error.reason}
            LOGGER.error('%s', error)
            break
        heldout_l1, heldout_snr = evaluate_heldout(state.gen, dataset.split('heldout'), enhance_seed)
        state.epoch += 1
        row: dict[str, Any] = {
            'epoch': state.epoch,
            'd_loss_real': float(np.mean([report.d_loss_real for report in reports])),
            'd_loss_fake': float(np.mean([report.d_loss_fake for report in reports])),
            'g_adv': float(np.mean([report.g_adv for report in reports])),
            'g_l1': float(np.mean([report.g_l1 for report in reports])),
            'heldout_l1': heldout_l1,
            'heldout_segsnr': heldout_snr
        }
        state.history.append(row)
        LOGGER.info('Epoch %d/%d: D real %.4f fake %.4f, G adv %.4f L1 %.5f, held-out L1 %.5f segSNR %.2f dB',
                    state.epoch, config.epochs, row['d_loss_real'], row['d_loss_fake'], row['g_adv'], row['g_l1'],
                    heldout_l1, heldout_snr)
        if out_dir is not None:
            write_outputs(state, out_dir, f'epoch_{state.epoch:04d}.wge')

    if state.status != STATUS_UNSTABLE:
        state.status = STATUS_COMPLETED
    if out_dir is not None:
        write_outputs(state, out_dir)
    return state
