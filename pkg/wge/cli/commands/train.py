""" The `train` and `experiment` commands.
"""
from __future__ import annotations

from os import makedirs, path

from wge.config import TrainConfig, load_config
from wge.exceptions import NumericalInstabilityError
from wge.logger import LOGGER
from wge.lib.checkpoint import Checkpoint, load_checkpoint
from wge.lib.corpus import Dataset, load_dataset
from wge.lib.training import TrainingState, train_epochs, write_summary, run_variant_matrix, STATUS_UNSTABLE


def train(config_path: str | None, data_path: str, out_dir: str, resume: str | None = None) -> int:
    """ Train the enhancer and write checkpoints, history.csv and summary.yml under out_dir.

    :param config_path: the key-value configuration file, optional
    :param data_path: the dataset manifest
    :param out_dir: the output directory
    :param resume: a checkpoint to continue from; its configuration is used unless a file is given
    :return: the exit code
    """
    checkpoint: Checkpoint | None = load_checkpoint(resume) if resume else None
    if config_path is None and checkpoint is not None:
        config: TrainConfig = TrainConfig.from_mapping(checkpoint.metadata.get('config', {}))
    else:
        config = load_config(config_path)
    dataset: Dataset = load_dataset(data_path, config.input_length, config.preemph_alpha)
    state: TrainingState | None = None
    if checkpoint is not None:
        state = TrainingState.from_checkpoint(checkpoint, config)
        LOGGER.info('Resuming from %s at epoch %d, step %d', resume, state.epoch, state.global_step)

    makedirs(out_dir, exist_ok=True)
    state = train_epochs(dataset, config, out_dir, state)
    summary: dict = write_summary(state, dataset, out_dir)
    LOGGER.info('Training %s: held-out L1 %s (noisy %s), segSNR %s dB (noisy %s dB)', state.status,
                summary['final']['heldout_l1'], summary['baseline']['heldout_l1'],
                summary['final']['heldout_segsnr'], summary['baseline']['heldout_segsnr'])
    if state.status == STATUS_UNSTABLE and state.abort is not None:
        raise NumericalInstabilityError(state.abort['reason'], state.abort['epoch'], state.abort['step'])
    return 0


def experiment(config_path: str | None, data_path: str, out_dir: str) -> int:
    """ Train every variant and write variants.csv under out_dir.

    :param config_path: the base configuration file, optional
    :param data_path: the dataset manifest
    :param out_dir: the output directory
    :return: the exit code
    """
    config: TrainConfig = load_config(config_path)
    dataset: Dataset = load_dataset(data_path, config.input_length, config.preemph_alpha)
    makedirs(out_dir, exist_ok=True)
    table = run_variant_matrix(dataset, config, out_dir)
    table.to_csv(path.join(out_dir, 'variants.csv'), index=False, float_format='%.4f')
    LOGGER.info('Variant table written to %s', path.join(out_dir, 'variants.csv'))
    return 0
