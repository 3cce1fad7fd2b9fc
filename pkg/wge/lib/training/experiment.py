""" The variant experiment matrix: every stabilisation setting trained with and without the latent vector, scored on
the held-out split next to the unprocessed noisy input.
"""
from __future__ import annotations

from os import path

from pandas import DataFrame

from wge.config import TrainConfig
from wge.const import SEED_ENHANCE
from wge.exceptions import MetricError
from wge.logger import LOGGER
from wge.lib.utils import derive_seed
from wge.lib.model import VariantFlags
from wge.lib.metrics import MetricReport, evaluate_corpus
from wge.lib.corpus import Dataset, Utterance
from .core import TrainingState, train_epochs, STATUS_UNSTABLE
from .enhance import enhance_utterance

VARIANT_COLUMNS: list[str] = ['variant', 'latent', 'status', 'abort_epoch', 'abort_step', 'segsnr_db', 'cd_db', 'llr']
VARIANT_SETTINGS: list[dict[str, bool]] = [
    {'use_instance_norm': True},
    {'use_instance_norm': True, 'use_label_smoothing': True},
    {'use_instance_norm': True, 'use_gt_layer': True},
    {'use_instance_norm': True, 'use_preemph_layer': True},
    {'use_instance_norm': True, 'use_label_smoothing': True, 'use_gt_layer': True, 'use_preemph_layer': True}
]


def variant_flags() -> list[VariantFlags]:
    """ The trained variants, each with then without the latent vector. """
    return [
        VariantFlags(**{'use_instance_norm': False, 'use_label_smoothing': False, 'use_gt_layer': False,
                        'use_preemph_layer': False, **setting, 'use_latent': latent})
        for setting in VARIANT_SETTINGS for latent in (True, False)
    ]


def _scores(pairs: list[tuple[str, object, object]]) -> dict[str, float]:
    """ Corpus means, NaN when nothing could be evaluated. """
    try:
        report: MetricReport = evaluate_corpus(pairs)
    except MetricError as error:
        LOGGER.warning('Held-out evaluation failed: %s', error)
        return {'segsnr_db': float('nan'), 'cd_db': float('nan'), 'llr': float('nan')}
    return report.means()


def run_variant_matrix(dataset: Dataset, config: TrainConfig, out_dir: str | None = None) -> DataFrame:
    """ Train every variant from the same seed and data and score it on the held-out split.

    :param dataset: the framed corpus
    :param config: the base configuration; its variant flags are replaced per row
    :param out_dir: when given, each variant trains into a sub-directory of it
    :return: one row per variant plus the 'Unprocessed' row, in VARIANT_COLUMNS
    """
    heldout: list[Utterance] = dataset.split('heldout')
    rows: list[dict] = [{
        'variant': 'Unprocessed', 'latent': None, 'status': 'baseline', 'abort_epoch': None, 'abort_step': None,
        **_scores([(item.utterance_id, item.clean, item.noisy) for item in heldout])
    }]
    enhance_seed: int = derive_seed(config.seed, SEED_ENHANCE)
    for flags in variant_flags():
        variant: TrainConfig = config.with_flags(**vars(flags))
        name: str = flags.label.replace(' + ', '+').replace(' (no z)', '-noz').replace(' ', '')
        LOGGER.info('Training variant %s', flags.label)
        state: TrainingState = train_epochs(dataset, variant, None if out_dir is None else path.join(out_dir, name))
        row: dict = {
            'variant': flags.label.replace(' (no z)', ''), 'latent': flags.use_latent, 'status': state.status,
            'abort_epoch': None, 'abort_step': None
        }
        if state.status == STATUS_UNSTABLE and state.abort is not None:
            row.update({'abort_epoch': state.abort['epoch'], 'abort_step': state.abort['step'],
                        'segsnr_db': float('nan'), 'cd_db': float('nan'), 'llr': float('nan')})
        else:
            row.update(_scores([(item.utterance_id, item.clean, enhance_utterance(state.gen, item.noisy, enhance_seed))
                                for item in heldout]))
        rows.append(row)
    return DataFrame(rows, columns=VARIANT_COLUMNS)
