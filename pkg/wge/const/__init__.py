""" This module provide constants for the wge package.
"""
from .directories import ROOT_PATH, DATA_PATH, SCHEMAS_PATH, CONFIG_SCHEMA_PATH
from .schema_loaders import CONFIG_SCHEMA
from .audio import (
    SAMPLE_RATE,
    PCM_SCALE,
    FULL_FRAME_LENGTH,
    PREEMPH_ALPHA,
    PREEMPH_ALPHA_RANGE,
    GAMMATONE_ORDER,
    GAMMATONE_BANDWIDTH_FACTOR,
    GAMMATONE_FILTERS,
    GAMMATONE_F_LOW,
    GAMMATONE_F_HIGH,
    GAMMATONE_WIDTH,
    TRAIN_SNRS,
    TEST_SNRS,
    TRAIN_NOISES,
    TEST_NOISES
)
from .metrics import (
    SEGSNR_FRAME,
    SEGSNR_HOP,
    SEGSNR_CLAMP,
    LPC_ORDER,
    N_CEPSTRA,
    LPC_FRAME,
    LPC_HOP,
    CD_CLAMP,
    ENERGY_FLOOR
)
from .training import (
    FULL_FEATURE_MAPS,
    DESK_FEATURE_MAPS,
    PRESETS,
    DEFAULT_PRESET,
    INIT_STDDEV,
    INSTANCE_NORM_EPS,
    LABEL_SMOOTHING_TARGET,
    HISTORY_COLUMNS,
    SEED_CORPUS,
    SEED_INIT_G,
    SEED_INIT_D,
    SEED_LATENT,
    SEED_SHUFFLE,
    SEED_ENHANCE
)

CHECKPOINT_MAGIC: bytes = b'WGECKPT\x00'
CHECKPOINT_VERSION: int = 1
