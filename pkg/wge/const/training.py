""" This module provide the architecture and optimisation presets. 'full' is the 11-layer model on 16384-sample
frames, 'desk' a scaled setup that keeps every structural property and trains on a laptop CPU.
"""

FULL_FEATURE_MAPS: list[int] = [16, 32, 32, 64, 64, 128, 128, 256, 256, 512, 1024]
DESK_FEATURE_MAPS: list[int] = [16, 32, 64, 128]

COMMON_DEFAULTS: dict = {
    'seed': 1234,
    'lr': 0.0002,
    'beta1': 0.5,
    'beta2': 0.999,
    'adam_eps': 1e-8,
    'lambda_l1': 100.0,
    'filter_width': 31,
    'stride': 2,
    'in': True,
    'labsmth': False,
    'gt': False,
    'preem': False,
    'latent': True,
    'd_two_steps': False,
    'freeze_gt': False,
    'preemph_alpha': 0.95,
    'leaky_slope': 0.3,
    'instability_window': 10,
    'score_limit': 1e6,
}
PRESETS: dict[str, dict] = {
    'full': {
        **COMMON_DEFAULTS,
        'epochs': 80,
        'batch_size': 100,
        'input_length': 16384,
        'n_layers': 11,
        'feature_maps': FULL_FEATURE_MAPS,
    },
    'desk': {
        **COMMON_DEFAULTS,
        'epochs': 200,
        'batch_size': 8,
        'input_length': 1024,
        'n_layers': 4,
        'feature_maps': DESK_FEATURE_MAPS,
    },
}
DEFAULT_PRESET: str = 'desk'

INIT_STDDEV: float = 0.02
INSTANCE_NORM_EPS: float = 1e-5
LABEL_SMOOTHING_TARGET: float = 0.9
HISTORY_COLUMNS: list[str] = [
    'epoch', 'd_loss_real', 'd_loss_fake', 'g_adv', 'g_l1', 'heldout_l1', 'heldout_segsnr'
]

# Named sub-seeds: every random stream in the pipeline derives from the config seed and one of these names
SEED_CORPUS: str = 'corpus'
SEED_INIT_G: str = 'init-G'
SEED_INIT_D: str = 'init-D'
SEED_LATENT: str = 'latent'
SEED_SHUFFLE: str = 'shuffle'
SEED_ENHANCE: str = 'enhance'
