""" This module provide constants related to the audio signals: sampling, framing, emphasis and corpus SNR grids.
"""

SAMPLE_RATE: int = 16000
PCM_SCALE: float = 32768.0
FULL_FRAME_LENGTH: int = 16384
PREEMPH_ALPHA: float = 0.95
PREEMPH_ALPHA_RANGE: tuple[float, float] = (0.9, 1.0)

# Gammatone filterbank
GAMMATONE_ORDER: int = 4
GAMMATONE_BANDWIDTH_FACTOR: float = 1.019
GAMMATONE_FILTERS: int = 16
GAMMATONE_F_LOW: float = 50.0
GAMMATONE_F_HIGH: float = 7600.0
GAMMATONE_WIDTH: int = 31

# Corpus SNR grids (dB)
TRAIN_SNRS: tuple[float, ...] = (0.0, 5.0, 10.0, 15.0)
TEST_SNRS: tuple[float, ...] = (2.5, 7.5, 12.5, 17.5)
TRAIN_NOISES: tuple[str, ...] = ('white', 'pink', 'babble')
TEST_NOISES: tuple[str, ...] = ('brown', 'machine')
