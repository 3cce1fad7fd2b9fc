""" Signal-domain front-end: waveforms, the Gammatone filterbank, pre-emphasis, framing and SNR mixing.
"""
from .core import Waveform, FrameSet, samples_of, frame_count
from .gammatone import (
    GammatoneBank,
    erb_bandwidth,
    erb_rate,
    erb_space,
    design_gammatone_bank,
    gammatone_kernel,
    magnitude_response,
    peak_frequency,
    min_resolvable_frequency
)
from .emphasis import preemphasis, deemphasis
from .framing import frame_signal, overlap_add
from .mixing import mix_at_snr, noise_gain, measured_snr, signal_power
