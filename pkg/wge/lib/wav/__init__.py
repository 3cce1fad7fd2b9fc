""" PCM16 mono 16 kHz WAV reading and writing.
"""
from .core import read_wav, write_wav, read_pcm16, to_pcm16, from_pcm16, PCM_MIN, PCM_MAX
