""" Implementations of the command-line commands.
"""
from .train import train, experiment
from .enhance import enhance, list_wavs
from .evaluate import evaluate
from .tools import synth_data, design_gt, gradcheck
