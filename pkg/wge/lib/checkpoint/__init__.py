""" Binary checkpoint persistence.
"""
from .core import Checkpoint, encode_checkpoint, decode_checkpoint, save_checkpoint, load_checkpoint
