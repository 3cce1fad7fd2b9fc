""" Library packages: numerics, signal processing, model, training, metrics and file formats.
"""
