""" The command-line surface of the enhancer.
"""
from .routes import cli, main
