""" This module loads data from JSONs and stores them as constants.
"""

from json import loads

from .directories import CONFIG_SCHEMA_PATH


with open(CONFIG_SCHEMA_PATH, 'r') as f:
    CONFIG_SCHEMA: dict = loads(f.read())
