""" This module provide constants related to directories used in the wge package.
"""

from os import path


ROOT_PATH: str = path.join(path.abspath(path.dirname(__file__)), '..')
DATA_PATH: str = path.join(ROOT_PATH, 'resources')
SCHEMAS_PATH: str = path.join(DATA_PATH, 'schemas')
CONFIG_SCHEMA_PATH: str = path.join(SCHEMAS_PATH, 'train_config_schema.json')
