""" Training configuration: the typed TrainConfig and its loading from a plain `key = value` text file.

The file is parsed with python-dotenv, every value is coerced to the type the configuration schema declares, and the
result is validated against that schema. The schema forbids additional properties, so a misspelled key is an error.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace, fields
from os import path
from typing import Any

from dotenv import dotenv_values
from jsonschema import Draft7Validator as Validator

from wge.const import CONFIG_SCHEMA, PRESETS, DEFAULT_PRESET, LABEL_SMOOTHING_TARGET
from wge.exceptions import ConfigError
from wge.lib.model import VariantFlags, GeneratorConfig

FLAG_KEYS: dict[str, str] = {
    'in': 'use_instance_norm',
    'labsmth': 'use_label_smoothing',
    'gt': 'use_gt_layer',
    'preem': 'use_preemph_layer',
    'latent': 'use_latent'
}
TRUE_VALUES: tuple[str, ...] = ('true', 'yes', 'on', '1')
FALSE_VALUES: tuple[str, ...] = ('false', 'no', 'off', '0')


@dataclass(frozen=True)
class TrainConfig:
    """ Every hyperparameter of a training run. Use `TrainConfig.from_mapping` or `load_config` to build one from
    preset defaults plus overrides.
    """
    preset: str = DEFAULT_PRESET
    seed: int = 1234
    epochs: int = 200
    batch_size: int = 8
    lr: float = 0.0002
    beta1: float = 0.5
    beta2: float = 0.999
    adam_eps: float = 1e-8
    lambda_l1: float = 100.0
    input_length: int = 1024
    n_layers: int = 4
    filter_width: int = 31
    stride: int = 2
    feature_maps: tuple[int, ...] = (16, 32, 64, 128)
    flags: VariantFlags = field(default_factory=VariantFlags)
    d_two_steps: bool = False
    freeze_gt: bool = False
    preemph_alpha: float = 0.95
    leaky_slope: float = 0.3
    instability_window: int = 10
    score_limit: float = 1e6

    @property
    def smoothing_target(self) -> float:
        """ Discriminator target for real pairs: 0.9 with label smoothing, 1 otherwise. """
        return LABEL_SMOOTHING_TARGET if self.flags.use_label_smoothing else 1.0

    def generator_config(self) -> GeneratorConfig:
        """ The layer plan described by this configuration. """
        return GeneratorConfig(
            n_layers=self.n_layers,
            filter_width=self.filter_width,
            stride=self.stride,
            feature_maps=tuple(self.feature_maps),
            input_length=self.input_length,
            flags=self.flags,
            seed=self.seed,
            leaky_slope=self.leaky_slope,
            freeze_gt=self.freeze_gt,
            preemph_alpha=self.preemph_alpha
        )

    def with_flags(self, **flags: bool) -> TrainConfig:
        """ Copy with some variant flags changed, e.g. `config.with_flags(use_latent=False)`. """
        return replace(self, flags=replace(self.flags, **flags))

    def to_mapping(self) -> dict:
        """ The configuration as schema keys and plain JSON/YAML values, flags flattened. """
        mapping: dict = {}
        for item in fields(self):
            if item.name == 'flags':
                for key, attribute in FLAG_KEYS.items():
                    mapping[key] = getattr(self.flags, attribute)
            elif item.name == 'feature_maps':
                mapping[item.name] = [int(maps) for maps in self.feature_maps]
            else:
                mapping[item.name] = getattr(self, item.name)
        return mapping

    @classmethod
    def from_mapping(cls, values: dict) -> TrainConfig:
        """ Build a configuration from preset defaults overridden by typed values.

        :param values: schema keys mapped to typed values; 'preset' selects the defaults
        :return: the validated configuration
        :raises ConfigError: on unknown keys, schema violations or an inconsistent layer plan
        """
        validate_mapping(values)
        preset: str = values.get('preset', DEFAULT_PRESET)
        merged: dict = {**PRESETS[preset], **values, 'preset': preset}
        flags: VariantFlags = VariantFlags(**{attribute: bool(merged.pop(key)) for key, attribute in FLAG_KEYS.items()})
        merged['feature_maps'] = tuple(merged['feature_maps'])
        config: TrainConfig = cls(flags=flags, **merged)
        config.generator_config()
        return config


def validate_mapping(values: dict) -> None:
    """ Validate typed configuration values against the configuration schema.

    :param values: the mapping to validate
    :raises ConfigError: listing the first violation
    """
    validator: Validator = Validator(CONFIG_SCHEMA)
    for error in sorted(validator.iter_errors(values), key=lambda e: list(e.path)):
        location: str = '.'.join(str(part) for part in error.path) or 'config'
        raise ConfigError(f"{location}: {error.message}")


def coerce_value(key: str, raw: str | None) -> Any:
    """ Convert a raw text value to the type the schema declares for its key.

    :param key: the configuration key
    :param raw: the text value
    :return: the typed value
    :raises ConfigError: for unknown keys and unparsable values
    """
    properties: dict = CONFIG_SCHEMA['properties']
    if key not in properties:
        raise ConfigError(f"Unknown configuration key '{key}', expected one of {sorted(properties)}")
    if raw is None or not raw.strip():
        raise ConfigError(f"Configuration key '{key}' has no value")
    text: str = raw.strip()
    kind: str = properties[key]['type']
    try:
        if kind == 'boolean':
            if text.lower() in TRUE_VALUES:
                return True
            if text.lower() in FALSE_VALUES:
                return False
            raise ValueError(text)
        if kind == 'integer':
            return int(text)
        if kind == 'number':
            return float(text)
        if kind == 'array':
            return [int(item) for item in text.strip('[]').replace(',', ' ').split()]
    except ValueError:
        raise ConfigError(f"Invalid {kind} value '{text}' for configuration key '{key}'")
    return text


def load_config(filepath: str | None = None, overrides: dict | None = None) -> TrainConfig:
    """ Load a training configuration file.

    :param filepath: path of the `key = value` file; None uses the preset defaults only
    :param overrides: typed values applied after the file (e.g. from command line options)
    :return: the configuration
    :raises ConfigError: if the file is missing or contains invalid entries
    """
    values: dict = {}
    if filepath is not None:
        if not path.isfile(filepath):
            raise ConfigError(f"Configuration file '{filepath}' does not exist")
        for key, raw in dotenv_values(filepath).items():
            values[key.strip()] = coerce_value(key.strip(), raw)
    values.update(overrides or {})
    return TrainConfig.from_mapping(values)


def describe_defaults(preset: str = DEFAULT_PRESET) -> str:
    """ One 'key = default' line per configuration key, as rendered in `train --help`. """
    defaults: dict = TrainConfig.from_mapping({'preset': preset}).to_mapping()
    return '\n'.join(f"{key} = {value}" for key, value in defaults.items())
