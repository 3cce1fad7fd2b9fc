""" Architecture configuration of the enhancer: the variant flags, the generator/discriminator layer plan and the
latent vector specification.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from wge.const import PRESETS, DEFAULT_PRESET
from wge.exceptions import ConfigError


@dataclass(frozen=True)
class VariantFlags:
    """ The stabilisation variants. Every combination can be built; not every combination trains stably. """
    use_instance_norm: bool = True
    use_label_smoothing: bool = False
    use_gt_layer: bool = False
    use_preemph_layer: bool = False
    use_latent: bool = True

    @property
    def label(self) -> str:
        """ Row label in the variant table, e.g. 'IN + LabSmth + GT + PreEm (no z)'. """
        names: list[str] = [name for name, enabled in (
            ('IN', self.use_instance_norm),
            ('LabSmth', self.use_label_smoothing),
            ('GT', self.use_gt_layer),
            ('PreEm', self.use_preemph_layer)
        ) if enabled]
        text: str = ' + '.join(names) if names else 'baseline'
        return text if self.use_latent else f"{text} (no z)"


@dataclass(frozen=True)
class GeneratorConfig:
    """ Layer plan shared by the generator and the discriminator.

    :param n_layers: number of strided convolutions in the encoder (and of transposed ones in the decoder)
    :param filter_width: width of every strided convolution
    :param stride: the down/up-sampling factor of every layer
    :param feature_maps: output channels of each encoder layer
    :param input_length: number of samples per frame
    :param flags: the variant flags
    :param seed: the root seed; initialisations use the init-G and init-D sub-seeds
    :param leaky_slope: negative slope of the discriminator LeakyReLUs
    :param freeze_gt: exclude Gammatone-initialised first layers from optimizer updates
    :param preemph_alpha: coefficient of the fixed emphasis applied outside the network
    """
    n_layers: int = 4
    filter_width: int = 31
    stride: int = 2
    feature_maps: tuple[int, ...] = (16, 32, 64, 128)
    input_length: int = 1024
    flags: VariantFlags = field(default_factory=VariantFlags)
    seed: int = 1234
    leaky_slope: float = 0.3
    freeze_gt: bool = False
    preemph_alpha: float = 0.95

    def __post_init__(self) -> None:
        """ Normalise feature maps to a tuple and validate the layer plan. """
        object.__setattr__(self, 'feature_maps', tuple(int(maps) for maps in self.feature_maps))
        self.validate()

    def validate(self) -> None:
        """ Reject inconsistent layer plans.

        :raises ConfigError: if the plan cannot be built
        """
        if self.n_layers < 1:
            raise ConfigError(f"n_layers must be at least 1, got {self.n_layers}")
        if len(self.feature_maps) != self.n_layers:
            raise ConfigError(f"feature_maps has {len(self.feature_maps)} entries, n_layers is {self.n_layers}")
        if any(maps < 1 for maps in self.feature_maps):
            raise ConfigError(f"feature_maps must be positive, got {list(self.feature_maps)}")
        if self.filter_width < 1 or self.stride < 1:
            raise ConfigError(f"filter_width and stride must be positive, got {self.filter_width}, {self.stride}")
        if self.input_length < 2 or self.input_length % 2:
            raise ConfigError(f"input_length must be even, got {self.input_length}")
        if self.input_length % self.stride ** self.n_layers:
            raise ConfigError(f"input_length {self.input_length} is not divisible by "
                              f"stride^n_layers = {self.stride ** self.n_layers}")
        if self.flags.use_gt_layer and self.filter_width < 2:
            raise ConfigError("The Gammatone layer needs a filter width of at least 2")

    @property
    def bottleneck_length(self) -> int:
        """ Temporal length of the encoder output, input_length / stride^n_layers. """
        return self.input_length // self.stride ** self.n_layers

    @property
    def bottleneck_channels(self) -> int:
        """ Channels of the encoder output. """
        return self.feature_maps[-1]

    def layer_lengths(self) -> list[int]:
        """ Activation length after each encoder layer. """
        return [self.input_length // self.stride ** layer for layer in range(1, self.n_layers + 1)]

    @classmethod
    def from_preset(cls, name: str = DEFAULT_PRESET, flags: VariantFlags | None = None,
                    seed: int | None = None) -> GeneratorConfig:
        """ The layer plan of a named preset ('desk' or 'full').

        :param name: the preset name
        :param flags: variant flags, defaults to VariantFlags()
        :param seed: overrides the preset seed
        :return: the configuration
        """
        if name not in PRESETS:
            raise ConfigError(f"Unknown preset '{name}', expected one of {sorted(PRESETS)}")
        preset: dict = PRESETS[name]
        return cls(
            n_layers=preset['n_layers'],
            filter_width=preset['filter_width'],
            stride=preset['stride'],
            feature_maps=tuple(preset['feature_maps']),
            input_length=preset['input_length'],
            flags=flags or VariantFlags(),
            seed=preset['seed'] if seed is None else seed,
            leaky_slope=preset['leaky_slope'],
            freeze_gt=preset['freeze_gt'],
            preemph_alpha=preset['preemph_alpha']
        )


@dataclass(frozen=True)
class LatentSpec:
    """ Shape and seed of a standard-normal latent sample.

    :param length: temporal length, the bottleneck length
    :param channels: number of channels, the bottleneck channels
    :param seed: seed of the sample
    """
    length: int
    channels: int
    seed: int = 0

    @classmethod
    def for_config(cls, config: GeneratorConfig, seed: int = 0) -> LatentSpec:
        """ Latent spec matching the bottleneck of a generator configuration. """
        return cls(config.bottleneck_length, config.bottleneck_channels, seed)
