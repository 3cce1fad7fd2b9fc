""" Generator and discriminator construction, forward evaluation and backpropagation.
"""
from .config import VariantFlags, GeneratorConfig, LatentSpec
from .params import ParameterSet, GeneratorParams, DiscriminatorParams, truncated_normal
from .generator import (
    build_generator, generator_forward, generator_backward, run_generator, GeneratorTrace, decoder_channels
)
from .discriminator import (
    build_discriminator, discriminator_forward, discriminator_backward, run_discriminator, DiscriminatorTrace
)
from .latent import sample_latent
