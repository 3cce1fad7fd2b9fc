""" Adversarial training, inference and the variant experiments.
"""
from .losses import d_loss, d_loss_terms, d_loss_grads, g_loss, g_loss_grads
from .enhance import enhance_utterance, evaluate_heldout
from .core import (
    StepReport, TrainingState, train_step, train_epochs, epoch_batches, step_latent, write_outputs, write_summary,
    STATUS_RUNNING, STATUS_COMPLETED, STATUS_UNSTABLE
)
from .experiment import run_variant_matrix, variant_flags, VARIANT_COLUMNS
