""" Minimal dense-tensor numerics: explicit forward/backward pairs for every layer of the enhancer, the Adam
optimizer and the finite difference gradient checks.
"""
from .core import Tensor, Parameter, as_array, as_tensor, require_shape, STORAGE_DTYPE
from .conv import (
    conv1d, conv1d_backward, conv1d_input_grad, conv1d_transpose, conv1d_transpose_backward, conv_geometry
)
from .activations import prelu, prelu_backward, leaky_relu, leaky_relu_backward
from .normalization import instance_norm, instance_norm_backward
from .dense import dense, dense_backward, concat_channels, split_channels
from .losses import l1_loss, l1_loss_backward, mse, mse_backward
from .optim import AdamState, adam_step
from .gradcheck import finite_diff_grad, relative_error, run_gradient_suite, GradCheckReport
