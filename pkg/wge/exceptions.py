""" Custom exceptions for the wge package. Every concrete error carries the exit code the command line maps it to.
"""
from __future__ import annotations
from abc import ABC


class WGEError(Exception, ABC):
    """ Exception raised when the enhancer fails. This is an abstract class, do not use directly. """
    exit_code: int = 2

    def __init__(self) -> None:
        """ Constructor, do not use """
        self.message: str | None = None
        raise SyntaxError("Cannot instantiate abstract class WGEError")

    def __str__(self) -> str:
        """ String representation of the exception """
        return self.message or ""


class ShapeError(WGEError):
    """ Exception raised when an operation receives arrays with incompatible shapes

    :param operation: name of the operation that rejected its inputs
    :param expected: the shape (or description) the operation expected
    :param received: the shape it received
    """

    def __init__(self, operation: str, expected: object, received: object) -> None:
        """ Constructor """
        self.operation: str = operation
        self.message: str = f"{operation}: expected shape {expected}, received {received}"


class OptimizerError(WGEError):
    """ Exception raised when an optimizer update cannot be applied """
    exit_code: int = 3

    def __init__(self, message: str, parameter: str | None = None) -> None:
        """ Constructor """
        self.parameter: str | None = parameter
        self.message: str = f"{message} (parameter '{parameter}')" if parameter else message


class SignalError(WGEError):
    """ Exception raised when a signal processing routine receives an invalid signal or argument """

    def __init__(self, message: str) -> None:
        """ Constructor """
        self.message: str = message


class ConfigError(WGEError):
    """ Exception raised when a configuration file contains unknown keys or invalid values """
    exit_code: int = 1

    def __init__(self, message: str) -> None:
        """ Constructor """
        self.message: str = message


class WavFormatError(WGEError):
    """ Exception raised when a WAV file is not RIFF PCM16 mono at the expected sample rate """

    def __init__(self, path: str, reason: str) -> None:
        """ Constructor """
        self.path: str = path
        self.message: str = f"{path}: {reason}"


class ManifestError(WGEError):
    """ Exception raised when a dataset manifest is malformed or references missing files """

    def __init__(self, message: str) -> None:
        """ Constructor """
        self.message: str = message


class CheckpointError(WGEError):
    """ Exception raised when a checkpoint cannot be written, read or matched against the model """

    def __init__(self, message: str) -> None:
        """ Constructor """
        self.message: str = message


class MetricError(WGEError):
    """ Exception raised when an objective metric cannot be computed for a pair of signals """

    def __init__(self, message: str) -> None:
        """ Constructor """
        self.message: str = message


class NumericalInstabilityError(WGEError):
    """ Exception raised when adversarial training diverges

    :param reason: what was observed
    :param epoch: the epoch index at which training was aborted
    :param step: the global step index at which training was aborted
    """
    exit_code: int = 3

    def __init__(self, reason: str, epoch: int = -1, step: int = -1) -> None:
        """ Constructor """
        self.reason: str = reason
        self.epoch: int = epoch
        self.step: int = step
        self.message: str = f"Training unstable at epoch {epoch}, step {step}: {reason}"


class GradientCheckError(WGEError):
    """ Exception raised when an analytic gradient disagrees with its finite difference estimate """
    exit_code: int = 3

    def __init__(self, failures: list[str]) -> None:
        """ Constructor """
        self.failures: list[str] = failures
        self.message: str = f"{len(failures)} gradient check(s) failed: " + ", ".join(failures)
