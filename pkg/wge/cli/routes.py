""" This module registers the command-line commands and maps failures to exit codes.
"""
from __future__ import annotations

from typing import Sequence

import click

from wge.config import describe_defaults
from wge.const import GAMMATONE_FILTERS, GAMMATONE_F_LOW, GAMMATONE_F_HIGH, GAMMATONE_WIDTH
from wge.exceptions import WGEError
from wge.logger import LOGGER
from wge.cli.commands import (
    train as run_training, experiment as run_experiment,
    enhance as run_enhance, evaluate as run_evaluate,
    synth_data as run_synth_data, design_gt as run_design_gt, gradcheck as run_gradcheck
)

EXISTING_FILE: click.Path = click.Path(exists=True, dir_okay=False)
EXISTING_PATH: click.Path = click.Path(exists=True)


@click.group()
def cli() -> None:
    """ Speech enhancement with Gammatone-initialised adversarial networks. """


###########################################################
#                   TRAINING COMMANDS                     #
###########################################################
@cli.command(epilog="Configuration keys and their defaults:\n\n\b\n" + describe_defaults())
@click.option('--config', 'config_path', type=EXISTING_FILE, default=None, help='key = value configuration file')
@click.option('--data', 'data_path', type=EXISTING_FILE, required=True, help='dataset manifest (TSV)')
@click.option('--out', 'out_dir', type=click.Path(file_okay=False), required=True, help='output directory')
@click.option('--resume', type=EXISTING_FILE, default=None, help='checkpoint to continue from')
def train(config_path: str | None, data_path: str, out_dir: str, resume: str | None) -> int:
    """ Train the enhancer """
    return run_training(config_path, data_path, out_dir, resume)


@cli.command()
@click.option('--config', 'config_path', type=EXISTING_FILE, default=None, help='base configuration file')
@click.option('--data', 'data_path', type=EXISTING_FILE, required=True, help='dataset manifest (TSV)')
@click.option('--out', 'out_dir', type=click.Path(file_okay=False), required=True, help='output directory')
def experiment(config_path: str | None, data_path: str, out_dir: str) -> int:
    """ Train every variant and write variants.csv """
    return run_experiment(config_path, data_path, out_dir)


###########################################################
#                   INFERENCE COMMANDS                    #
###########################################################
@cli.command()
@click.option('--ckpt', 'checkpoint_path', type=EXISTING_FILE, required=True, help='trained checkpoint')
@click.option('--in', 'input_path', type=EXISTING_PATH, required=True, help='WAV file or directory')
@click.option('--out', 'out_dir', type=click.Path(file_okay=False), required=True, help='output directory')
@click.option('--seed', type=int, default=None, help='latent seed, derived from the training seed by default')
def enhance(checkpoint_path: str, input_path: str, out_dir: str, seed: int | None) -> int:
    """ Enhance a WAV file or a directory of WAV files """
    return run_enhance(checkpoint_path, input_path, out_dir, seed)


@cli.command()
@click.option('--ref', 'ref_dir', type=EXISTING_PATH, required=True, help='reference WAV file or directory')
@click.option('--est', 'est_dir', type=click.Path(exists=True, file_okay=False), required=True,
              help='directory of estimates with the reference file names')
@click.option('--out', 'out_path', type=click.Path(dir_okay=False), required=True, help='metrics CSV')
def evaluate(ref_dir: str, est_dir: str, out_path: str) -> int:
    """ Compute segSNR, cepstral distance and LLR per utterance """
    return run_evaluate(ref_dir, est_dir, out_path)


###########################################################
#                   TOOLING COMMANDS                      #
###########################################################
@cli.command('synth-data')
@click.option('--seed', type=int, default=0, show_default=True)
@click.option('--n', 'n_utts', type=click.IntRange(min=3), default=30, show_default=True, help='utterances')
@click.option('--dur', 'duration_s', type=float, default=3.0, show_default=True, help='seconds per utterance')
@click.option('--out', 'out_dir', type=click.Path(file_okay=False), required=True, help='output directory')
def synth_data(seed: int, n_utts: int, duration_s: float, out_dir: str) -> int:
    """ Generate a synthetic noisy corpus and its manifest """
    return run_synth_data(seed, n_utts, duration_s, out_dir)


@cli.command('design-gt')
@click.option('--n', 'n_filters', type=click.IntRange(min=1), default=GAMMATONE_FILTERS, show_default=True)
@click.option('--flow', 'f_low', type=float, default=GAMMATONE_F_LOW, show_default=True)
@click.option('--fhigh', 'f_high', type=float, default=GAMMATONE_F_HIGH, show_default=True)
@click.option('--width', type=click.IntRange(min=1), default=GAMMATONE_WIDTH, show_default=True)
@click.option('--out', 'out_path', type=click.Path(dir_okay=False), required=True, help='bank CSV')
def design_gt(n_filters: int, f_low: float, f_high: float, width: int, out_path: str) -> int:
    """ Dump a Gammatone filterbank """
    return run_design_gt(n_filters, f_low, f_high, width, out_path)


@cli.command()
@click.option('--instances', type=click.IntRange(min=1), default=20, show_default=True)
@click.option('--seed', type=int, default=0, show_default=True)
def gradcheck(instances: int, seed: int) -> int:
    """ Compare every analytic gradient with central finite differences """
    return run_gradcheck(instances, seed)


def main(argv: Sequence[str] | None = None) -> int:
    """ Run a command and return its exit code: 0 on success, 1 on usage or configuration errors, 2 on data errors
    and 3 on numerical failures.

    :param argv: the arguments, defaults to sys.argv
    :return: the exit code
    """
    try:
        result = cli.main(args=list(argv) if argv is not None else None, prog_name='wge', standalone_mode=False)
    except click.exceptions.Abort:
        click.echo('Aborted!', err=True)
        return 1
    except click.ClickException as error:
        error.show()
        return 1
    except WGEError as error:
        LOGGER.error('%s', error)
        return error.exit_code
    return result if isinstance(result, int) else 0
