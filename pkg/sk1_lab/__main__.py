#!/usr/bin/env python3
"""
Main entry point for the sk1-lab CLI tool.

This module provides a unified command-line interface for SK1 computations
and the verification suites behind them.
"""

import sys
from typing import Callable, Optional

import click

from sk1_lab import __version__
from sk1_lab.algebra.lab import SUITES
from sk1_lab.algebra.rings import PAIRS, RING_KINDS
from sk1_lab.core import (
    BatchConfig,
    BatchRunner,
    CatalogScanner,
    CertificateChecker,
    CoinvariantReporter,
    HomologyBounds,
    HomologyReporter,
    JobSpec,
    OrbitReporter,
    OutputConfig,
    RingComparator,
    ScanConfig,
    SK1Calculator,
    SuiteRunner,
)
from sk1_lab.core.config import OUTPUT_FORMATS, default_seed
from sk1_lab.core.descriptors import parse_group_option
from sk1_lab.core.logging_utils import log_bold, log_error, log_warning
from sk1_lab.errors import VerificationError


@click.group()
@click.version_option(version=__version__, prog_name="sk1-lab")
@click.pass_context
def main(ctx):
    """
    SK1 Lab - SK1 of p-adic group rings and the checks behind it.

    Reports are written as JSON (or text) to stdout or --output; progress
    and diagnostics go to stderr.

    Defaults can be set via environment variables:
    - SK1_LAB_CACHE_DIR: report cache directory (default ~/.cache/sk1-lab)
    - SK1_LAB_MAX_ORDER: degree-2 homology size bound (default 32)
    - SK1_LAB_SEED: default random seed (default 0)
    """
    ctx.ensure_object(dict)


def _output_options(f):
    f = click.option('--no-cache', 'no_cache', is_flag=True,
                     help='Neither read nor write the report cache')(f)
    f = click.option('--cache-dir', 'cache_dir',
                     help='Report cache directory (or set SK1_LAB_CACHE_DIR env var)')(f)
    f = click.option('--output', '-o', 'output',
                     help='Write the report to this file instead of stdout')(f)
    f = click.option('--format', '-F', 'output_format', type=click.Choice(OUTPUT_FORMATS), default="json",
                     help='Report format (default: json)')(f)
    return f


def _ring_options(f):
    f = click.option('--max-order', 'max_order', type=int,
                     help='Degree-2 homology size bound (or set SK1_LAB_MAX_ORDER env var)')(f)
    f = click.option('--D', '-D', 'window', type=int, default=4,
                     help='Degree window of series rings (default: 4)')(f)
    f = click.option('--f', '-f', 'witt_degree', type=int, default=1,
                     help='Degree f of the unramified Witt base (default: 1)')(f)
    f = click.option('--N', '-N', 'precision', type=int, default=4,
                     help='p-adic precision N (default: 4)')(f)
    f = click.option('--p', '-p', 'p', type=int, default=2,
                     help='The prime p (default: 2)')(f)
    f = click.option('--ring', '-r', 'ring', type=click.Choice(RING_KINDS), default="Zp",
                     help='Coefficient ring model (default: Zp)')(f)
    return f


def _create_output_config(output_format: str, output: Optional[str], cache_dir: Optional[str],
                          no_cache: bool) -> OutputConfig:
    """Create an OutputConfig from command line parameters."""
    return OutputConfig(
        output_format=output_format,
        output_file=output,
        cache_dir=cache_dir,
        use_cache=not no_cache
    )


def _create_job(command: str, group: Optional[str], options: dict) -> JobSpec:
    """
    Create a JobSpec from command line parameters, with environment fallbacks.

    Args:
        command: Subcommand name
        group: Raw --group value (or None)
        options: Remaining ring, seed and suite parameters
    """
    bounds = HomologyBounds.resolve(options.pop("max_order", None))
    if bounds.is_raised:
        log_warning(f"Degree-2 size bound raised to {bounds.max_order}; bar complexes grow as |G|^3")
    seed = default_seed(options.pop("seed", None))
    return JobSpec(
        command=command,
        group=parse_group_option(group) if group else None,
        seed=seed,
        max_order=bounds.max_order,
        **options
    )


def _execute(run: Callable[[], object], failure: str) -> None:
    """Run an executor; exit 2 on a failed self-check and 1 on any other error."""
    try:
        run()
    except VerificationError as e:
        log_error(f"Verification failed: {e}")
        sys.exit(2)
    except Exception as e:
        log_error(f"{failure}: {e}")
        sys.exit(1)


@main.command()
@click.option('--group', '-g', required=True,
              help='Group name (e.g. Q8, C2xD8), inline JSON descriptor or @file.json')
@_ring_options
@click.option('--dual-path', 'dual_path', is_flag=True,
              help='Cross-check against the direct covariants computation')
@_output_options
def sk1(group: str, output_format: str, output: str, cache_dir: str, no_cache: bool,  # pylint: disable=too-many-arguments
        dual_path: bool, **options):
    """Compute SK1(R[G]) from the orbit formula."""
    log_bold("Computing SK1", color="blue")

    def run():
        job = _create_job("sk1", group, {**options, "dual_path": dual_path})
        SK1Calculator(job, _create_output_config(output_format, output, cache_dir, no_cache)).run()

    _execute(run, "SK1 computation failed")


@main.command()
@click.option('--group', '-g', required=True,
              help='Group name, inline JSON descriptor or @file.json')
@_ring_options
@_output_options
def h2(group: str, output_format: str, output: str, cache_dir: str, no_cache: bool, **options):  # pylint: disable=too-many-arguments
    """Show H1, H2, the commuting-pair part and H2-bar of a group."""
    def run():
        job = _create_job("h2", group, options)
        HomologyReporter(job, _create_output_config(output_format, output, cache_dir, no_cache)).run()

    _execute(run, "Homology computation failed")


@main.command()
@click.option('--group', '-g', required=True,
              help='Group name, inline JSON descriptor or @file.json')
@_ring_options
@_output_options
def orbits(group: str, output_format: str, output: str, cache_dir: str, no_cache: bool, **options):  # pylint: disable=too-many-arguments
    """Show the orbits of g -> g^p on p-regular conjugacy classes."""
    def run():
        job = _create_job("orbits", group, options)
        OrbitReporter(job, _create_output_config(output_format, output, cache_dir, no_cache)).run()

    _execute(run, "Orbit computation failed")


@main.command()
@click.option('--suite', '-s', 'suite', required=True, type=click.Choice(list(SUITES)),
              help='Verification suite to run')
@click.option('--group', '-g', required=True,
              help='Group name, inline JSON descriptor or @file.json')
@_ring_options
@click.option('--trials', '-t', 'trials', type=int, default=100,
              help='Number of random trials (default: 100)')
@click.option('--seed', 'seed', type=int,
              help='Random seed (or set SK1_LAB_SEED env var, default 0)')
@_output_options
def logcheck(suite: str, group: str, output_format: str, output: str, cache_dir: str,  # pylint: disable=too-many-arguments
             no_cache: bool, **options):
    """Run a seeded verification suite on R[G]."""
    log_bold(f"Running suite {suite}", color="blue")

    def run():
        job = _create_job("logcheck", group, {**options, "suite": suite})
        SuiteRunner(job, _create_output_config(output_format, output, cache_dir, no_cache)).run()

    _execute(run, "Suite failed to run")


@main.command()
@_ring_options
@_output_options
def coinv(output_format: str, output: str, cache_dir: str, no_cache: bool, **options):
    """Show the Frobenius coinvariants R/(1-F)R of a ring model."""
    def run():
        job = _create_job("coinv", None, options)
        CoinvariantReporter(job, _create_output_config(output_format, output, cache_dir, no_cache)).run()

    _execute(run, "Coinvariant computation failed")


@main.command(name="compare-rings")
@click.option('--pair', 'pair', required=True, type=click.Choice(list(PAIRS)),
              help='Named ring pair')
@click.option('--group', '-g',
              help='Also compare SK1 of the group rings for this group')
@_ring_options
@_output_options
def compare_rings(pair: str, group: Optional[str], output_format: str, output: str,  # pylint: disable=too-many-arguments
                  cache_dir: str, no_cache: bool, **options):
    """Compare the coinvariants of a ring pair and the SK1 consequence."""
    def run():
        job = _create_job("compare-rings", group, {**options, "pair": pair})
        RingComparator(job, _create_output_config(output_format, output, cache_dir, no_cache)).run()

    _execute(run, "Ring comparison failed")


@main.command()
@click.option('--group', '-g', required=True,
              help='Group name, inline JSON descriptor or @file.json')
@_ring_options
@_output_options
def certify(group: str, output_format: str, output: str, cache_dir: str, no_cache: bool, **options):  # pylint: disable=too-many-arguments
    """List the certificates forcing trivial SK1 and check them against the orbit formula."""
    def run():
        job = _create_job("certify", group, options)
        CertificateChecker(job, _create_output_config(output_format, output, cache_dir, no_cache)).run()

    _execute(run, "Certificate check failed")


@main.command()
@click.option('--from-order', 'min_order', type=int, default=1,
              help='Smallest group order (default: 1)')
@click.option('--to-order', 'to_order', type=int, default=16,
              help='Largest group order (default: 16)')
@click.option('--p-groups', 'p_groups_only', is_flag=True,
              help='Only groups of p-power order')
@click.option('--family', 'family',
              help='Only catalog names starting with this prefix (e.g. D, Q, SD)')
@click.option('--dual-path', 'dual_path', is_flag=True,
              help='Cross-check every group against the direct covariants computation')
@click.option('--stop-at-first', 'stop_at_first', is_flag=True,
              help='Stop at the first group with nontrivial SK1')
@_ring_options
@_output_options
def scan(min_order: int, to_order: int, p_groups_only: bool, family: Optional[str],  # pylint: disable=too-many-arguments
         dual_path: bool, stop_at_first: bool, output_format: str, output: str, cache_dir: str,
         no_cache: bool, **options):
    """Compute SK1 over the named-group catalog for a range of orders."""
    def run():
        template = _create_job("sk1", None, options)
        scan_config = ScanConfig(
            min_order=min_order,
            max_order=to_order,
            p_groups_only=p_groups_only,
            family=family,
            dual_path=dual_path,
            stop_at_first=stop_at_first
        )
        output_config = _create_output_config(output_format, output, cache_dir, no_cache)
        CatalogScanner(template, scan_config, output_config).run()

    _execute(run, "Scan failed")


@main.command()
@click.argument('input_file', type=click.Path(exists=True, dir_okay=False))
@click.option('--jobs', '-j', 'jobs', type=int, default=1,
              help='Number of jobs run concurrently (default: 1)')
@_output_options
def batch(input_file: str, jobs: int, output_format: str, output: str, cache_dir: str, no_cache: bool):  # pylint: disable=too-many-arguments
    """Run a JSON array of jobs and write their reports in input order."""
    def run():
        output_config = _create_output_config(output_format, output, cache_dir, no_cache)
        BatchRunner(BatchConfig(input_file=input_file, jobs=jobs), output_config).run()

    _execute(run, "Batch failed")


if __name__ == '__main__':
    main()  # pylint: disable=no-value-for-parameter
