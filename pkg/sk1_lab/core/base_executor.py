"""
Base class for subcommand executors.

This module provides a common superclass for all subcommand implementations:
job validation, group and ring construction, the report envelope, the
report cache and output in JSON or text form.
"""

import json
from typing import Callable, Optional

import click
from rich.console import Console

from .. import __version__
from ..algebra.group_ring import GroupRing
from ..algebra.groups import FiniteGroup, build_group
from ..algebra.rings import RingModel
from .cache import ReportCache, cache_key, canonical_json
from .config import SCHEMA_VERSION, JobSpec, OutputConfig
from .descriptors import group_label
from .logging_utils import key_value_table, log_info, log_job_info, log_success, report_console


def dump_report(report: dict) -> str:
    """The JSON text of a report as written to stdout or a file."""
    return json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False, default=str)


def write_report(report: dict, output: OutputConfig, render: Callable[[dict, Console], None]) -> None:
    """Write a report as JSON or rendered text to the output file or stdout."""
    target = output.output_file
    if output.output_format == "json":
        text = dump_report(report)
        if target:
            with open(target, 'w', encoding='utf-8') as f:
                f.write(text + "\n")
            log_success(f"Report written to {target}")
        else:
            click.echo(text)
        return
    if target:
        with open(target, 'w', encoding='utf-8') as f:
            render(report, Console(file=f, width=120, color_system=None))
        log_success(f"Report written to {target}")
    else:
        render(report, report_console)


def report_envelope(command: str, job: dict, result: dict, **extra) -> dict:
    """Provenance fields shared by every report, normalised through canonical JSON."""
    report = {
        "schema_version": SCHEMA_VERSION,
        "tool": {"name": "sk1-lab", "version": __version__},
        "command": command,
        "job": job,
        **extra,
        "result": result,
    }
    return json.loads(canonical_json(report))


class BaseSubcommandExecutor:
    """
    Base class for all subcommand executors.

    Subclasses implement ``compute`` and may override ``verify`` (raise
    ``VerificationError`` after the report is written) and ``render_text``.
    """

    command = ""

    def __init__(self, job: JobSpec, output: OutputConfig, announce: bool = True):
        """
        Validate the job and build its group.

        Args:
            job: The computation request
            output: Output and cache settings
            announce: Log the job header and show spinners (off inside scans and batches)
        """
        job.validate()
        self._job = job
        self._output = output
        self._cache = ReportCache(output.cache_path, output.use_cache)
        self._group: Optional[FiniteGroup] = build_group(job.group) if job.group is not None else None
        self._model: Optional[RingModel] = None
        self._announce = announce
        if announce:
            self._display_job_info()

    @property
    def job(self) -> JobSpec:
        """Get the job."""
        return self._job

    @property
    def group(self) -> FiniteGroup:
        """The job's group."""
        return self._group

    @property
    def model(self) -> RingModel:
        """The job's ring model, built on first use."""
        if self._model is None:
            self._model = self._job.ring_descriptor().build()
        return self._model

    def group_ring(self) -> GroupRing:
        """R[G] for the job's group and ring."""
        return GroupRing(self.group, self.model)

    def _display_job_info(self) -> None:
        ring = self._job.pair or str(self._job.ring_descriptor())
        log_job_info(self._job.command, group_label(self._job.group), ring, self._job.seed)

    def compute(self) -> dict:
        """The command-specific result document."""
        raise NotImplementedError

    def verify(self, report: dict) -> None:
        """Raise ``VerificationError`` if the report records a failed self-check."""

    def render_text(self, report: dict, out: Console) -> None:
        """Human-readable rendering; the default lists the top-level result fields."""
        result = report["result"]
        rows = {k: v for k, v in result.items() if not isinstance(v, (dict, list))}
        out.print(key_value_table(f"{self.command} report", rows))

    def build_report(self) -> dict:
        """The full report, from the cache when an identical job was run before."""
        fingerprint = self._group.fingerprint if self._group is not None else None
        key = cache_key(self._job.to_dict(), fingerprint)
        cached = self._cache.get(key)
        if cached is not None:
            log_info(f"Cache hit {key[:12]}")
            return cached
        report = report_envelope(self.command, self._job.to_dict(), self.compute(),
                                 bounds={"degree2_max_order": self._job.max_order})
        self._cache.put(key, report)
        return report

    def emit(self, report: dict) -> None:
        """Write the report to the output file or stdout."""
        write_report(report, self._output, self.render_text)

    def run(self) -> dict:
        """Build, write and verify the report."""
        report = self.build_report()
        self.emit(report)
        self.verify(report)
        return report
