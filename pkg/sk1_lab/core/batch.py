"""
Batch runs of JobSpecs read from a JSON file.
"""

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import replace

from rich.console import Console
from rich.progress import Progress, SpinnerColumn, TextColumn
from rich.table import Table

from ..errors import InputError, VerificationError
from .base_executor import BaseSubcommandExecutor, report_envelope, write_report
from .certify import CertificateChecker
from .coinv import CoinvariantReporter
from .compare import RingComparator
from .config import BatchConfig, JobSpec, OutputConfig
from .h2 import HomologyReporter
from .logcheck import SuiteRunner
from .logging_utils import console, log_bold, log_checkmark, log_cross, log_error, log_panel
from .orbits import OrbitReporter
from .sk1 import SK1Calculator

EXECUTORS: dict[str, type[BaseSubcommandExecutor]] = {
    "sk1": SK1Calculator,
    "h2": HomologyReporter,
    "orbits": OrbitReporter,
    "logcheck": SuiteRunner,
    "coinv": CoinvariantReporter,
    "compare-rings": RingComparator,
    "certify": CertificateChecker,
}


def load_jobs(path: str) -> list[JobSpec]:
    """
    Read a JSON array of job objects.

    Raises:
        InputError: If the file is missing, not JSON, or not an array
    """
    try:
        with open(path, 'r', encoding='utf-8') as f:
            data = json.load(f)
    except FileNotFoundError as ex:
        raise InputError(f"Batch file not found: {path}") from ex
    except json.JSONDecodeError as ex:
        raise InputError(f"Invalid JSON in batch file {path}: {ex}") from ex
    if not isinstance(data, list):
        raise InputError("Batch file must hold a JSON array of jobs")
    return [JobSpec.from_dict(entry) for entry in data]


class BatchRunner:  # pylint: disable=too-few-public-methods
    """Runs every job of a batch file, optionally in parallel, reporting in input order."""

    def __init__(self, batch_config: BatchConfig, output: OutputConfig):
        if batch_config.jobs < 1:
            raise InputError(f"--jobs must be >= 1, got {batch_config.jobs}")
        self._batch = batch_config
        self._output = output

    def _run_one(self, job: JobSpec) -> dict:
        entry = {"job": job.to_dict()}
        try:
            executor = EXECUTORS[job.command](job, replace(self._output, output_file=None), announce=False)
            report = executor.build_report()
            entry["report"] = report
            executor.verify(report)
            entry["status"] = "ok"
        except VerificationError as e:
            entry["status"] = "verification-failed"
            entry["error"] = str(e)
        except Exception as e:
            entry["status"] = "error"
            entry["error"] = str(e)
        return entry

    def run(self) -> dict:
        """Run all jobs, write the combined report, then raise on failures."""
        jobs = load_jobs(self._batch.input_file)
        log_bold(f"Running {len(jobs)} jobs with {self._batch.jobs} workers", color="blue")
        with Progress(
            SpinnerColumn(),
            TextColumn("[progress.description]{task.description}"),
            console=console
        ) as progress:
            task = progress.add_task("Running batch...", total=len(jobs))
            with ThreadPoolExecutor(max_workers=self._batch.jobs) as pool:
                entries = []
                for entry in pool.map(self._run_one, jobs):
                    entries.append(entry)
                    progress.advance(task)
        for index, entry in enumerate(entries):
            if entry["status"] == "ok":
                log_checkmark(f"Job {index}: {entry['job']['command']}")
            else:
                log_cross(f"Job {index}: {entry['status']}: {entry['error']}")
        report = report_envelope("batch", {"input_file": self._batch.input_file, "jobs": self._batch.jobs},
                                 {"entries": entries})
        write_report(report, self._output, self.render_text)
        errors = [e for e in entries if e["status"] == "error"]
        failures = [e for e in entries if e["status"] == "verification-failed"]
        log_panel(f"ok: {len(entries) - len(errors) - len(failures)}\n"
                  f"verification-failed: {len(failures)}\nerror: {len(errors)}",
                  title="Batch results", style="red" if errors or failures else "green")
        if errors:
            log_error(f"{len(errors)} of {len(entries)} jobs failed")
            raise InputError(f"{len(errors)} batch jobs failed")
        if failures:
            raise VerificationError(f"{len(failures)} batch jobs failed verification")
        return report

    @staticmethod
    def render_text(report: dict, out: Console) -> None:
        """One row per job."""
        table = Table(title="Batch")
        table.add_column("#", style="cyan")
        table.add_column("Command", style="green")
        table.add_column("Group", style="yellow")
        table.add_column("Status", style="blue")
        for index, entry in enumerate(report["result"]["entries"]):
            job = entry["job"]
            table.add_row(str(index), job["command"], str(job.get("group") or "-"), entry["status"])
        out.print(table)
