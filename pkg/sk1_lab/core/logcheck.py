"""
Seeded verification suites for the group logarithm and its companions.
"""

from rich.console import Console

from ..algebra.lab import run_suite
from ..errors import VerificationError
from .base_executor import BaseSubcommandExecutor
from .logging_utils import key_value_table, log_checkmark, log_cross, spinner


class SuiteRunner(BaseSubcommandExecutor):  # pylint: disable=too-few-public-methods
    """Runner for the logcheck subcommand."""

    command = "logcheck"

    def compute(self) -> dict:
        job = self.job
        with spinner(f"Running {job.suite} ({job.trials} trials)...", self._announce):
            report = run_suite(job.suite, self.group_ring(), job.trials, job.seed)
        return report.to_dict()

    def verify(self, report: dict) -> None:
        result = report["result"]
        if result["failures"]:
            log_cross(f"{result['check']}: {result['failures']} of {result['trials']} trials failed")
            raise VerificationError(f"Suite {result['check']} had {result['failures']} failures")
        log_checkmark(f"{result['check']}: all {result['trials'] - result['skipped']} checked trials passed")

    def render_text(self, report: dict, out: Console) -> None:
        result = report["result"]
        rows = {k: v for k, v in result.items() if k != "examples"}
        out.print(key_value_table(f"Suite {result['check']}", rows))
        for example in result["examples"]:
            out.print(f"  {example}")
