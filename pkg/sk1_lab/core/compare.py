"""
Comparison of coefficient rings through their coinvariants, optionally lifted to SK1.
"""

from rich.console import Console

from ..algebra.engine import ring_comparison_sk1
from ..algebra.rings import compare_pair
from ..errors import VerificationError
from .base_executor import BaseSubcommandExecutor
from .logging_utils import key_value_table, log_checkmark, log_cross, log_info


class RingComparator(BaseSubcommandExecutor):  # pylint: disable=too-few-public-methods
    """Comparator for the compare-rings subcommand."""

    command = "compare-rings"

    def compute(self) -> dict:
        job = self.job
        if self.group is not None:
            document = ring_comparison_sk1(job.pair, job.p, job.precision, self.group, job.witt_degree,
                                           job.window, job.max_order)
            comparison = document["comparison"]
        else:
            comparison = compare_pair(job.pair, job.p, job.precision, job.witt_degree, job.window).to_dict()
            document = {"pair": job.pair, "comparison": comparison}
        log_info(f"{comparison['description']}: {comparison['verdict']}")
        return document

    def verify(self, report: dict) -> None:
        comparison = report["result"]["comparison"]
        if not comparison["window_stable"]:
            log_cross("Verdict changes between windows D and 2D")
            raise VerificationError(f"Verdict for {comparison['pair']} is not window-stable")
        if comparison["verdict"] != comparison["expected"]:
            log_cross(f"Expected {comparison['expected']}, got {comparison['verdict']}")
            raise VerificationError(
                f"Verdict for {comparison['pair']} is {comparison['verdict']}, expected {comparison['expected']}")
        log_checkmark(f"{comparison['pair']}: {comparison['verdict']} (window-stable)")

    def render_text(self, report: dict, out: Console) -> None:
        result = report["result"]
        comparison = result["comparison"]
        rows = {
            "pair": comparison["description"],
            "verdict": comparison["verdict"],
            "expected": comparison["expected"],
            "window stable": comparison["window_stable"],
            "consequence": comparison["consequence"],
        }
        if "sk1_source" in result:
            rows["SK1 source"] = result["sk1_source"]["description"]
            rows["SK1 target"] = result["sk1_target"]["description"]
        out.print(key_value_table("Ring comparison", rows))
