"""
SK1(R[G]) from the orbit formula, with certificates and optional dual-path check.
"""

from rich.console import Console
from rich.table import Table

from ..algebra.engine import certify, dual_path, sk1, theta_target_pgroup
from ..errors import VerificationError
from .base_executor import BaseSubcommandExecutor
from .logging_utils import log_checkmark, log_cross, log_info, log_step, log_warning, spinner


class SK1Calculator(BaseSubcommandExecutor):  # pylint: disable=too-few-public-methods
    """Calculator for the sk1 subcommand."""

    command = "sk1"

    def compute(self) -> dict:
        model, group = self.model, self.group
        max_order = self.job.max_order
        with spinner(f"Computing SK1 of {group.name} over {model.descriptor}...", self._announce) as describe:
            report = sk1(model, group, max_order)
            certified = certify(model, group, max_order, report)
            report.certificates = certified["certificates"]
            report.checks["certificate_status"] = certified["status"]
            if group.is_p_group(model.p):
                theta = theta_target_pgroup(model, group, max_order)
                report.checks["theta_target"] = {"value": theta.to_dict(), "agree": theta == report.total}
            if self.job.dual_path:
                describe("Computing covariants for the dual-path check...")
                report.checks["dual_path"] = dual_path(model, group, max_order)
        log_info(f"{group.name}: SK1 = {report.total}")
        return report.to_dict()

    def _step(self, number: int, text: str) -> None:
        if self._announce:
            log_step(number, text)

    def verify(self, report: dict) -> None:
        checks = report["result"]["checks"]
        theta = checks.get("theta_target")
        if theta is not None:
            self._step(1, "p-group target against the orbit formula")
            if not theta["agree"]:
                log_cross("Orbit formula and the p-group target disagree")
                raise VerificationError(
                    f"p-group target {theta['value']['description']} differs from the orbit formula")
            log_checkmark("Orbit formula agrees with the p-group target")
        dual = checks.get("dual_path")
        if dual is not None:
            self._step(2, "Direct covariants against the orbit formula")
            if not dual["agree"]:
                log_warning(dual["discrepancy"])
                raise VerificationError(dual["discrepancy"])
            log_checkmark("Orbit formula agrees with the direct covariants")

    def render_text(self, report: dict, out: Console) -> None:
        result = report["result"]
        table = Table(title=f"SK1 of {result['group']}[{result['ring']['kind']}] at N = {result['precision_used']}")
        table.add_column("Orbit rep", style="cyan")
        table.add_column("Size", style="green")
        table.add_column("|C|", style="green")
        table.add_column("H2-bar", style="yellow")
        table.add_column("Coinvariants", style="blue")
        table.add_column("Tensor", style="magenta")
        for orbit in result["orbits"]:
            table.add_row(
                orbit["representative"],
                str(orbit["size"]),
                str(orbit["centralizer_order"]),
                orbit["h2_bar"]["description"],
                orbit["coinvariants"]["description"],
                orbit["tensor"]["description"],
            )
        out.print(table)
        out.print(f"Total: {result['total']['description']}")
        status = result["checks"].get("certificate_status")
        if status:
            out.print(f"Certificates: {status}")
