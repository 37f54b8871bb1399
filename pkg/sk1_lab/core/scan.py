"""
Sweep of the named-group catalog over an order range.
"""

from dataclasses import asdict, replace

from rich.console import Console
from rich.progress import Progress, SpinnerColumn, TextColumn
from rich.table import Table

from ..algebra.catalog import catalog_names
from ..errors import SizeBoundError, VerificationError
from .base_executor import report_envelope, write_report
from .config import JobSpec, OutputConfig, ScanConfig
from .logging_utils import console, log_bold, log_checkmark, log_info, log_warning
from .sk1 import SK1Calculator


class CatalogScanner:  # pylint: disable=too-few-public-methods
    """Runs the sk1 computation over catalog groups and records the first nontrivial SK1."""

    def __init__(self, template: JobSpec, scan_config: ScanConfig, output: OutputConfig):
        self._template = template
        self._scan = scan_config
        self._output = output

    def _names(self) -> list[str]:
        p = self._template.p if self._scan.p_groups_only else None
        return catalog_names(self._scan.min_order, self._scan.max_order, p, self._scan.family)

    def _scan_group(self, name: str) -> dict:
        job = replace(self._template, command="sk1", group=name, dual_path=self._scan.dual_path)
        calculator = SK1Calculator(job, replace(self._output, output_file=None), announce=False)
        result = calculator.build_report()["result"]
        row = {
            "group": name,
            "order": calculator.group.order,
            "sk1": result["total"]["description"],
            "trivial": not result["total"]["torsion"] and not result["total"]["free_rank"],
            "status": result["checks"].get("certificate_status"),
        }
        dual = result["checks"].get("dual_path")
        if dual is not None:
            row["dual_path_agree"] = dual["agree"]
            if not dual["agree"]:
                row["discrepancy"] = dual["discrepancy"]
        return row

    def run(self) -> dict:
        """Scan, write the report and raise if any dual-path check disagreed."""
        names = self._names()
        log_bold(f"Scanning {len(names)} catalog groups", color="blue")
        rows, skipped = [], []
        first_nontrivial = None
        with Progress(
            SpinnerColumn(),
            TextColumn("[progress.description]{task.description}"),
            console=console
        ) as progress:
            task = progress.add_task("Scanning...", total=len(names))
            for name in names:
                progress.update(task, description=f"Scanning {name}...")
                try:
                    row = self._scan_group(name)
                except SizeBoundError as e:
                    log_warning(f"Skipping {name}: {e}")
                    skipped.append({"group": name, "reason": str(e)})
                    progress.advance(task)
                    continue
                rows.append(row)
                progress.advance(task)
                if not row["trivial"] and first_nontrivial is None:
                    first_nontrivial = name
                    log_info(f"First nontrivial SK1: {name} ({row['sk1']})")
                    if self._scan.stop_at_first:
                        break
        result = {
            "groups": rows,
            "skipped": skipped,
            "first_nontrivial": first_nontrivial,
            "discrepancies": [row for row in rows if row.get("dual_path_agree") is False],
        }
        report = report_envelope("scan", self._template.to_dict(), result, scan=asdict(self._scan))
        write_report(report, self._output, self.render_text)
        if result["discrepancies"]:
            raise VerificationError(f"{len(result['discrepancies'])} groups disagree on the dual-path check")
        log_checkmark(f"Scanned {len(rows)} groups, first nontrivial: {first_nontrivial or 'none'}")
        return report

    @staticmethod
    def render_text(report: dict, out: Console) -> None:
        """Table of the scanned groups."""
        result = report["result"]
        table = Table(title="Catalog scan")
        table.add_column("Group", style="cyan")
        table.add_column("Order", style="green")
        table.add_column("SK1", style="yellow")
        table.add_column("Certificates", style="blue")
        for row in result["groups"]:
            table.add_row(row["group"], str(row["order"]), row["sk1"], str(row["status"]))
        out.print(table)
        out.print(f"First nontrivial: {result['first_nontrivial'] or 'none'}")
