"""
Triviality certificates checked against the orbit formula.
"""

from rich.console import Console
from rich.table import Table

from ..algebra.engine import certify
from ..algebra.groups import central_translation_is_free, is_commutator
from ..algebra.lab import central_elements_of_order
from .base_executor import BaseSubcommandExecutor
from .logging_utils import log_checkmark, log_warning


class CertificateChecker(BaseSubcommandExecutor):  # pylint: disable=too-few-public-methods
    """Checker for the certify subcommand."""

    command = "certify"

    def compute(self) -> dict:
        group, p = self.group, self.model.p
        document = certify(self.model, group, self.job.max_order)
        document["central_elements"] = [
            {
                "element": group.names[c],
                "is_commutator": is_commutator(group, c),
                "translation_free": central_translation_is_free(group, c),
            }
            for c in central_elements_of_order(group, p)
        ]
        if document["certificates"]:
            log_checkmark(f"{group.name}: {document['status']}")
        else:
            log_warning(f"{group.name}: {document['status']}")
        return document

    def render_text(self, report: dict, out: Console) -> None:
        result = report["result"]
        table = Table(title=f"Certificates for {result['group']} at p = {result['p']}")
        table.add_column("Kind", style="cyan")
        table.add_column("Detail", style="green")
        for certificate in result["certificates"]:
            detail = {k: v for k, v in certificate.items() if k != "kind"}
            table.add_row(certificate["kind"], str(detail) if detail else "")
        out.print(table)
        out.print(f"Status: {result['status']}; SK1 = {result['sk1']['description']}")
