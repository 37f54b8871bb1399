"""
Orbits of the p-th power map on p-regular conjugacy classes.
"""

from rich.console import Console
from rich.table import Table

from ..algebra.engine import psi_orbits
from ..algebra.groups import p_regular_classes
from ..errors import VerificationError
from .base_executor import BaseSubcommandExecutor


class OrbitReporter(BaseSubcommandExecutor):  # pylint: disable=too-few-public-methods
    """Reporter for the orbits subcommand."""

    command = "orbits"

    def compute(self) -> dict:
        group, p = self.group, self.job.p
        structure = psi_orbits(group, p)
        document = structure.to_dict()
        document["regular_classes"] = len(p_regular_classes(group, p))
        document["classes"] = len(group.conjugacy.reps)
        return document

    def verify(self, report: dict) -> None:
        result = report["result"]
        covered = sum(orbit["size"] for orbit in result["orbits"])
        if covered != result["regular_classes"]:
            raise VerificationError(
                f"Orbits cover {covered} classes but there are {result['regular_classes']} p-regular classes")

    def render_text(self, report: dict, out: Console) -> None:
        result = report["result"]
        table = Table(title=f"Psi-orbits of {result['group']} at p = {result['p']}")
        table.add_column("Representative", style="cyan")
        table.add_column("Classes", style="green")
        table.add_column("Size", style="yellow")
        table.add_column("|C|", style="blue")
        for orbit in result["orbits"]:
            table.add_row(orbit["representative"], ", ".join(orbit["classes"]), str(orbit["size"]),
                          str(orbit["centralizer_order"]))
        out.print(table)
