"""
Low-degree homology of a group: H1, H2, the commuting-pair part and the Shapiro check.
"""

from rich.console import Console
from rich.table import Table

from ..algebra.groups import abelianization
from ..algebra.homology import h2_ab, shapiro_h1
from ..errors import VerificationError
from .base_executor import BaseSubcommandExecutor
from .logging_utils import log_checkmark, log_cross, log_info


class HomologyReporter(BaseSubcommandExecutor):  # pylint: disable=too-few-public-methods
    """Reporter for the h2 subcommand."""

    command = "h2"

    def compute(self) -> dict:
        group, p = self.group, self.job.p
        h1, _ = abelianization(group)
        result = h2_ab(group, self.job.max_order)
        log_info(f"H2({group.name}, Z) = {result.h2.group}")
        document = {
            "group": group.name,
            "order": group.order,
            "h1": h1.to_dict(),
            "h2": result.h2.to_dict(),
            "h2_ab": result.h2_ab.to_dict(),
            "h2_bar": result.h2_bar.to_dict(),
            "h2_bar_p_part": result.h2_bar.p_part(p).to_dict(),
            "commuting_pairs": result.pair_count,
        }
        if group.is_abelian:
            closed_form = h1.exterior_square()
            document["closed_form"] = {
                "value": closed_form.to_dict(),
                "agree": closed_form == result.h2.group,
            }
        shapiro = shapiro_h1(group, p, self.job.precision)
        document["shapiro_h1"] = shapiro.to_dict(group)
        return document

    def verify(self, report: dict) -> None:
        result = report["result"]
        closed_form = result.get("closed_form")
        if closed_form is not None and not closed_form["agree"]:
            log_cross("Bar complex and exterior square disagree")
            raise VerificationError(
                f"H2 = {result['h2']['group']['description']} but the exterior square is "
                f"{closed_form['value']['description']}")
        if not result["shapiro_h1"]["is_isomorphism"]:
            log_cross("Shapiro identification is not an isomorphism")
            raise VerificationError("Shapiro identification of H1 with coefficients in the regular module failed")
        log_checkmark("Homology self-checks passed")

    def render_text(self, report: dict, out: Console) -> None:
        result = report["result"]
        table = Table(title=f"Homology of {result['group']} (order {result['order']})")
        table.add_column("Group", style="cyan")
        table.add_column("Invariant factors", style="green")
        table.add_row("H1(G, Z)", result["h1"]["description"])
        table.add_row("H2(G, Z)", result["h2"]["group"]["description"])
        table.add_row("H2ab", result["h2_ab"]["description"])
        table.add_row("H2-bar", result["h2_bar"]["description"])
        table.add_row("H1(G, Z/p^N[G_r])", result["shapiro_h1"]["group"]["description"])
        out.print(table)
