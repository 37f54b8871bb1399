"""
Frobenius coinvariants R/(1 - F)R of a ring model.
"""

from rich.console import Console

from ..algebra.abelian import AbelianGroupPresentation
from ..algebra.rings import WittModel, coinvariants, compare_coinvariants, frobenius_fixed_units, \
    residue_coinvariants
from ..errors import VerificationError
from .base_executor import BaseSubcommandExecutor
from .logging_utils import key_value_table, log_checkmark, log_info


def _free_over_base(group: AbelianGroupPresentation, modulus: int) -> bool:
    return group.free_rank == 0 and all(d == modulus for d in group.torsion)


class CoinvariantReporter(BaseSubcommandExecutor):  # pylint: disable=too-few-public-methods
    """Reporter for the coinv subcommand."""

    command = "coinv"

    def compute(self) -> dict:
        model = self.model
        descriptor = model.descriptor
        group = coinvariants(model).group
        log_info(f"R/(1-F)R = {group}")
        document = {
            "ring": descriptor.to_dict(),
            "coinvariants": group.to_dict(),
            "residue_dimension": residue_coinvariants(model),
            "identity_verdict": compare_coinvariants(model, model).verdict,
        }
        if descriptor.D:
            doubled = coinvariants(descriptor.with_window(2 * descriptor.D).build()).group
            document["double_window"] = doubled.to_dict()
            if descriptor.kind == "PowerSeries":
                document["window_stable"] = doubled == group
            else:
                # negative degrees add one free summand per orbit, so only freeness is stable
                document["window_stable"] = _free_over_base(group, model.modulus) and \
                    _free_over_base(doubled, model.modulus)
        if isinstance(model, WittModel):
            document["fixed_units"] = frobenius_fixed_units(model).to_dict(model)
        return document

    def verify(self, report: dict) -> None:
        result = report["result"]
        if result["identity_verdict"] != "iso":
            raise VerificationError(f"Identity map classified as {result['identity_verdict']}")
        if result.get("window_stable") is False:
            raise VerificationError("Coinvariants change between windows D and 2D")
        log_checkmark("Coinvariant self-checks passed")

    def render_text(self, report: dict, out: Console) -> None:
        result = report["result"]
        rows = {
            "ring": result["ring"],
            "coinvariants": result["coinvariants"]["description"],
            "residue dimension": result["residue_dimension"],
            "identity verdict": result["identity_verdict"],
        }
        if "window_stable" in result:
            rows["window stable"] = result["window_stable"]
        if "fixed_units" in result:
            rows["fixed units"] = result["fixed_units"]["order"]
        out.print(key_value_table("Coinvariants", rows))
