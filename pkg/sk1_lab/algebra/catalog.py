"""
Named small groups used by scans, keyed by order.

The list covers every order up to 32 but not every isomorphism type of
orders 16, 24 and 32; each name is rebuilt and its order checked on use.
"""

from typing import Iterator, Optional

from sympy import factorint

from ..errors import InputError, VerificationError
from .groups import FiniteGroup, named_group

CATALOG: dict[int, tuple[str, ...]] = {
    1: ("C1",),
    2: ("C2",),
    3: ("C3",),
    4: ("C4", "C2xC2"),
    5: ("C5",),
    6: ("C6", "S3"),
    7: ("C7",),
    8: ("C8", "C4xC2", "E2^3", "D8", "Q8"),
    9: ("C9", "C3xC3"),
    10: ("C10", "D10"),
    11: ("C11",),
    12: ("C12", "C6xC2", "D12", "Q12", "A4"),
    13: ("C13",),
    14: ("C14", "D14"),
    15: ("C15",),
    16: ("C16", "C8xC2", "C4xC4", "C4xC2xC2", "E2^4", "D16", "Q16", "SD(8,2,3)", "SD(8,2,5)",
         "SD(4,4,3)", "D8xC2", "Q8xC2"),
    17: ("C17",),
    18: ("C18", "C6xC3", "D18", "S3xC3"),
    19: ("C19",),
    20: ("C20", "C10xC2", "D20", "Q20", "SD(5,4,2)"),
    21: ("C21", "SD(7,3,2)"),
    22: ("C22", "D22"),
    23: ("C23",),
    24: ("C24", "C12xC2", "D24", "Q24", "S4", "A4xC2", "S3xC4", "D8xC3", "Q8xC3", "SD(3,8,2)", "D12xC2"),
    25: ("C25", "C5xC5"),
    26: ("C26", "D26"),
    27: ("C27", "C9xC3", "E3^3", "Heis3", "SD(9,3,4)"),
    28: ("C28", "C14xC2", "D28", "Q28"),
    29: ("C29",),
    30: ("C30", "D30", "S3xC5", "D10xC3"),
    31: ("C31",),
    32: ("C32", "C16xC2", "C8xC4", "C8xC2xC2", "C4xC4xC2", "C4xC2xC2xC2", "E2^5", "D32", "Q32",
         "SD(16,2,7)", "SD(16,2,9)", "SD(8,4,3)", "SD(8,4,5)", "SD(8,4,7)", "SD(4,8,3)", "SD(4,4,3)xC2",
         "D8xC4", "Q8xC4", "D16xC2", "Q16xC2", "D8xC2xC2", "Q8xC2xC2"),
}


def is_prime_power_of(order: int, p: int) -> bool:
    """Whether order is a power of p (1 included)."""
    return order == 1 or set(factorint(order)) == {p}


def catalog_names(min_order: int = 1, max_order: int = 16, p_groups: Optional[int] = None,
                  family: Optional[str] = None) -> list[str]:
    """
    Catalog names in order-then-listing order.

    Args:
        min_order: Smallest order included
        max_order: Largest order included
        p_groups: Keep only groups of p-power order for this prime
        family: Keep only names starting with this prefix (for example ``D`` or ``SD``)
    """
    if min_order < 1 or max_order < min_order:
        raise InputError(f"Invalid order range {min_order}..{max_order}")
    if max_order > max(CATALOG):
        raise InputError(f"The catalog stops at order {max(CATALOG)}")
    names = []
    for order in range(min_order, max_order + 1):
        if p_groups is not None and not is_prime_power_of(order, p_groups):
            continue
        for name in CATALOG[order]:
            if family is None or name.startswith(family):
                names.append(name)
    return names


def catalog_groups(min_order: int = 1, max_order: int = 16, p_groups: Optional[int] = None,
                   family: Optional[str] = None) -> Iterator[FiniteGroup]:
    """Build the selected catalog groups, checking each order."""
    for name in catalog_names(min_order, max_order, p_groups, family):
        group = named_group(name)
        expected = next(order for order, names in CATALOG.items() if name in names)
        if group.order != expected:
            raise VerificationError(f"Catalog group {name} has order {group.order}, listed under {expected}")
        yield group
