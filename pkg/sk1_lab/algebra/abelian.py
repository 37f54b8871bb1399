"""
Finitely generated abelian groups in invariant-factor form.

Every group-valued result in sk1-lab (abelianizations, homology groups,
Frobenius coinvariants, SK1 totals) is reported as an
``AbelianGroupPresentation``: a free rank plus invariant factors
d1 | d2 | ... with every di >= 2.
"""

from dataclasses import dataclass
from math import gcd, prod
from typing import Iterable

from sympy import factorint

from ..errors import InputError


def _invariant_factors(orders: Iterable[int]) -> tuple[int, ...]:
    """Regroup cyclic orders into the invariant-factor chain via primary parts."""
    primary: dict[int, list[int]] = {}
    for order in orders:
        if order < 0:
            raise InputError(f"Cyclic order must be nonnegative, got {order}")
        if order <= 1:
            continue
        for prime, exponent in factorint(order).items():
            primary.setdefault(prime, []).append(prime ** exponent)
    if not primary:
        return ()
    length = max(len(powers) for powers in primary.values())
    factors = [1] * length
    for powers in primary.values():
        powers.sort(reverse=True)
        for index, power in enumerate(powers):
            factors[length - 1 - index] *= power
    return tuple(factor for factor in factors if factor > 1)


@dataclass(frozen=True)
class AbelianGroupPresentation:
    """Free rank plus invariant factors d1 | d2 | ... (all >= 2)."""
    free_rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, 'torsion', tuple(int(d) for d in self.torsion))
        if self.free_rank < 0:
            raise InputError(f"Free rank must be nonnegative, got {self.free_rank}")
        for d in self.torsion:
            if d < 2:
                raise InputError(f"Invariant factors must be >= 2, got {self.torsion}")
        for smaller, larger in zip(self.torsion, self.torsion[1:]):
            if larger % smaller:
                raise InputError(f"Invariant factors must form a divisibility chain, got {self.torsion}")

    @classmethod
    def from_orders(cls, orders: Iterable[int], free_rank: int = 0) -> "AbelianGroupPresentation":
        """Build the presentation of a direct sum of cyclic groups of the given orders (0 means Z)."""
        orders = list(orders)
        free_rank += sum(1 for order in orders if order == 0)
        return cls(free_rank=free_rank, torsion=_invariant_factors(o for o in orders if o != 0))

    @classmethod
    def trivial(cls) -> "AbelianGroupPresentation":
        """The zero group."""
        return cls()

    @property
    def is_trivial(self) -> bool:
        """True when the group is zero."""
        return self.free_rank == 0 and not self.torsion

    @property
    def is_finite(self) -> bool:
        """True when the free rank is zero."""
        return self.free_rank == 0

    @property
    def order(self) -> int:
        """Order of a finite group."""
        if not self.is_finite:
            raise InputError("Order of an infinite abelian group is undefined")
        return prod(self.torsion)

    @property
    def exponent(self) -> int:
        """Exponent of a finite group (1 for the zero group)."""
        if not self.is_finite:
            raise InputError("Exponent of an infinite abelian group is undefined")
        return self.torsion[-1] if self.torsion else 1

    def p_part(self, p: int) -> "AbelianGroupPresentation":
        """The p-primary torsion subgroup."""
        orders = []
        for d in self.torsion:
            power = 1
            while d % p == 0:
                d //= p
                power *= p
            orders.append(power)
        return AbelianGroupPresentation.from_orders(orders)

    def direct_sum(self, other: "AbelianGroupPresentation") -> "AbelianGroupPresentation":
        """Direct sum with another presentation."""
        return AbelianGroupPresentation.from_orders(
            list(self.torsion) + list(other.torsion),
            free_rank=self.free_rank + other.free_rank,
        )

    def tensor(self, other: "AbelianGroupPresentation") -> "AbelianGroupPresentation":
        """Tensor product over Z by the gcd formula on cyclic summands."""
        orders = [gcd(a, b) for a in self.torsion for b in other.torsion]
        orders += list(self.torsion) * other.free_rank
        orders += list(other.torsion) * self.free_rank
        return AbelianGroupPresentation.from_orders(orders, free_rank=self.free_rank * other.free_rank)

    def exterior_square(self) -> "AbelianGroupPresentation":
        """Second exterior power of a finite group: the sum of gcd(di, dj) over i < j."""
        if not self.is_finite:
            raise InputError("Exterior square is only supported for finite abelian groups")
        factors = self.torsion
        return AbelianGroupPresentation.from_orders(
            gcd(factors[i], factors[j]) for i in range(len(factors)) for j in range(i + 1, len(factors))
        )

    def to_dict(self) -> dict:
        """JSON-friendly representation."""
        return {"free_rank": self.free_rank, "torsion": list(self.torsion), "description": str(self)}

    def __str__(self) -> str:
        parts = [f"C{d}" for d in self.torsion] + ["Z"] * self.free_rank
        return " x ".join(parts) if parts else "trivial"


def exterior_square(group: AbelianGroupPresentation) -> AbelianGroupPresentation:
    """Closed-form exterior square, the oracle for H2 of an abelian group."""
    return group.exterior_square()
