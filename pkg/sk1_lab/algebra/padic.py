"""
Truncated p-adic scalars written as p^valuation * unit.
"""

from dataclasses import dataclass
from math import factorial

from .smith import p_valuation


@dataclass(frozen=True)
class PAdicScalar:
    """p^valuation * unit with the unit known modulo p^precision; zero has unit 0."""
    p: int
    valuation: int
    unit: int
    precision: int

    def __post_init__(self):
        modulus = self.p ** self.precision
        unit = self.unit % modulus
        valuation = self.valuation
        if unit == 0:
            valuation = 0
        else:
            while unit % self.p == 0:
                unit //= self.p
                valuation += 1
        object.__setattr__(self, 'unit', unit)
        object.__setattr__(self, 'valuation', valuation)

    @classmethod
    def from_int(cls, value: int, p: int, precision: int) -> "PAdicScalar":
        """The integer value."""
        if value == 0:
            return cls(p, 0, 0, precision)
        v = p_valuation(value, p)
        return cls(p, v, value // p ** v, precision)

    @classmethod
    def reciprocal(cls, value: int, p: int, precision: int) -> "PAdicScalar":
        """1/value for a nonzero integer."""
        if value == 0:
            raise ZeroDivisionError("1/0 has no p-adic value")
        v = p_valuation(value, p)
        modulus = p ** precision
        return cls(p, -v, pow((value // p ** v) % modulus, -1, modulus), precision)

    @classmethod
    def inverse_factorial(cls, k: int, p: int, precision: int) -> "PAdicScalar":
        """1/k!."""
        return cls.reciprocal(factorial(k), p, precision)

    @property
    def is_zero(self) -> bool:
        """True for the canonical zero."""
        return self.unit == 0

    def __mul__(self, other: "PAdicScalar") -> "PAdicScalar":
        precision = min(self.precision, other.precision)
        return PAdicScalar(self.p, self.valuation + other.valuation, self.unit * other.unit, precision)

    def __neg__(self) -> "PAdicScalar":
        return PAdicScalar(self.p, self.valuation, -self.unit, self.precision)

    def scaled_integer(self, shift: int) -> int:
        """The integer p^shift * self reduced mod p^precision; requires valuation + shift >= 0."""
        exponent = self.valuation + shift
        if self.is_zero:
            return 0
        if exponent < 0:
            raise ValueError(f"p^{shift} * scalar is not integral (valuation {self.valuation})")
        return self.unit * self.p ** exponent

    def to_dict(self) -> dict:
        """JSON-friendly representation."""
        return {"valuation": self.valuation, "unit": self.unit, "precision": self.precision}
