"""
Truncated models of the coefficient rings R with a Frobenius lift F.

Supported kinds:

* ``Zp``: Z/p^N with F = id.
* ``Witt``: W(F_q) mod p^N for q = p^f, modelled as Z/p^N[x]/(m(x)) for the
  first monic irreducible m over F_p in digit order; F is the lift of
  x -> x^p, found once by Newton iteration.
* ``PowerSeries``: W[[t]] mod (p^N, t^(D+1)), F(t) = t^p.
* ``InverseVar``: W<<t^-1>> in degrees -D..0, F(t) = t^p.
* ``Laurent``: W{{t}} in degrees -D..D, F(t) = t^p.

Elements are coordinate tuples over Z/p^N in the model's finite basis
(index ``(k - low) * f + b`` for t^k x^b); ``RingElement`` wraps them
with operators. Products leaving the degree window are dropped, which is
exact for Zp, Witt, PowerSeries and InverseVar (quotients by ideals) and a
truncation for Laurent.
"""

import random
from dataclasses import dataclass, replace
from math import floor, log
from typing import Any, Optional, Sequence

from sympy import Poly, primefactors, symbols, isprime

from ..errors import InputError, PrecisionError, VerificationError
from .abelian import AbelianGroupPresentation
from .smith import LocalEliminator, p_valuation

RING_KINDS = ("Zp", "Witt", "PowerSeries", "InverseVar", "Laurent")
_X = symbols("x")


@dataclass(frozen=True)
class RingDescriptor:
    """Kind, prime, precision N, Witt degree f and window D of a ring model."""
    kind: str
    p: int
    N: int
    f: int = 1
    D: int = 0

    def __post_init__(self):
        if self.kind not in RING_KINDS:
            raise InputError(f"Unknown ring kind '{self.kind}' (expected one of {', '.join(RING_KINDS)})")
        if not isprime(self.p):
            raise InputError(f"Ring prime must be prime, got {self.p}")
        if self.N < 1:
            raise InputError(f"Precision N must be >= 1, got {self.N}")
        if self.f < 1:
            raise InputError(f"Witt degree f must be >= 1, got {self.f}")
        if self.kind == "Zp" and self.f != 1:
            raise InputError("Zp model has f = 1; use kind Witt for unramified extensions")
        if self.kind in ("PowerSeries", "InverseVar", "Laurent") and self.D < 1:
            raise InputError(f"Series window D must be >= 1 for {self.kind}, got {self.D}")

    @classmethod
    def from_dict(cls, data: dict) -> "RingDescriptor":
        """Build from the JSON descriptor {"kind", "p", "N", "f", "D"}."""
        try:
            return cls(str(data["kind"]), int(data["p"]), int(data["N"]), int(data.get("f", 1)), int(data.get("D", 0)))
        except KeyError as ex:
            raise InputError(f"Ring descriptor is missing {ex}") from ex
        except (TypeError, ValueError) as ex:
            raise InputError(f"Malformed ring descriptor: {ex}") from ex

    def to_dict(self) -> dict:
        """JSON-friendly representation."""
        return {"kind": self.kind, "p": self.p, "N": self.N, "f": self.f, "D": self.D}

    def with_precision(self, n: int) -> "RingDescriptor":
        """Same model at precision n."""
        return replace(self, N=n)

    def with_window(self, d: int) -> "RingDescriptor":
        """Same model with window d."""
        return replace(self, D=d)

    def base(self) -> "RingDescriptor":
        """The Witt (or Zp) base of a series model."""
        return RingDescriptor("Zp" if self.f == 1 else "Witt", self.p, self.N, self.f)

    def build(self) -> "RingModel":
        """Instantiate the model."""
        return build_ring(self)

    def __str__(self) -> str:
        extra = f", f={self.f}" if self.f != 1 else ""
        window = f", D={self.D}" if self.kind in ("PowerSeries", "InverseVar", "Laurent") else ""
        return f"{self.kind}(p={self.p}, N={self.N}{extra}{window})"


class RingModel:
    """Common arithmetic on coordinate tuples over Z/p^N."""

    descriptor: RingDescriptor
    dim: int

    @property
    def p(self) -> int:
        """The prime."""
        return self.descriptor.p

    @property
    def precision(self) -> int:
        """The p-adic precision N."""
        return self.descriptor.N

    @property
    def modulus(self) -> int:
        """p^N."""
        return self.descriptor.p ** self.descriptor.N

    @property
    def is_exact(self) -> bool:
        """Whether products are exact in a quotient ring (not window truncations)."""
        return True

    def zero(self) -> tuple[int, ...]:
        """Additive identity."""
        return (0,) * self.dim

    def one(self) -> tuple[int, ...]:
        """Multiplicative identity."""
        return self.from_int(1)

    def from_int(self, value: int) -> tuple[int, ...]:
        """Image of an integer."""
        coords = [0] * self.dim
        coords[self.constant_index] = value % self.modulus
        return tuple(coords)

    @property
    def constant_index(self) -> int:
        """Coordinate index of the constant 1."""
        return 0

    def reduce(self, a: Sequence[int]) -> tuple[int, ...]:
        """Coordinates reduced mod p^N."""
        m = self.modulus
        return tuple(x % m for x in a)

    def add(self, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
        """a + b."""
        m = self.modulus
        return tuple((x + y) % m for x, y in zip(a, b))

    def sub(self, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
        """a - b."""
        m = self.modulus
        return tuple((x - y) % m for x, y in zip(a, b))

    def neg(self, a: Sequence[int]) -> tuple[int, ...]:
        """-a."""
        m = self.modulus
        return tuple(-x % m for x in a)

    def scale(self, a: Sequence[int], n: int) -> tuple[int, ...]:
        """n * a for an integer n."""
        m = self.modulus
        return tuple(x * n % m for x in a)

    def is_zero(self, a: Sequence[int]) -> bool:
        """True for the zero element."""
        return not any(x % self.modulus for x in a)

    def valuation(self, a: Sequence[int]) -> int:
        """Minimal p-adic valuation of the coordinates (N for zero)."""
        return min((p_valuation(x % self.modulus, self.p, self.precision) for x in a), default=self.precision)

    def mul(self, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
        """a * b."""
        raise NotImplementedError

    def frobenius(self, a: Sequence[int]) -> tuple[int, ...]:
        """F(a)."""
        raise NotImplementedError

    def frobenius_image(self, index: int) -> Optional[dict[int, int]]:
        """
        F of a basis vector for coinvariant relations.

        Returns None when the image leaves a window that models a
        p-adically restricted ring (the relation is not imposed).
        """
        image = self.frobenius(tuple(int(i == index) for i in range(self.dim)))
        return {i: v for i, v in enumerate(image) if v}

    def power(self, a: Sequence[int], n: int) -> tuple[int, ...]:
        """a^n for n >= 0."""
        if n < 0:
            return self.power(self.inverse(a), -n)
        result, base = self.one(), tuple(a)
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def is_unit(self, a: Sequence[int]) -> bool:
        """Whether a is invertible."""
        raise NotImplementedError

    def inverse(self, a: Sequence[int]) -> tuple[int, ...]:
        """a^-1 by Newton iteration from a residue-level inverse."""
        if not self.is_unit(a):
            raise InputError("Element is not a unit")
        v = self._approximate_inverse(a)
        one = self.one()
        two = self.from_int(2)
        for _ in range(4 * max(1, self.precision.bit_length() + self.dim.bit_length()) + 4):
            if self.mul(a, v) == one:
                return v
            v = self.mul(v, self.sub(two, self.mul(a, v)))
        raise VerificationError("Newton inversion did not converge")

    def _approximate_inverse(self, a: Sequence[int]) -> tuple[int, ...]:
        raise NotImplementedError

    def random_element(self, rng: random.Random) -> tuple[int, ...]:
        """Uniform random element."""
        return tuple(rng.randrange(self.modulus) for _ in range(self.dim))

    def random_unit(self, rng: random.Random) -> tuple[int, ...]:
        """Random unit."""
        while True:
            a = self.random_element(rng)
            if self.is_unit(a):
                return a

    def generators(self) -> list[tuple[int, ...]]:
        """Ring generators on which F(a) = a^p mod p is checked."""
        raise NotImplementedError

    def frobenius_matrix(self) -> list[list[int]]:
        """Matrix of F on the basis: entry [i][j] is coordinate i of F(e_j)."""
        columns = [self.frobenius(tuple(int(i == j) for i in range(self.dim))) for j in range(self.dim)]
        return [[columns[j][i] for j in range(self.dim)] for i in range(self.dim)]

    def element(self, coords: Sequence[int]) -> "RingElement":
        """Wrap coordinates."""
        return RingElement(self, self.reduce(coords))

    def at_precision(self, n: int) -> "RingModel":
        """The same model at another precision."""
        return build_ring(self.descriptor.with_precision(n))

    def lift(self, a: Sequence[int], other: "RingModel") -> tuple[int, ...]:
        """Coordinates of a in another precision of the same model (representatives kept)."""
        return other.reduce(a)

    def basis_label(self, index: int) -> str:
        """Human-readable name of a basis vector."""
        return f"e{index}"


def _first_irreducible(p: int, f: int) -> tuple[int, ...]:
    """Coefficients c_0..c_{f-1} of the first monic irreducible x^f + ... over F_p in digit order."""
    for t in range(p ** f):
        coeffs = [(t // p ** i) % p for i in range(f)]
        poly = Poly([1] + list(reversed(coeffs)), _X, modulus=p)
        if poly.is_irreducible:
            return tuple(coeffs)
    raise InputError(f"No irreducible polynomial of degree {f} over F_{p}")


class WittModel(RingModel):
    """W(F_q) mod p^N as Z/p^N[x]/(m(x)); Zp is the case f = 1."""

    def __init__(self, descriptor: RingDescriptor):
        self.descriptor = descriptor
        self.dim = descriptor.f
        self.minimal_polynomial = _first_irreducible(descriptor.p, descriptor.f) if descriptor.f > 1 else (0,)
        self._frobenius_x = self._lift_frobenius() if descriptor.f > 1 else None

    @property
    def f(self) -> int:
        """Residue degree."""
        return self.descriptor.f

    @property
    def residue_size(self) -> int:
        """q = p^f."""
        return self.p ** self.f

    def mul(self, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
        f, m = self.f, self.modulus
        if f == 1:
            return ((a[0] * b[0]) % m,)
        product = [0] * (2 * f - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        product[i + j] += x * y
        for d in range(2 * f - 2, f - 1, -1):
            c = product[d]
            if c:
                for i, mi in enumerate(self.minimal_polynomial):
                    product[d - f + i] -= c * mi
        return tuple(x % m for x in product[:f])

    def _evaluate_minimal(self, y: Sequence[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """m(y) and m'(y) by Horner."""
        f = self.f
        coeffs = list(self.minimal_polynomial) + [1]
        value = self.zero()
        derivative = self.zero()
        for i in range(f, -1, -1):
            derivative = self.add(self.mul(derivative, y), value)
            value = self.add(self.mul(value, y), self.from_int(coeffs[i]))
        return value, derivative

    def _lift_frobenius(self) -> tuple[int, ...]:
        x = tuple(int(i == 1) for i in range(self.f))
        y = self.power(x, self.p)
        for _ in range(2 * self.precision.bit_length() + 8):
            value, derivative = self._evaluate_minimal(y)
            if self.is_zero(value):
                return y
            y = self.sub(y, self.mul(value, self.inverse(derivative)))
        raise VerificationError("Frobenius lift did not converge")

    def frobenius(self, a: Sequence[int]) -> tuple[int, ...]:
        if self.f == 1:
            return self.reduce(a)
        result = self.zero()
        power = self.one()
        for coefficient in a:
            if coefficient:
                result = self.add(result, self.scale(power, coefficient))
            power = self.mul(power, self._frobenius_x)
        return result

    def is_unit(self, a: Sequence[int]) -> bool:
        return any(x % self.p for x in a)

    def _approximate_inverse(self, a: Sequence[int]) -> tuple[int, ...]:
        p = self.p
        if self.f == 1:
            return (pow(a[0] % self.modulus, -1, self.modulus),)
        residue = Poly(list(reversed([x % p for x in a])), _X, modulus=p)
        minimal = Poly([1] + list(reversed(self.minimal_polynomial)), _X, modulus=p)
        inverse = residue.invert(minimal)
        coeffs = [int(c) % p for c in reversed(inverse.all_coeffs())]
        coeffs += [0] * (self.f - len(coeffs))
        return tuple(coeffs[:self.f])

    def generators(self) -> list[tuple[int, ...]]:
        return [tuple(int(i == j) for i in range(self.f)) for j in range(self.f)]

    def basis_label(self, index: int) -> str:
        if index == 0:
            return "1"
        return "x" if index == 1 else f"x^{index}"


class SeriesModel(RingModel):
    """Single-variable series over a Witt base in a degree window."""

    def __init__(self, descriptor: RingDescriptor):
        self.descriptor = descriptor
        self.witt = WittModel(descriptor.base())
        d = descriptor.D
        self.low, self.high = {"PowerSeries": (0, d), "InverseVar": (-d, 0), "Laurent": (-d, d)}[descriptor.kind]
        self.f = descriptor.f
        self.dim = (self.high - self.low + 1) * self.f

    @property
    def is_exact(self) -> bool:
        return self.descriptor.kind != "Laurent"

    @property
    def constant_index(self) -> int:
        return -self.low * self.f

    def _coefficients(self, a: Sequence[int]) -> dict[int, tuple[int, ...]]:
        f = self.f
        out = {}
        for k in range(self.low, self.high + 1):
            start = (k - self.low) * f
            block = tuple(a[start:start + f])
            if any(block):
                out[k] = block
        return out

    def _assemble(self, coefficients: dict[int, Sequence[int]]) -> tuple[int, ...]:
        coords = [0] * self.dim
        f = self.f
        for k, block in coefficients.items():
            if self.low <= k <= self.high:
                start = (k - self.low) * f
                coords[start:start + f] = block
        return self.reduce(coords)

    def monomial(self, k: int, block: Optional[Sequence[int]] = None) -> tuple[int, ...]:
        """t^k times a base element (1 by default)."""
        if not self.low <= k <= self.high:
            raise InputError(f"Degree {k} outside the window [{self.low}, {self.high}]")
        return self._assemble({k: block or self.witt.one()})

    def mul(self, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
        left, right = self._coefficients(a), self._coefficients(b)
        out: dict[int, tuple[int, ...]] = {}
        for i, x in left.items():
            for j, y in right.items():
                k = i + j
                if self.low <= k <= self.high:
                    term = self.witt.mul(x, y)
                    out[k] = self.witt.add(out.get(k, self.witt.zero()), term)
        return self._assemble(out)

    def frobenius(self, a: Sequence[int]) -> tuple[int, ...]:
        out = {}
        for k, block in self._coefficients(a).items():
            target = self.p * k
            if self.low <= target <= self.high:
                out[target] = self.witt.frobenius(block)
        return self._assemble(out)

    def frobenius_image(self, index: int) -> Optional[dict[int, int]]:
        k = index // self.f + self.low
        if k < 0 and self.p * k < self.low:
            return None
        return super().frobenius_image(index)

    def is_unit(self, a: Sequence[int]) -> bool:
        if self.descriptor.kind == "Laurent":
            return False
        return self.witt.is_unit(self._coefficients(a).get(0, self.witt.zero()))

    def inverse(self, a: Sequence[int]) -> tuple[int, ...]:
        if self.descriptor.kind == "Laurent":
            raise InputError("Units are not modelled in the truncated Laurent window")
        return super().inverse(a)

    def random_unit(self, rng: random.Random) -> tuple[int, ...]:
        if self.descriptor.kind == "Laurent":
            raise InputError("Units are not modelled in the truncated Laurent window")
        return super().random_unit(rng)

    def _approximate_inverse(self, a: Sequence[int]) -> tuple[int, ...]:
        constant = self._coefficients(a).get(0, self.witt.zero())
        return self._assemble({0: self.witt.inverse(constant)})

    def generators(self) -> list[tuple[int, ...]]:
        gens = [self._assemble({0: g}) for g in self.witt.generators()]
        if self.high >= 1:
            gens.append(self.monomial(1))
        if self.low <= -1:
            gens.append(self.monomial(-1))
        return gens

    def basis_label(self, index: int) -> str:
        k = index // self.f + self.low
        base = self.witt.basis_label(index % self.f)
        if k == 0:
            return base
        power = "t" if k == 1 else f"t^{k}"
        return power if base == "1" else f"{power}*{base}"


def build_ring(descriptor: RingDescriptor) -> RingModel:
    """Instantiate the model named by a descriptor."""
    if descriptor.kind in ("Zp", "Witt"):
        return WittModel(descriptor)
    return SeriesModel(descriptor)


@dataclass(frozen=True, eq=False)
class RingElement:
    """An element of a ring model with arithmetic operators."""
    model: RingModel
    coords: tuple[int, ...]

    def _check(self, other: "RingElement") -> None:
        if other.model.descriptor != self.model.descriptor:
            raise InputError("Ring elements belong to different models")

    def __add__(self, other: "RingElement") -> "RingElement":
        self._check(other)
        return RingElement(self.model, self.model.add(self.coords, other.coords))

    def __sub__(self, other: "RingElement") -> "RingElement":
        self._check(other)
        return RingElement(self.model, self.model.sub(self.coords, other.coords))

    def __neg__(self) -> "RingElement":
        return RingElement(self.model, self.model.neg(self.coords))

    def __mul__(self, other: Any) -> "RingElement":
        if isinstance(other, int):
            return RingElement(self.model, self.model.scale(self.coords, other))
        if not isinstance(other, RingElement):
            return NotImplemented
        self._check(other)
        return RingElement(self.model, self.model.mul(self.coords, other.coords))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "RingElement":
        return RingElement(self.model, self.model.power(self.coords, n))

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, RingElement) and other.model.descriptor == self.model.descriptor
                and self.model.reduce(other.coords) == self.model.reduce(self.coords))

    def __hash__(self) -> int:
        return hash((self.model.descriptor, self.coords))

    def inverse(self) -> "RingElement":
        """Multiplicative inverse."""
        return RingElement(self.model, self.model.inverse(self.coords))

    def frobenius(self) -> "RingElement":
        """F(self)."""
        return RingElement(self.model, self.model.frobenius(self.coords))

    @property
    def is_unit(self) -> bool:
        """Whether invertible."""
        return self.model.is_unit(self.coords)

    @property
    def is_zero(self) -> bool:
        """Whether zero."""
        return self.model.is_zero(self.coords)

    def valuation(self) -> int:
        """Minimal coordinate valuation."""
        return self.model.valuation(self.coords)

    def __str__(self) -> str:
        terms = [f"{c}*{self.model.basis_label(i)}" for i, c in enumerate(self.coords) if c]
        return " + ".join(terms) if terms else "0"


def ring_ops(model: RingModel):
    """The (add, mul, unit_inverse) triple of a model."""
    return model.add, model.mul, model.inverse


def frobenius_apply(a: RingElement) -> RingElement:
    """F(a); F(a) = a^p mod p is asserted on exact models."""
    image = a.frobenius()
    if a.model.is_exact:
        check = a ** a.model.p
        p = a.model.p
        if any((x - y) % p for x, y in zip(image.coords, check.coords)):
            raise VerificationError(f"Frobenius congruence F(a) = a^p mod p fails in {a.model.descriptor}")
    return image


# ---------------------------------------------------------------------------
# Coinvariants
# ---------------------------------------------------------------------------

@dataclass(eq=False)
class Coinvariants:
    """R/(1-F)R mod p^N with its projection."""
    model: RingModel
    group: AbelianGroupPresentation
    eliminator: LocalEliminator
    generators: list[tuple[int, int]]

    @property
    def orders(self) -> list[int]:
        """Orders of the cyclic generators."""
        return [self.model.p ** s for _, s in self.generators]

    def project(self, coords: Sequence[int]) -> tuple[int, ...]:
        """Coordinates of the image of an element."""
        vector = {i: v for i, v in enumerate(coords) if v}
        return tuple(self.eliminator.coordinates([vector])[0])

    def lift(self, j: int) -> tuple[int, ...]:
        """A ring element mapping to the j-th generator."""
        row, _ = self.generators[j]
        vector = self.eliminator.lift(row)
        return tuple(vector.get(i, 0) for i in range(self.model.dim))


def coinvariants(model: RingModel) -> Coinvariants:
    """Cokernel of 1 - F on the model's basis over Z/p^N."""
    eliminator = LocalEliminator(model.p, model.precision, model.dim)
    col = 0
    for index in range(model.dim):
        image = model.frobenius_image(index)
        if image is None:
            continue
        column = {index: 1}
        for i, v in image.items():
            column[i] = column.get(i, 0) - v
        eliminator.add_column(col, column)
        col += 1
    generators = eliminator.generator_rows()
    group = AbelianGroupPresentation.from_orders(model.p ** s for _, s in generators)
    return Coinvariants(model, group, eliminator, generators)


def residue_coinvariants(model: RingModel) -> int:
    """F_p-dimension of R/((1-F)R + pR)."""
    return len(coinvariants(model.at_precision(1)).generators)


def tensor_with_finite(group: AbelianGroupPresentation, model: RingModel) -> AbelianGroupPresentation:
    """
    M (x) R/(1-F)R for a finite p-group M.

    Raises:
        PrecisionError: If p^N does not exceed the exponent of M
    """
    if not group.is_finite:
        raise InputError("Tensor with coinvariants needs a finite group")
    if group.is_trivial:
        return AbelianGroupPresentation.trivial()
    if group.order != group.p_part(model.p).order:
        raise InputError(f"Group {group} is not a {model.p}-group")
    if p_valuation(group.exponent, model.p) > model.precision:
        raise PrecisionError(
            f"Precision N={model.precision} cannot resolve a group of exponent {group.exponent}")
    return group.tensor(coinvariants(model).group)


# ---------------------------------------------------------------------------
# Comparison of coinvariants
# ---------------------------------------------------------------------------

PAIRS = {
    "identity": "Identity map R -> R",
    "W-Wt": "W -> W[[t]]",
    "Winf-Laurent": "W<<t^-1>> -> W{{t}}",
    "Wt-Laurent": "W[[t]] -> W{{t}}",
}

EXPECTED_VERDICTS = {
    "identity": "iso",
    "W-Wt": "iso",
    "Winf-Laurent": "iso",
    "Wt-Laurent": "injective-torsion-free-cokernel",
}

CONSEQUENCES = {
    "iso": "SK1(R[G]) -> SK1(S[G]) is an isomorphism for every finite G",
    "surjective-only": "SK1(R[G]) -> SK1(S[G]) is surjective for every finite G",
    "injective-torsion-free-cokernel":
        "SK1(R[G]) -> SK1(S[G]) is injective for every finite G (torsion-free cokernel survives tensoring)",
    "injective-only": "no conclusion: the cokernel has torsion",
    "none": "no conclusion",
}


def pair_models(pair: str, p: int, n: int, f: int, d: int) -> tuple[RingDescriptor, RingDescriptor]:
    """Source and target descriptors of a named comparison pair."""
    base = "Zp" if f == 1 else "Witt"
    if pair == "identity":
        desc = RingDescriptor(base, p, n, f)
        return desc, desc
    if pair == "W-Wt":
        return RingDescriptor(base, p, n, f), RingDescriptor("PowerSeries", p, n, f, d)
    if pair == "Winf-Laurent":
        return RingDescriptor("InverseVar", p, n, f, d), RingDescriptor("Laurent", p, n, f, d)
    if pair == "Wt-Laurent":
        return RingDescriptor("PowerSeries", p, n, f, d), RingDescriptor("Laurent", p, n, f, d)
    raise InputError(f"Unknown ring pair '{pair}' (expected one of {', '.join(PAIRS)})")


def natural_embedding(source: RingModel, target: RingModel) -> list[tuple[int, ...]]:
    """Images of the source basis under the inclusion of coefficient rings."""
    if source.descriptor.f != target.descriptor.f or source.p != target.p:
        raise InputError("Embedding needs the same prime and Witt base")
    f = source.descriptor.f
    low_s = getattr(source, "low", 0)
    images = []
    for index in range(source.dim):
        k = index // f + low_s
        b = index % f
        low_t = getattr(target, "low", 0)
        high_t = getattr(target, "high", 0)
        if not low_t <= k <= high_t:
            raise InputError(f"Degree {k} of {source.descriptor} does not fit in {target.descriptor}")
        coords = [0] * target.dim
        coords[(k - low_t) * f + b] = 1
        images.append(tuple(coords))
    return images


def _apply_linear(images: list[tuple[int, ...]], coords: Sequence[int], target: RingModel) -> tuple[int, ...]:
    out = [0] * target.dim
    for c, image in zip(coords, images):
        if c:
            for i, v in enumerate(image):
                out[i] += c * v
    return target.reduce(out)


def _check_commutes(source: RingModel, target: RingModel, images: list[tuple[int, ...]]) -> None:
    for index in range(source.dim):
        left = source.frobenius_image(index)
        if left is None:
            continue
        left_coords = [0] * source.dim
        for i, v in left.items():
            left_coords[i] = v
        mapped = _apply_linear(images, left_coords, target)
        image_vector = {i: v for i, v in enumerate(images[index]) if v}
        right = target.zero()
        defined = True
        for i, v in image_vector.items():
            term = target.frobenius_image(i)
            if term is None:
                defined = False
                break
            for j, w in term.items():
                right = right[:j] + ((right[j] + v * w) % target.modulus,) + right[j + 1:]
        if defined and mapped != right:
            raise InputError("Embedding does not commute with the Frobenius lifts")


@dataclass
class CoinvariantComparison:
    """Classification of the map R/(1-F)R -> S/(1-F)S."""
    source: RingDescriptor
    target: RingDescriptor
    source_group: AbelianGroupPresentation
    target_group: AbelianGroupPresentation
    matrix: list[tuple[int, ...]]
    kernel_order: int
    cokernel: AbelianGroupPresentation
    verdict: str

    @property
    def consequence(self) -> str:
        """The SK1 statement implied by the verdict."""
        return CONSEQUENCES[self.verdict]

    def to_dict(self) -> dict:
        """JSON-friendly summary."""
        return {
            "source": self.source.to_dict(),
            "target": self.target.to_dict(),
            "source_coinvariants": self.source_group.to_dict(),
            "target_coinvariants": self.target_group.to_dict(),
            "kernel_order": self.kernel_order,
            "cokernel": self.cokernel.to_dict(),
            "verdict": self.verdict,
            "consequence": self.consequence,
        }


def compare_coinvariants(source: RingModel, target: RingModel,
                         embedding: Optional[list[tuple[int, ...]]] = None) -> CoinvariantComparison:
    """
    Classify the map on coinvariants induced by a Frobenius-compatible embedding.

    Raises:
        InputError: If the embedding does not commute with F
    """
    images = embedding if embedding is not None else natural_embedding(source, target)
    _check_commutes(source, target, images)
    co_source, co_target = coinvariants(source), coinvariants(target)
    p = source.p
    columns = []
    for j, order in enumerate(co_source.orders):
        image = _apply_linear(images, co_source.lift(j), target)
        column = co_target.project(image)
        if any((order * c) % o for c, o in zip(column, co_target.orders)):
            raise VerificationError("Induced map on coinvariants is not well defined")
        columns.append(column)
    cokernel_orders = _cokernel_orders(p, co_target.orders, columns)
    cokernel = AbelianGroupPresentation.from_orders(cokernel_orders)
    image_order = co_target.group.order // cokernel.order
    kernel_order = co_source.group.order // image_order
    injective = kernel_order == 1
    surjective = cokernel.is_trivial
    if injective and surjective:
        verdict = "iso"
    elif surjective:
        verdict = "surjective-only"
    elif injective and all(o == source.modulus for o in cokernel.torsion) and cokernel.free_rank == 0:
        verdict = "injective-torsion-free-cokernel"
    elif injective:
        verdict = "injective-only"
    else:
        verdict = "none"
    return CoinvariantComparison(source.descriptor, target.descriptor, co_source.group, co_target.group,
                                 columns, kernel_order, cokernel, verdict)


def _cokernel_orders(p: int, orders: list[int], columns: list[tuple[int, ...]]) -> list[int]:
    if not orders:
        return []
    top = max(p_valuation(o, p) for o in orders)
    eliminator = LocalEliminator(p, top + 1, len(orders))
    col = 0
    for i, o in enumerate(orders):
        eliminator.add_column(col, {i: o})
        col += 1
    for column in columns:
        entries = {i: v for i, v in enumerate(column) if v}
        if entries:
            eliminator.add_column(col, entries)
            col += 1
    return eliminator.cokernel_factors()


@dataclass
class PairComparison:
    """A named pair compared at windows D and 2D."""
    pair: str
    description: str
    at_window: CoinvariantComparison
    at_double_window: CoinvariantComparison
    expected: str

    @property
    def window_stable(self) -> bool:
        """Same verdict at D and 2D."""
        return self.at_window.verdict == self.at_double_window.verdict

    def to_dict(self) -> dict:
        """JSON-friendly summary."""
        return {
            "pair": self.pair,
            "description": self.description,
            "verdict": self.at_window.verdict,
            "expected": self.expected,
            "window_stable": self.window_stable,
            "consequence": self.at_window.consequence,
            "window": self.at_window.to_dict(),
            "double_window": self.at_double_window.to_dict(),
        }


def compare_pair(pair: str, p: int, n: int, f: int = 1, d: int = 4) -> PairComparison:
    """Compare a named pair at window d and 2d."""
    results = []
    for window in (d, 2 * d):
        source, target = pair_models(pair, p, n, f, window)
        results.append(compare_coinvariants(build_ring(source), build_ring(target)))
    return PairComparison(pair, PAIRS[pair], results[0], results[1], EXPECTED_VERDICTS[pair])


# ---------------------------------------------------------------------------
# Frobenius-fixed units and the scalar logarithm
# ---------------------------------------------------------------------------

@dataclass
class FixedUnits:
    """The root-of-unity group found inside M(R,F) = {u : F(u) = u^p}."""
    order: int
    generator: tuple[int, ...]
    elements: list[tuple[int, ...]]

    def to_dict(self, model: RingModel) -> dict:
        """JSON-friendly summary."""
        return {"order": self.order, "generator": str(model.element(self.generator))}


def _residue_generator(model: WittModel) -> tuple[int, ...]:
    """An element whose residue generates F_q^x."""
    q = model.residue_size
    if q == 2:
        return model.one()
    residue = model.at_precision(1)
    factors = primefactors(q - 1)
    for t in range(1, q):
        a = tuple((t // model.p ** i) % model.p for i in range(model.f))
        if all(residue.power(a, (q - 1) // r) != residue.one() for r in factors):
            return a
    raise VerificationError(f"No generator of F_{q}^x found")


def frobenius_fixed_units(model: RingModel) -> FixedUnits:
    """
    Teichmueller roots of unity solving F(u) = u^p, found by iterating u -> u^q.

    Raises:
        InputError: For series models
        VerificationError: If the lifted generator fails F(u) = u^p or lies in 1 + pR
    """
    if not isinstance(model, WittModel):
        raise InputError(f"Frobenius-fixed units are only modelled for Zp and Witt, not {model.descriptor.kind}")
    q = model.residue_size
    u = _residue_generator(model)
    for _ in range(model.precision + 1):
        u = model.power(u, q)
    if model.frobenius(u) != model.power(u, model.p):
        raise VerificationError("Teichmueller lift does not satisfy F(u) = u^p")
    if q > 2 and all(((x - y) % model.p) == 0 for x, y in zip(u, model.one())):
        raise VerificationError("Nontrivial fixed unit lies in 1 + pR")
    elements = [model.one()]
    current = u
    while current != model.one():
        elements.append(current)
        current = model.mul(current, u)
    return FixedUnits(q - 1, u, elements)


def _log_budget(p: int, n: int, base_valuation: int = 1) -> tuple[int, int]:
    """Number of terms K and the denominator exponent sigma for log on 1 + p^v R mod p^n."""
    k = 1
    last = 1
    while k <= 4 * n + 8:
        if k * base_valuation - p_valuation(k, p) < n:
            last = k
        k += 1
    sigma = floor(log(last, p) + 1e-9) if last > 1 else 0
    return last, sigma


def log_one_plus_scalar(model: RingModel, y: Sequence[int]) -> tuple[int, ...]:
    """log(1 + y) mod p^N for y in pR."""
    if model.valuation(y) < 1:
        raise InputError("Scalar logarithm needs an argument in 1 + pR")
    p, n = model.p, model.precision
    terms, sigma = _log_budget(p, n)
    work = model.at_precision(n + sigma)
    y = model.lift(y, work)
    total = work.zero()
    power = work.one()
    for k in range(1, terms + 1):
        power = work.mul(power, y)
        v = p_valuation(k, p)
        unit = k // p ** v
        coefficient = p ** (sigma - v) * pow(unit, -1, work.modulus)
        if k % 2 == 0:
            coefficient = -coefficient
        total = work.add(total, work.scale(power, coefficient))
    scale = p ** sigma
    if any(x % scale for x in total):
        raise VerificationError("Scalar logarithm is not integral")
    return model.reduce(tuple(x // scale for x in total))


def scalar_log_L(u: RingElement) -> RingElement:
    """
    L_R(u) = log(u^p / F(u)); the result is divisible by p.

    Raises:
        InputError: If u is not a unit
        VerificationError: If the result is not divisible by p
    """
    model = u.model
    if not u.is_unit:
        raise InputError("L_R needs a unit")
    ratio = model.mul(model.power(u.coords, model.p), model.inverse(model.frobenius(u.coords)))
    value = log_one_plus_scalar(model, model.sub(ratio, model.one()))
    if any(x % model.p for x in value):
        raise VerificationError("L_R(u) is not divisible by p")
    return RingElement(model, value)


def log_translation_defect(u: RingElement, m: RingElement) -> RingElement:
    """
    (1/p)L_R(u) - (1/p)L_R(u m) mod p^N, the shift of (1/p)L_R under multiplication by m.

    Since L_R is a homomorphism this equals -(1/p)L_R(m); it vanishes for m in M(R,F)
    and is nonzero for units off it such as m = 1 + p in Zp with p odd.

    Both arguments live at precision N + 1 (dividing by p costs one digit);
    the result is returned at precision N.
    """
    lifted = u.model
    if m.model.descriptor != lifted.descriptor:
        raise InputError("u and m must belong to the same model")
    if lifted.precision < 2:
        raise PrecisionError("log_translation_defect needs inputs at precision >= 2")
    model = lifted.at_precision(lifted.precision - 1)
    first = scalar_log_L(u)
    second = scalar_log_L(u * m)
    difference = lifted.sub(first.coords, second.coords)
    return RingElement(model, model.reduce(tuple(x // model.p for x in difference)))
