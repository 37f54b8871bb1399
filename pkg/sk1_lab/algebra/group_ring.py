"""
Truncated group rings R[G] and the logarithmic toolkit on them.

An element is a sparse map group element -> coefficient (coordinates in
the ring model), together with a ``shift`` s meaning that the stored
element is p^s times the value. Logarithms carry a positive shift because
the terms x^k/k have bounded denominators; everything else is integral.
"""

import random
from dataclasses import dataclass
from typing import Callable, Mapping, Optional, Sequence

from sympy import GF
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.exceptions import DMNonInvertibleMatrixError

from ..errors import InputError, VerificationError
from .groups import FiniteGroup
from .padic import PAdicScalar
from .rings import RingElement, RingModel, scalar_log_L


def _ilog(k: int, p: int) -> int:
    """floor(log_p k) for k >= 1."""
    e = 0
    while k >= p:
        k //= p
        e += 1
    return e


def _factorial_valuation(k: int, p: int) -> int:
    total, q = 0, p
    while q <= k:
        total += k // q
        q *= p
    return total


class GroupRing:
    """R[G] for a finite group and a ring model at a fixed precision."""

    def __init__(self, group: FiniteGroup, model: RingModel):
        self.group = group
        self.model = model
        self._other_precisions: dict[int, "GroupRing"] = {model.precision: self}

    @property
    def p(self) -> int:
        """The prime."""
        return self.model.p

    @property
    def precision(self) -> int:
        """Coefficient precision N."""
        return self.model.precision

    @property
    def dim(self) -> int:
        """Rank of R_N over Z/p^N."""
        return self.model.dim

    def at_precision(self, n: int) -> "GroupRing":
        """The same group ring at precision n."""
        if n not in self._other_precisions:
            other = GroupRing(self.group, self.model.at_precision(n))
            other._other_precisions = self._other_precisions
            self._other_precisions[n] = other
        return self._other_precisions[n]

    def element(self, coeffs: Mapping[int, Sequence[int]], shift: int = 0) -> "GroupRingElement":
        """Build an element from {group element: coordinates}."""
        model = self.model
        clean = {}
        for g, c in coeffs.items():
            reduced = model.reduce(c)
            if any(reduced):
                clean[g] = reduced
        return GroupRingElement(self, clean, shift)

    def zero(self) -> "GroupRingElement":
        """0."""
        return GroupRingElement(self, {})

    def one(self) -> "GroupRingElement":
        """The identity element."""
        return self.basis(self.group.identity)

    def basis(self, g: int, coefficient: Optional[Sequence[int]] = None) -> "GroupRingElement":
        """r*g (r = 1 by default)."""
        return self.element({g: coefficient if coefficient is not None else self.model.one()})

    def from_integers(self, coeffs: Mapping[int, int]) -> "GroupRingElement":
        """Element with integer coefficients."""
        return self.element({g: self.model.from_int(v) for g, v in coeffs.items()})

    def lift(self, x: "GroupRingElement") -> "GroupRingElement":
        """Representatives of an element of another precision, read in this ring."""
        return self.element(x.coeffs, x.shift)

    def random_element(self, rng: random.Random, ideal: str = "all") -> "GroupRingElement":
        """
        Random element of R[G], I_G ("augmentation"), pR[G] ("p") or pI_G ("p-augmentation").
        """
        if ideal not in ("all", "augmentation", "p", "p-augmentation"):
            raise InputError(f"Unknown ideal '{ideal}'")
        model = self.model
        coeffs = {g: model.random_element(rng) for g in self.group.elements}
        if ideal in ("augmentation", "p-augmentation"):
            total = model.zero()
            for g in self.group.elements:
                if g != self.group.identity:
                    total = model.add(total, coeffs[g])
            coeffs[self.group.identity] = model.neg(total)
        x = self.element(coeffs)
        if ideal in ("p", "p-augmentation"):
            x = x * self.p
        return x

    def random_unit(self, rng: random.Random, radical: bool = True) -> "GroupRingElement":
        """
        Random unit; in 1 + J (J = I_G for p-groups, else pR[G]) when ``radical``.
        """
        if radical:
            ideal = "augmentation" if self.group.is_p_group(self.p) else "p"
            return self.one() + self.random_element(rng, ideal)
        for _ in range(256):
            u = self.random_element(rng)
            if is_unit(u):
                return u
        raise VerificationError("No random unit found")


@dataclass(frozen=True, eq=False)
class GroupRingElement:
    """p^-shift * sum coeffs[g] g with coefficients reduced mod p^N; no zero entries."""
    ring: GroupRing
    coeffs: Mapping[int, tuple[int, ...]]
    shift: int = 0

    def _check(self, other: "GroupRingElement") -> None:
        if other.ring is not self.ring and (other.ring.group is not self.ring.group
                                            or other.ring.model.descriptor != self.ring.model.descriptor):
            raise InputError("Group ring elements belong to different rings")
        if other.shift != self.shift:
            raise InputError("Group ring elements carry different denominators")

    def __add__(self, other: "GroupRingElement") -> "GroupRingElement":
        self._check(other)
        model = self.ring.model
        out = dict(self.coeffs)
        for g, c in other.coeffs.items():
            out[g] = model.add(out[g], c) if g in out else c
        return self.ring.element(out, self.shift)

    def __sub__(self, other: "GroupRingElement") -> "GroupRingElement":
        return self + (-other)

    def __neg__(self) -> "GroupRingElement":
        model = self.ring.model
        return GroupRingElement(self.ring, {g: model.neg(c) for g, c in self.coeffs.items()}, self.shift)

    def __mul__(self, other) -> "GroupRingElement":
        if isinstance(other, int):
            model = self.ring.model
            return self.ring.element({g: model.scale(c, other) for g, c in self.coeffs.items()}, self.shift)
        if isinstance(other, RingElement):
            model = self.ring.model
            return self.ring.element({g: model.mul(c, other.coords) for g, c in self.coeffs.items()}, self.shift)
        return gr_mul(self, other)

    def __rmul__(self, other) -> "GroupRingElement":
        if isinstance(other, int):
            return self * other
        if isinstance(other, RingElement):
            model = self.ring.model
            return self.ring.element({g: model.mul(other.coords, c) for g, c in self.coeffs.items()}, self.shift)
        return NotImplemented

    def __pow__(self, n: int) -> "GroupRingElement":
        if n < 0:
            return inverse(self) ** (-n)
        result, base = self.ring.one(), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        return (other.ring.group is self.ring.group and other.shift == self.shift
                and other.ring.model.descriptor == self.ring.model.descriptor
                and dict(other.coeffs) == dict(self.coeffs))

    __hash__ = None

    @property
    def is_zero(self) -> bool:
        """True for 0."""
        return not self.coeffs

    def coefficient(self, g: int) -> RingElement:
        """Coefficient of g (shift ignored)."""
        model = self.ring.model
        return RingElement(model, self.coeffs.get(g, model.zero()))

    def augmentation(self) -> RingElement:
        """Sum of the coefficients (shift ignored)."""
        model = self.ring.model
        total = model.zero()
        for c in self.coeffs.values():
            total = model.add(total, c)
        return RingElement(model, total)

    def valuation(self) -> int:
        """Minimal p-adic valuation of the value (precision - shift for 0)."""
        model = self.ring.model
        v = min((model.valuation(c) for c in self.coeffs.values()), default=model.precision)
        return v - self.shift

    def conjugate(self, h: int) -> "GroupRingElement":
        """h x h^-1."""
        group = self.ring.group
        return GroupRingElement(self.ring, {group.conjugate(g, h): c for g, c in self.coeffs.items()}, self.shift)

    def integral(self) -> "GroupRingElement":
        """
        The value as an integral element (shift 0), losing ``shift`` digits of precision.

        Raises:
            VerificationError: If the value is not integral
        """
        if not self.shift:
            return self
        scale = self.ring.p ** self.shift
        if any(x % scale for c in self.coeffs.values() for x in c):
            raise VerificationError("Element is not integral at this precision")
        target = self.ring.at_precision(self.ring.precision - self.shift)
        return target.element({g: tuple(x // scale for x in c) for g, c in self.coeffs.items()})

    def to_dict(self) -> dict:
        """JSON-friendly representation keyed by element names."""
        names = self.ring.group.names
        return {
            "shift": self.shift,
            "precision": self.ring.precision,
            "coefficients": {names[g]: list(c) for g, c in sorted(self.coeffs.items())},
        }

    def __str__(self) -> str:
        names = self.ring.group.names
        model = self.ring.model
        terms = []
        for g, c in sorted(self.coeffs.items()):
            r = str(RingElement(model, c))
            terms.append(f"({r})*{names[g]}")
        text = " + ".join(terms) if terms else "0"
        return f"p^-{self.shift}*[{text}]" if self.shift else text


@dataclass(frozen=True, eq=False)
class ClassSum:
    """An element of R[C_G]: one coefficient per conjugacy class, with the same shift convention."""
    ring: GroupRing
    values: tuple[tuple[int, ...], ...]
    shift: int = 0

    def __post_init__(self):
        if len(self.values) != self.ring.group.conjugacy.count:
            raise InputError("Class sum length does not match the number of classes")

    @classmethod
    def zero(cls, ring: GroupRing) -> "ClassSum":
        """0."""
        return cls(ring, tuple(ring.model.zero() for _ in range(ring.group.conjugacy.count)))

    @classmethod
    def of_class(cls, ring: GroupRing, class_index: int, coefficient: Optional[Sequence[int]] = None) -> "ClassSum":
        """r times a single class."""
        model = ring.model
        value = model.reduce(coefficient) if coefficient is not None else model.one()
        return cls(ring, tuple(value if k == class_index else model.zero()
                               for k in range(ring.group.conjugacy.count)))

    def _combine(self, other: "ClassSum", sign: int) -> "ClassSum":
        if other.shift != self.shift or len(other.values) != len(self.values):
            raise InputError("Class sums are not compatible")
        model = self.ring.model
        return ClassSum(self.ring, tuple(model.add(a, model.scale(b, sign))
                                         for a, b in zip(self.values, other.values)), self.shift)

    def __add__(self, other: "ClassSum") -> "ClassSum":
        return self._combine(other, 1)

    def __sub__(self, other: "ClassSum") -> "ClassSum":
        return self._combine(other, -1)

    def __mul__(self, n: int) -> "ClassSum":
        model = self.ring.model
        return ClassSum(self.ring, tuple(model.scale(v, n) for v in self.values), self.shift)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ClassSum):
            return NotImplemented
        return (other.shift == self.shift and other.ring.precision == self.ring.precision
                and other.values == self.values)

    __hash__ = None

    @property
    def is_zero(self) -> bool:
        """True when every stored coefficient vanishes mod p^N."""
        return not any(x for v in self.values for x in v)

    def valuation(self) -> int:
        """Minimal valuation of the value (precision - shift for 0)."""
        model = self.ring.model
        v = min((model.valuation(c) for c in self.values if any(c)), default=model.precision)
        return v - self.shift

    def psi(self) -> "ClassSum":
        """The F-semilinear map induced by Psi: class of g -> class of g^p."""
        group, model = self.ring.group, self.ring.model
        data = group.conjugacy
        out = [model.zero() for _ in self.values]
        for k, value in enumerate(self.values):
            if any(value):
                target = data.class_of[group.power(data.reps[k], self.ring.p)]
                out[target] = model.add(out[target], model.frobenius(value))
        return ClassSum(self.ring, tuple(out), self.shift)

    def divided_by_p(self, k: int = 1) -> "ClassSum":
        """The value divided by p^k (the shift grows)."""
        return ClassSum(self.ring, self.values, self.shift + k)

    def integral(self) -> "ClassSum":
        """
        The value with shift 0, losing ``shift`` digits of precision.

        Raises:
            VerificationError: If the value is not integral
        """
        if not self.shift:
            return self
        scale = self.ring.p ** self.shift
        if any(x % scale for v in self.values for x in v):
            raise VerificationError("Class sum is not integral at this precision")
        target = self.ring.at_precision(self.ring.precision - self.shift)
        return ClassSum(target, tuple(target.model.reduce(tuple(x // scale for x in v)) for v in self.values))

    def total(self) -> RingElement:
        """Sum of all class coefficients."""
        model = self.ring.model
        total = model.zero()
        for v in self.values:
            total = model.add(total, v)
        return RingElement(model, total)

    def to_dict(self) -> dict:
        """JSON-friendly representation keyed by class representatives."""
        group = self.ring.group
        return {
            "shift": self.shift,
            "precision": self.ring.precision,
            "classes": {group.names[group.conjugacy.reps[k]]: list(v)
                        for k, v in enumerate(self.values) if any(v)},
        }


# ---------------------------------------------------------------------------
# Arithmetic
# ---------------------------------------------------------------------------

def gr_add(x: GroupRingElement, y: GroupRingElement) -> GroupRingElement:
    """x + y."""
    return x + y


def gr_mul(x: GroupRingElement, y: GroupRingElement) -> GroupRingElement:
    """x * y (shifts add)."""
    if y.ring.group is not x.ring.group or y.ring.model.descriptor != x.ring.model.descriptor:
        raise InputError("Group ring elements belong to different rings")
    ring = x.ring
    model, mult = ring.model, ring.group.mult
    out: dict[int, tuple[int, ...]] = {}
    for g, a in x.coeffs.items():
        row = mult[g]
        for h, b in y.coeffs.items():
            k = row[h]
            term = model.mul(a, b)
            out[k] = model.add(out[k], term) if k in out else term
    return ring.element(out, x.shift + y.shift)


def commutator(u: GroupRingElement, v: GroupRingElement) -> GroupRingElement:
    """u v u^-1 v^-1."""
    return u * v * inverse(u) * inverse(v)


def residue_nilpotency(x: GroupRingElement, limit: Optional[int] = None) -> Optional[int]:
    """Smallest m with x^m = 0 mod p, or None if x is not nilpotent mod p."""
    if x.shift:
        raise InputError("Nilpotency is read on integral elements")
    ring = x.ring
    residue = ring.at_precision(1)
    y = residue.lift(x)
    limit = limit or ring.group.order * ring.dim + 1
    power = y
    for m in range(1, limit + 1):
        if power.is_zero:
            return m
        power = power * y
    return None


def augmentation_nilpotency_index(ring: GroupRing) -> Optional[int]:
    """
    Smallest m with I(R[G])^m contained in pR[G], from ranks over GF(p).

    Returns None when the augmentation ideal is not nilpotent mod p (G not a p-group).
    """
    group, p = ring.group, ring.p
    residue = ring.at_precision(1)
    model = residue.model
    n = group.order * model.dim
    field = GF(p)

    def vector(x: GroupRingElement) -> list[int]:
        out = [0] * n
        for g, c in x.coeffs.items():
            for b, v in enumerate(c):
                out[g * model.dim + b] = v
        return out

    def from_vector(vec: Sequence[int]) -> GroupRingElement:
        return residue.element({g: tuple(vec[g * model.dim:(g + 1) * model.dim]) for g in group.elements})

    def span(vectors: list[list[int]]) -> list[list[int]]:
        if not vectors:
            return []
        reduced, pivots = DomainMatrix.from_list(vectors, field).rref()
        rows = reduced.to_list()
        return [[int(v) % p for v in rows[i]] for i in range(len(pivots))]

    differences = [residue.basis(g) - residue.one() for g in group.elements if g != group.identity]
    ring_basis = [tuple(int(i == b) for i in range(model.dim)) for b in range(model.dim)]
    current = span([vector(d * RingElement(model, e)) for d in differences for e in ring_basis])
    m, previous_rank = 1, None
    while current:
        if previous_rank is not None and len(current) >= previous_rank:
            return None
        previous_rank = len(current)
        current = span([vector(from_vector(v) * d) for v in current for d in differences])
        m += 1
    return m


def invert_one_plus_radical(x: GroupRingElement) -> GroupRingElement:
    """
    (1 + x)^-1 by the geometric series, for x nilpotent mod p.

    Raises:
        InputError: If x is not nilpotent mod p
    """
    ring = x.ring
    if x.is_zero:
        return ring.one()
    m = residue_nilpotency(x)
    if m is None:
        raise InputError("1 + x is not invertible by the geometric series (x is not nilpotent mod p)")
    result = ring.one()
    power = ring.one()
    minus_x = -x
    for _ in range(m * ring.precision):
        power = power * minus_x
        if power.is_zero:
            break
        result = result + power
    return result


def is_unit(u: GroupRingElement) -> bool:
    """Whether u is invertible (decided mod p)."""
    try:
        _residue_inverse(u)
        return True
    except InputError:
        return False


def _residue_inverse(u: GroupRingElement) -> GroupRingElement:
    """A right inverse of u mod p by linear algebra over GF(p)."""
    ring = u.ring
    residue = ring.at_precision(1)
    model, group, p = residue.model, ring.group, ring.p
    d = model.dim
    n = group.order * d
    ub = residue.lift(u)
    columns = []
    for g in group.elements:
        for b in range(d):
            e = tuple(int(i == b) for i in range(d))
            image = ub * residue.basis(g, e)
            column = [0] * n
            for h, c in image.coeffs.items():
                for b2, v in enumerate(c):
                    column[h * d + b2] = v
            columns.append(column)
    matrix = DomainMatrix.from_list([[columns[j][i] for j in range(n)] for i in range(n)], GF(p))
    rhs = [[0] for _ in range(n)]
    rhs[group.identity * d + model.constant_index][0] = 1
    try:
        solution = matrix.lu_solve(DomainMatrix.from_list(rhs, GF(p)))
    except DMNonInvertibleMatrixError as ex:
        raise InputError("Element is not a unit of R[G]") from ex
    flat = [int(row[0]) % p for row in solution.to_list()]
    return ring.element({g: tuple(flat[g * d:(g + 1) * d]) for g in group.elements})


def inverse(u: GroupRingElement) -> GroupRingElement:
    """
    u^-1 in R[G]: geometric series when u - 1 is nilpotent mod p, Newton iteration otherwise.

    Raises:
        InputError: If u is not a unit or the model has no unit arithmetic
    """
    ring = u.ring
    if u.shift:
        raise InputError("Only integral elements are inverted")
    x = u - ring.one()
    if residue_nilpotency(x) is not None:
        return invert_one_plus_radical(x)
    if not ring.model.is_exact:
        raise InputError("Units are not modelled in the truncated Laurent window")
    v = _residue_inverse(u)
    one, two = ring.one(), ring.one() * 2
    for _ in range(2 * ring.precision.bit_length() + 4):
        if u * v == one:
            return v
        v = v * (two - u * v)
    if u * v != one:
        raise VerificationError("Newton inversion in R[G] did not converge")
    return v


# ---------------------------------------------------------------------------
# phi, Psi, log, exp
# ---------------------------------------------------------------------------

def phi(x: GroupRingElement) -> ClassSum:
    """Class-wise coefficient sums R[G] -> R[C_G]."""
    ring = x.ring
    model = ring.model
    data = ring.group.conjugacy
    values = [model.zero() for _ in range(data.count)]
    for g, c in x.coeffs.items():
        k = data.class_of[g]
        values[k] = model.add(values[k], c)
    return ClassSum(ring, tuple(values), x.shift)


def psi_semilinear(x: GroupRingElement) -> GroupRingElement:
    """Psi(sum r_g g) = sum F(r_g) g^p."""
    ring = x.ring
    model, group = ring.model, ring.group
    out: dict[int, tuple[int, ...]] = {}
    for g, c in x.coeffs.items():
        target = group.power(g, ring.p)
        image = model.frobenius(c)
        out[target] = model.add(out[target], image) if target in out else image
    return ring.element(out, x.shift)


def log_terms(p: int, n: int, m: int) -> tuple[int, int]:
    """
    Number of log terms K and denominator exponent sigma for log(1 + x), x^m in pR[G].

    K is the last k with floor(k/m) - floor(log_p k) < n; sigma = floor(log_p K).
    """
    last = 0
    for k in range(1, m * (n + 64) + 1):
        if k // m - _ilog(k, p) < n:
            last = k
    return last, (_ilog(last, p) if last else 0)


def log_one_plus(x: GroupRingElement) -> GroupRingElement:
    """
    log(1 + x) = sum (-1)^(k+1) x^k / k, returned with shift sigma.

    The series runs at precision N + sigma so that p^sigma log(1 + x) is
    exact mod p^(N + sigma).

    Raises:
        InputError: If x is not nilpotent mod p
    """
    ring = x.ring
    if x.is_zero:
        return ring.zero()
    m = residue_nilpotency(x)
    if m is None:
        raise InputError("log(1 + x) needs x nilpotent mod p")
    p, n = ring.p, ring.precision
    terms, sigma = log_terms(p, n, m)
    work = ring.at_precision(n + sigma)
    y = work.lift(x)
    total = work.zero()
    power = work.one()
    for k in range(1, terms + 1):
        power = power * y
        if power.is_zero:
            break
        coefficient = PAdicScalar.reciprocal(k, p, n + sigma).scaled_integer(sigma)
        total = total + power * (coefficient if k % 2 else -coefficient)
    return GroupRingElement(work, total.coeffs, sigma)


def exp_series(y: GroupRingElement, max_power: int = 64) -> GroupRingElement:
    """
    exp(y) = sum y^k / k! for y whose powers grow in valuation faster than 1/(p-1).

    The convergence budget comes from the measured valuation of y^L for the
    first L with v(y^L) / L > 1/(p-1); the coordinates of y are taken as exact.

    Raises:
        InputError: If no such L is found within ``max_power`` or the sum is not integral
    """
    ring = y.ring
    y = y.integral()
    ring = y.ring
    if y.is_zero:
        return ring.one()
    p, n = ring.p, ring.precision
    search_ring = ring.at_precision(2 * n + 8)
    base = search_ring.lift(y)
    power, length, valuation = base, 1, 0
    while True:
        valuation = power.valuation()
        if valuation * (p - 1) > length:
            break
        if length >= max_power:
            raise InputError("exp series does not converge for this argument")
        power = power * base
        length += 1
    terms = 0
    k = 1
    while True:
        if (k // length) * valuation - _factorial_valuation(k, p) < n:
            terms = k
        lower = (k / length - 1) * valuation - (k - 1) / (p - 1)
        if lower >= n:
            break
        k += 1
    sigma = _factorial_valuation(terms, p)
    work = ring.at_precision(n + sigma)
    z = work.lift(y)
    total = work.one() * p ** sigma
    term = work.one()
    for k in range(1, terms + 1):
        term = term * z
        if term.is_zero:
            break
        coefficient = PAdicScalar.inverse_factorial(k, p, n + sigma).scaled_integer(sigma)
        total = total + term * coefficient
    result = GroupRingElement(work, total.coeffs, sigma)
    try:
        return result.integral()
    except VerificationError as ex:
        raise InputError("exp series is not integral for this argument") from ex


# ---------------------------------------------------------------------------
# The group logarithm
# ---------------------------------------------------------------------------

def group_log_L(u: GroupRingElement) -> ClassSum:
    """
    L(u) = phi((p - Psi) log u), asserted to lie in p R[C_G].

    For the trivial group and a unit u not in 1 + pR this is the scalar
    log(u^p / F(u)).

    Raises:
        InputError: If u - 1 is not nilpotent mod p (and G is not trivial)
        VerificationError: If the result is not divisible by p
    """
    ring = u.ring
    x = u - ring.one()
    if ring.group.order == 1 and residue_nilpotency(x) is None:
        scalar = scalar_log_L(u.coefficient(ring.group.identity))
        return ClassSum(ring, (scalar.coords,))
    if x.is_zero:
        return ClassSum.zero(ring)
    log = log_one_plus(x)
    value = phi(log * ring.p - psi_semilinear(log))
    if value.valuation() < 1:
        raise VerificationError(
            f"Group logarithm is not divisible by p (valuation {value.valuation()}) on {ring.group.name}")
    return value.integral()


def phi_log(u: GroupRingElement) -> ClassSum:
    """phi(log u), the computable stand-in for the determinant of u; may carry a shift."""
    ring = u.ring
    return phi(log_one_plus(u - ring.one()))


def abelian_pushforward(x: ClassSum,
                        projection: Callable[[int], tuple[int, ...]]) -> dict[tuple[int, ...], tuple[int, ...]]:
    """Image of a class sum in R[G^ab] as {G^ab coordinates: coefficient}."""
    ring = x.ring
    model = ring.model
    group = ring.group
    out: dict[tuple[int, ...], tuple[int, ...]] = {}
    for k, value in enumerate(x.values):
        if any(value):
            key = projection(group.conjugacy.reps[k])
            out[key] = model.add(out[key], value) if key in out else value
    return {k: v for k, v in out.items() if any(v)}
