"""
Factorization of elements of 1 + p^k R[G] into commutators [g, 1 + p^k mu].

Stage n corrects the product so far modulo p^(n+1): the residue of
P^-1 x is 1 + p^n delta, and delta has zero class sums mod p, so it is a
sum of differences h - c of conjugate elements. Each difference is
produced by the commutator of a conjugator with 1 + p^n c.
"""

from dataclasses import dataclass

from ..errors import InputError, PrecisionError, VerificationError
from .group_ring import GroupRing, GroupRingElement, inverse, phi, phi_log


@dataclass
class CommutatorFactor:
    """The factor [g, 1 + p^k mu]."""
    element: int
    mu: GroupRingElement

    def to_dict(self) -> dict:
        """JSON-friendly representation."""
        return {"element": self.mu.ring.group.names[self.element], "mu": self.mu.to_dict()}


@dataclass
class Factorization:
    """Ordered commutator factors reproducing the input mod p^precision."""
    k: int
    precision: int
    factors: list[CommutatorFactor]

    def to_dict(self) -> dict:
        """JSON-friendly representation."""
        return {"k": self.k, "precision": self.precision, "factors": [f.to_dict() for f in self.factors]}


def group_commutator(ring: GroupRing, g: int, u: GroupRingElement) -> GroupRingElement:
    """[g, u] = g u g^-1 u^-1 for a group element g."""
    return u.conjugate(g) * inverse(u)


def _product(ring: GroupRing, units: dict[int, GroupRingElement]) -> GroupRingElement:
    result = ring.one()
    for g in sorted(units):
        result = result * group_commutator(ring, g, units[g])
    return result


def _residue_digits(y: GroupRingElement, n: int) -> dict[int, tuple[int, ...]]:
    """The coefficients of (y - 1) / p^n mod p."""
    ring = y.ring
    p = ring.p
    difference = y - ring.one()
    if difference.valuation() < n:
        raise VerificationError(
            f"Partial product does not agree with the input mod p^{n} (valuation {difference.valuation()})")
    scale = p ** n
    return {g: tuple((x // scale) % p for x in c) for g, c in difference.coeffs.items()}


def commutator_refine(x: GroupRingElement, k: int, steps: int) -> Factorization:
    """
    Write x = prod_g [g, 1 + p^k mu_g] mod p^(k+steps), products in element order.

    Raises:
        InputError: If p^k <= 2, x is not in 1 + p^k R[G], or phi(log x) is nonzero
        PrecisionError: If the ring precision is below k + steps
        VerificationError: If a correction step is infeasible or the product does not multiply back to x
    """
    ring = x.ring
    p = ring.p
    if k < 1 or steps < 1:
        raise InputError("k and steps must be positive")
    if p ** k <= 2:
        raise InputError(f"Commutator factorization needs p^k > 2, got p={p}, k={k}")
    target = k + steps
    if ring.precision < target:
        raise PrecisionError(f"Ring precision {ring.precision} is below the requested {target}")
    if (x - ring.one()).valuation() < k:
        raise InputError(f"Input is not congruent to 1 mod p^{k}")
    determinant = phi_log(x)
    if determinant.valuation() < ring.precision:
        raise InputError("phi(log x) is nonzero, so x is not a product of commutators")
    work = ring.at_precision(target)
    x = work.lift(x)
    group, model = work.group, work.model
    data = group.conjugacy
    units = {g: work.one() for g in group.elements if g != group.identity}
    conjugators: dict[int, int] = {}
    for h in group.elements:
        rep = data.reps[data.class_of[h]]
        if h != rep:
            conjugators[h] = next(g for g in group.elements if group.conjugate(rep, g) == h)
    for n in range(k, target):
        y = inverse(_product(work, units)) * x
        digits = _residue_digits(y, n)
        residual = phi(work.element(digits))
        if any(v % p for value in residual.values for v in value):
            raise VerificationError(f"Class sums of the stage-{n} residue do not vanish mod p: {residual.to_dict()}")
        corrections: dict[int, tuple[int, ...]] = {}
        for h, d in digits.items():
            if h not in conjugators:
                continue
            g = conjugators[h]
            rep = data.reps[data.class_of[h]]
            lam = work.element({rep: d})
            corrections[g] = (corrections[g] + lam) if g in corrections else lam
        for g, lam in corrections.items():
            units[g] = units[g] * (work.one() + lam * p ** n)
    if _product(work, units) != x:
        raise VerificationError("Commutator product does not multiply back to the input")
    scale = p ** k
    out_ring = work.at_precision(steps)
    factors = []
    for g in sorted(units):
        mu = units[g] - work.one()
        if mu.is_zero:
            continue
        coeffs = {h: model.reduce(c) for h, c in mu.coeffs.items()}
        factors.append(CommutatorFactor(g, out_ring.element({h: tuple(v // scale for v in c)
                                                            for h, c in coeffs.items()})))
    return Factorization(k, target, factors)


def multiply_back(x_ring: GroupRing, factorization: Factorization) -> GroupRingElement:
    """The product of the factors at the factorization's precision."""
    work = x_ring.at_precision(factorization.precision)
    scale = work.p ** factorization.k
    result = work.one()
    for factor in factorization.factors:
        u = work.one() + work.lift(factor.mu) * scale
        result = result * group_commutator(work, factor.element, u)
    return result


def commutator_identity_holds(z: GroupRingElement, y: GroupRingElement, x: GroupRingElement) -> bool:
    """[z, yx] = [z, y] * y [z, x] y^-1 for units."""
    def bracket(a, b):
        return a * b * inverse(a) * inverse(b)

    return bracket(z, y * x) == bracket(z, y) * y * bracket(z, x) * inverse(y)


def congruence_holds(lam: GroupRingElement, mu: GroupRingElement, m: int, n: int) -> bool:
    """(1 + p^m lam)(1 + p^n mu) = 1 + p^n mu + p^m lam mod p^(m+n)."""
    ring = lam.ring
    p = ring.p
    left = (ring.one() + lam * p ** m) * (ring.one() + mu * p ** n)
    right = ring.one() + mu * p ** n + lam * p ** m
    return (left - right).valuation() >= min(m + n, ring.precision)
