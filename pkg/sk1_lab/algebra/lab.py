"""
Homology-valued maps on group rings and the randomized verification suites.

omega and xi land in H1(G, R_N[G_r]) computed through the bar complex with
the conjugation module on p-regular elements (ring basis vectors tensored
in). Suites return plain records and never print.
"""

import random
from dataclasses import dataclass, field
from typing import Callable, Optional

from ..errors import InputError, VerificationError
from .group_ring import (
    ClassSum, GroupRing, GroupRingElement, abelian_pushforward, exp_series, group_log_L, inverse, log_one_plus,
    log_terms, phi, phi_log,
)
from .factorization import commutator_identity_holds, commutator_refine, congruence_holds, group_commutator, \
    multiply_back
from .groups import (
    FiniteGroup, abelianization, central_translation_is_free, commutator_subgroup, cyclic_group, is_commutator,
    p_parts, special_set_S,
)
from .homology import HomologyClass, HomologyPresentation, homology, induced_psi_on_h, regular_module
from .rings import RingDescriptor, RingElement
from .smith import LocalEliminator


# ---------------------------------------------------------------------------
# omega, xi and Psi on H1
# ---------------------------------------------------------------------------

def h1_regular(ring: GroupRing) -> HomologyPresentation:
    """H1(G, R_N[G_r]) for the ring's group, prime and precision."""
    return homology(ring.group, 1, regular_module(ring.group, ring.p, ring.precision, ring_rank=ring.dim))


def _check_presentation(ring: GroupRing, presentation: HomologyPresentation) -> None:
    module = presentation.module
    if (presentation.group_obj is not ring.group or module.truncation != ring.precision
            or module.ring_rank != ring.dim or presentation.degree != 1):
        raise InputError("Homology presentation does not match the group ring")


def _add_term(vector: dict[int, int], presentation: HomologyPresentation, g: int, target: int,
              coefficient: tuple[int, ...]) -> None:
    cx = presentation.complex
    for b, value in enumerate(coefficient):
        if value:
            idx = cx.index((g,), cx.module_index(target, b))
            vector[idx] = vector.get(idx, 0) + value


def _class_of(presentation: HomologyPresentation, vector: dict[int, int], what: str) -> HomologyClass:
    modulus = presentation.module.prime ** presentation.module.truncation
    vector = {i: v % modulus for i, v in vector.items() if v % modulus}
    if not presentation.is_cycle(vector):
        raise VerificationError(f"{what} chain is not a cycle")
    return HomologyClass(presentation, presentation.coordinates([vector])[0])


def omega_chain(ring: GroupRing, g: int, coefficient: tuple[int, ...],
                presentation: HomologyPresentation) -> dict[int, int]:
    """The 1-chain [g] (x) r g_r."""
    vector: dict[int, int] = {}
    if g != ring.group.identity:
        _add_term(vector, presentation, g, p_parts(ring.group, g, ring.p)[0], coefficient)
    return vector


def omega_G(s: ClassSum, presentation: Optional[HomologyPresentation] = None) -> HomologyClass:
    """
    omega(sum s_c c) = sum [rep_c] (x) s_c (rep_c)_r in H1(G, R_N[G_r]).

    Raises:
        InputError: For class sums with a denominator
        VerificationError: If the chain is not a cycle
    """
    ring = s.ring
    if s.shift:
        raise InputError("omega takes integral class sums")
    presentation = presentation or h1_regular(ring)
    _check_presentation(ring, presentation)
    vector: dict[int, int] = {}
    for k, value in enumerate(s.values):
        if any(value):
            for idx, v in omega_chain(ring, ring.group.conjugacy.reps[k], value, presentation).items():
                vector[idx] = vector.get(idx, 0) + v
    return _class_of(presentation, vector, "omega")


def xi_G(u: GroupRingElement, presentation: Optional[HomologyPresentation] = None) -> HomologyClass:
    """
    xi(u) = sum_{g,h} [g] (x) t_h s_g (hg)_r, where u = sum s_g g and u^-1 = sum t_h h.

    Raises:
        InputError: If u is not a unit
        VerificationError: If the chain is not a cycle
    """
    ring = u.ring
    presentation = presentation or h1_regular(ring)
    _check_presentation(ring, presentation)
    group, model = ring.group, ring.model
    v = inverse(u)
    vector: dict[int, int] = {}
    for g, s in u.coeffs.items():
        if g == group.identity:
            continue
        for h, t in v.coeffs.items():
            target = p_parts(group, group.mult[h][g], ring.p)[0]
            _add_term(vector, presentation, g, target, model.mul(t, s))
    return _class_of(presentation, vector, "xi")


def psi_on_h1(ring: GroupRing, presentation: HomologyPresentation):
    """Psi on H1(G, R_N[G_r]): identity on bars, F on R and g -> g^p on G_r."""
    return induced_psi_on_h(presentation, frobenius=ring.model.frobenius_matrix(), power=ring.p)


def adams_transport(h: int, s: ClassSum) -> ClassSum:
    """sum lambda_c c -> sum lambda_c c^h."""
    ring = s.ring
    group, model = ring.group, ring.model
    data = group.conjugacy
    exponent = h % group.exponent
    out = [model.zero() for _ in s.values]
    for k, value in enumerate(s.values):
        if any(value):
            target = data.class_of[group.power(data.reps[k], exponent)]
            out[target] = model.add(out[target], value)
    return ClassSum(ring, tuple(out), s.shift)


# ---------------------------------------------------------------------------
# Checks
# ---------------------------------------------------------------------------

def xi_omega_sides(u: GroupRingElement,
                   presentation: Optional[HomologyPresentation] = None) -> tuple[HomologyClass, HomologyClass]:
    """
    Both sides of (1 - Psi) xi(u) = omega(L(u)/p) for a p-group.

    u lives at precision M >= 2; the identity is read in H1 at precision M - 1.

    Returns:
        Tuple ``(left, right)``
    """
    ring = u.ring
    if not ring.group.is_p_group(ring.p):
        raise InputError(f"{ring.group.name} is not a {ring.p}-group")
    if ring.precision < 2:
        raise InputError("The identity is read one digit below the ring precision; use precision >= 2")
    lower = ring.at_precision(ring.precision - 1)
    presentation = presentation or h1_regular(lower)
    xi = xi_G(lower.lift(u), presentation)
    left = xi - psi_on_h1(lower, presentation).apply(xi)
    value = group_log_L(u).divided_by_p().integral()
    right = omega_G(ClassSum(lower, value.values), presentation)
    return left, right


def cyclic_congruence_check(p: int, n: int) -> bool:
    """(1-c)^p + p(1-c) lies in p(1-c)^2 Z[C_p] modulo p^n."""
    model = RingDescriptor("Zp", p, n).build()
    ring = GroupRing(cyclic_group(p), model)
    x = ring.one() - ring.basis(1)
    target = x ** p + x * p
    solver = LocalEliminator(p, n, p, keep_pivot_rows=True)
    square = x * x * p
    for i in range(p):
        column = square * ring.basis(i)
        solver.add_column(i, {g: c[0] for g, c in column.coeffs.items()})
    return solver.solve({g: c[0] for g, c in target.coeffs.items()}) is not None


@dataclass
class MembershipResult:
    """Outcome of the J-kernel membership test."""
    member: bool
    reason: str
    scale: int = 0
    precision_conditional: bool = False
    type1: dict[str, list[int]] = field(default_factory=dict)
    type2: dict[str, list[int]] = field(default_factory=dict)

    def to_dict(self) -> dict:
        """JSON-friendly representation."""
        return {
            "member": self.member,
            "reason": self.reason,
            "scale": self.scale,
            "precision_conditional": self.precision_conditional,
            "type1": self.type1,
            "type2": self.type2,
        }


def _flatten(x: GroupRingElement, modulus: int) -> dict[int, int]:
    d = x.ring.dim
    return {h * d + i: v % modulus for h, coords in x.coeffs.items() for i, v in enumerate(coords) if v % modulus}


def _in_ideal_mod_p(x: GroupRingElement, c: int) -> bool:
    """Whether x lies in (1 - c)R[G] modulo p."""
    residue = x.ring.at_precision(1)
    group, p, d = residue.group, residue.p, residue.dim
    factor = residue.one() - residue.basis(c)
    solver = LocalEliminator(p, 1, group.order * d, keep_pivot_rows=True)
    col = 0
    for g in group.elements:
        for b in range(d):
            solver.add_column(col, _flatten(factor * residue.basis(g, tuple(int(i == b) for i in range(d))), p))
            col += 1
    return solver.solve(_flatten(residue.lift(x), p)) is not None


def j_membership(u: GroupRingElement, c: int, n: int = 1) -> MembershipResult:
    """
    Whether log u = (1-c)^n xi with xi in the span of S_G and of differences of conjugates.

    phi(log u) = 0 is tested first. The span is then solved over Z/p^N for
    p^s log u, where s is the denominator exponent of the log series; the
    digits above p^N are lost to the truncated input. A failed solve is a
    non-membership verdict at that precision only.

    Raises:
        InputError: If c is not central of order p or u - 1 is not in (1 - c)R[G] mod p
    """
    ring = u.ring
    group, model, p = ring.group, ring.model, ring.p
    members, _ = special_set_S(group, c, p)
    if u == ring.one():
        return MembershipResult(True, "identity")
    if not _in_ideal_mod_p(u - ring.one(), c):
        raise InputError(f"u - 1 is not in (1 - {group.names[c]})R[G] mod p")
    determinant = phi_log(u)
    if determinant.valuation() < ring.precision:
        return MembershipResult(False, "phi-log")
    log = log_one_plus(u - ring.one())
    work = log.ring
    scale = log.shift
    d = model.dim
    modulus = p ** ring.precision
    factor = (work.one() - work.basis(c)) ** n
    columns: list[tuple[str, int, int, GroupRingElement]] = []
    for g in members:
        columns.append(("type1", g, -1, factor * work.basis(g)))
    data = group.conjugacy
    for g in group.elements:
        rep = data.reps[data.class_of[g]]
        if g != rep:
            columns.append(("type2", g, rep, factor * (work.basis(g) - work.basis(rep))))
    solver = LocalEliminator(p, ring.precision, group.order * d, keep_pivot_rows=True)
    labels = []
    for kind, g, rep, element in columns:
        for b in range(d):
            e = tuple(int(i == b) for i in range(d))
            solver.add_column(len(labels), _flatten(element * RingElement(work.model, e), modulus))
            labels.append((kind, g, rep, b))
    target = _flatten(log, modulus)
    solution = solver.solve(target)
    if solution is None:
        return MembershipResult(False, "span", scale, precision_conditional=True)
    result = MembershipResult(True, "span", scale, precision_conditional=False)
    for col, value in sorted(solution.items()):
        kind, g, rep, b = labels[col]
        name = group.names[g] if kind == "type1" else f"{group.names[g]}-{group.names[rep]}"
        bucket = result.type1 if kind == "type1" else result.type2
        bucket.setdefault(name, [0] * d)[b] = value
    return result


def sk1_generator(r: RingElement, c: int, g: int, g_prime: int, ring: GroupRing) -> GroupRingElement:
    """
    exp(r(1-c)(g - g')) for g, g' in S_G, with phi(y) = 0 and phi(log u) = 0 asserted.

    Raises:
        InputError: If c, g or g' violate the membership conditions or exp does not converge
        VerificationError: If a postcondition fails
    """
    members, _ = special_set_S(ring.group, c, ring.p)
    for x in (g, g_prime):
        if x not in members:
            raise InputError(f"{ring.group.names[x]} is not in S_G for c = {ring.group.names[c]}")
    y = (ring.one() - ring.basis(c)) * (ring.basis(g) - ring.basis(g_prime)) * r
    if not phi(y).is_zero:
        raise VerificationError("phi(r(1-c)(g-g')) is nonzero")
    u = exp_series(y)
    if phi_log(u).valuation() < ring.precision:
        raise VerificationError("phi(log u) is nonzero for the generator")
    return u


def augmentation_kernel_element(ring: GroupRing, rng: random.Random) -> GroupRingElement:
    """Random sum r_g g (k_g - 1) with k_g in [G,G]; multiplied by p unless G is a p-group."""
    derived = commutator_subgroup(ring.group).members
    x = ring.zero()
    for g in ring.group.elements:
        k = rng.choice(derived)
        if k == ring.group.identity:
            continue
        term = ring.basis(ring.group.mult[g][k]) - ring.basis(g)
        x = x + term * RingElement(ring.model, ring.model.random_element(rng))
    if not ring.group.is_p_group(ring.p):
        x = x * ring.p
    return x


def augmentation_kernel_check(u: GroupRingElement) -> bool:
    """L(u) for u in 1 + ker(R[G] -> R[G^ab]) pushes forward to zero in R[G^ab]."""
    ring = u.ring
    _, projection = abelianization(ring.group)
    value = group_log_L(u)
    return not abelian_pushforward(value, projection)


def central_translation_check(group: FiniteGroup, c: int, p: int) -> Optional[bool]:
    """
    For central c of order p that is not a commutator: translation by c moves every class and S_G is empty.

    Returns None when c is a commutator (nothing to check).
    """
    members, _ = special_set_S(group, c, p)
    if is_commutator(group, c):
        return None
    return central_translation_is_free(group, c) and not members


def central_elements_of_order(group: FiniteGroup, p: int) -> list[int]:
    """Central elements of order p."""
    return [z for z in group.center.members if group.element_order(z) == p]


# ---------------------------------------------------------------------------
# Suites
# ---------------------------------------------------------------------------

@dataclass
class SuiteReport:
    """Result record of a verification suite."""
    check: str
    group: str
    ring: str
    precision: int
    trials: int
    failures: int = 0
    skipped: int = 0
    examples: list[str] = field(default_factory=list)

    def fail(self, message: str) -> None:
        """Record a failed trial."""
        self.failures += 1
        if len(self.examples) < 3:
            self.examples.append(message)

    @property
    def passed(self) -> bool:
        """True when no trial failed."""
        return self.failures == 0

    def to_dict(self) -> dict:
        """JSON-friendly representation."""
        return {
            "check": self.check,
            "group": self.group,
            "ring": self.ring,
            "precision": self.precision,
            "trials": self.trials,
            "failures": self.failures,
            "skipped": self.skipped,
            "examples": self.examples,
        }


def _radical_unit(ring: GroupRing, rng: random.Random) -> GroupRingElement:
    return ring.random_unit(rng, radical=True)


def _require_exact(ring: GroupRing) -> None:
    if not ring.model.is_exact:
        raise InputError("Group ring checks need a ring model with exact products (not the Laurent window)")


def _suite_log_integrality(ring, rng, report):
    for _ in range(report.trials):
        u = _radical_unit(ring, rng)
        try:
            value = group_log_L(u)
        except VerificationError as ex:
            report.fail(str(ex))
            continue
        if ring.group.is_p_group(ring.p) and not value.total().is_zero:
            report.fail("L(u) has nonzero augmentation")


def _suite_augmentation_kernel(ring, rng, report):
    for _ in range(report.trials):
        u = ring.one() + augmentation_kernel_element(ring, rng)
        try:
            if not augmentation_kernel_check(u):
                report.fail("L(1+x) does not vanish in R[G^ab]")
        except VerificationError as ex:
            report.fail(str(ex))


def _suite_cyclic_congruence(ring, rng, report):
    del rng
    report.trials = 1
    if not cyclic_congruence_check(ring.p, ring.precision):
        report.fail(f"(1-c)^p + p(1-c) is not in p(1-c)^2 Z[C_{ring.p}]")


def _suite_xi_omega(ring, rng, report):
    upper = ring.at_precision(ring.precision + 1)
    presentation = h1_regular(ring)
    for _ in range(report.trials):
        u = _radical_unit(upper, rng)
        left, right = xi_omega_sides(u, presentation)
        if left != right:
            report.fail(f"(1-Psi)xi(u) = {left.coordinates}, omega(L(u)/p) = {right.coordinates}")


def _suite_xi(ring, rng, report):
    presentation = h1_regular(ring)
    for _ in range(report.trials):
        u = ring.random_unit(rng, radical=False)
        v = ring.random_unit(rng, radical=False)
        if xi_G(u * v, presentation) != xi_G(u, presentation) + xi_G(v, presentation):
            report.fail("xi(uv) != xi(u) + xi(v)")
        if not xi_G(u * v * inverse(u) * inverse(v), presentation).is_zero():
            report.fail("xi of a commutator is nonzero")


def _suite_phi_log_commutators(ring, rng, report):
    # log divides by k up to p^sigma, so the commutator carries sigma spare digits
    _, sigma = log_terms(ring.p, ring.precision, ring.group.order)
    upper = ring.at_precision(ring.precision + sigma)
    for _ in range(report.trials):
        u, v = _radical_unit(upper, rng), _radical_unit(upper, rng)
        value = phi_log(u * v * inverse(u) * inverse(v))
        if value.valuation() < ring.precision:
            report.fail("phi(log [u,v]) is nonzero")


def _suite_factorization(ring, rng, report):
    p = ring.p
    k = 1 if p > 2 else 2
    if ring.precision <= k:
        raise InputError(f"Factorization checks need precision > {k}")
    steps = ring.precision - k
    elements = [g for g in ring.group.elements if g != ring.group.identity]
    if not elements:
        report.skipped = report.trials
        return
    for _ in range(report.trials):
        x = ring.one()
        for _ in range(2):
            g = rng.choice(elements)
            mu = ring.random_element(rng)
            x = x * group_commutator(ring, g, ring.one() + mu * p ** k)
        try:
            result = commutator_refine(x, k, steps)
            if multiply_back(ring, result) != ring.at_precision(k + steps).lift(x):
                report.fail("Factors do not multiply back to the input")
        except VerificationError as ex:
            report.fail(str(ex))


def _suite_exp_log(ring, rng, report):
    p = ring.p
    for _ in range(report.trials):
        if ring.group.is_p_group(p):
            x = ring.random_element(rng, "p-augmentation")
        else:
            x = ring.random_element(rng, "p") * (p if p == 2 else 1)
        y = log_one_plus(x).integral()
        if exp_series(y) != ring.one() + x:
            report.fail("exp(log(1+x)) != 1+x")


def _suite_omega(ring, rng, report):
    presentation = h1_regular(ring)
    group = ring.group
    for _ in range(report.trials):
        g = rng.choice(list(group.elements))
        h = rng.choice(list(group.elements))
        coefficient = ring.model.random_element(rng)
        first = omega_chain(ring, g, coefficient, presentation)
        second = omega_chain(ring, group.conjugate(g, h), coefficient, presentation)
        if _class_of(presentation, first, "omega") != _class_of(presentation, second, "omega"):
            report.fail(f"omega depends on the representative of the class of {group.names[g]}")


def _suite_adams(ring, rng, report):
    group = ring.group
    count = group.conjugacy.count
    for _ in range(report.trials):
        s = ClassSum(ring, tuple(ring.model.random_element(rng) for _ in range(count)))
        h, k = rng.randrange(1, group.exponent + 1), rng.randrange(1, group.exponent + 1)
        if adams_transport(h, adams_transport(k, s)) != adams_transport(h * k, s):
            report.fail(f"transport({h}) o transport({k}) != transport({h * k})")
        if adams_transport(h, s).total() != s.total():
            report.fail("transport changes the total coefficient")


def _suite_sk1_generator(ring, rng, report):
    group, p = ring.group, ring.p
    candidates = central_elements_of_order(group, p)
    if not candidates:
        raise InputError(f"{group.name} has no central element of order {p}")
    commutators = [z for z in candidates if is_commutator(group, z)]
    c = (commutators or candidates)[0]
    members, _ = special_set_S(group, c, p)
    if not members:
        report.skipped = report.trials
        return
    for _ in range(report.trials):
        g, g_prime = rng.choice(members), rng.choice(members)
        r = RingElement(ring.model, ring.model.random_element(rng))
        try:
            sk1_generator(r, c, g, g_prime, ring)
        except VerificationError as ex:
            report.fail(str(ex))
        except InputError:
            report.skipped += 1


def _suite_central_translation(ring, rng, report):
    del rng
    candidates = central_elements_of_order(ring.group, ring.p)
    report.trials = len(candidates)
    for c in candidates:
        if central_translation_check(ring.group, c, ring.p) is False:
            report.fail(f"c = {ring.group.names[c]} is not a commutator but fixes a class or S_G is nonempty")


def _suite_commutator_identities(ring, rng, report):
    for _ in range(report.trials):
        z, y, x = (_radical_unit(ring, rng) for _ in range(3))
        if not commutator_identity_holds(z, y, x):
            report.fail("[z,yx] != [z,y] y[z,x]y^-1")
        m, n = rng.randrange(1, ring.precision + 1), rng.randrange(1, ring.precision + 1)
        if not congruence_holds(ring.random_element(rng), ring.random_element(rng), m, n):
            report.fail(f"(1+p^{m}l)(1+p^{n}m) congruence fails")


SUITES: dict[str, Callable[[GroupRing, random.Random, SuiteReport], None]] = {
    "log-integrality": _suite_log_integrality,
    "augmentation-kernel": _suite_augmentation_kernel,
    "cyclic-congruence": _suite_cyclic_congruence,
    "xi-omega": _suite_xi_omega,
    "xi": _suite_xi,
    "phi-log-commutators": _suite_phi_log_commutators,
    "factorization": _suite_factorization,
    "exp-log": _suite_exp_log,
    "omega": _suite_omega,
    "adams": _suite_adams,
    "sk1-generator": _suite_sk1_generator,
    "central-translation": _suite_central_translation,
    "commutator-identities": _suite_commutator_identities,
}


def run_suite(name: str, ring: GroupRing, trials: int, seed: int) -> SuiteReport:
    """
    Run one verification suite with a seeded generator.

    Raises:
        InputError: For unknown suites or unsupported group/ring combinations
    """
    if name not in SUITES:
        raise InputError(f"Unknown suite '{name}'; choose from {', '.join(SUITES)}")
    _require_exact(ring)
    report = SuiteReport(name, ring.group.name, str(ring.model.descriptor), ring.precision, trials)
    SUITES[name](ring, random.Random(seed), report)
    return report
