"""
SK1(R[G]) from the orbit formula, with an independent covariants computation
and triviality certificates as cross-checks.

The orbit formula reads

    SK1(R[G]) = sum over Psi-orbits j of H2-bar(G_j, Z) (x) R/(1 - F)R,

where G_j is the centralizer of a representative of the j-th orbit of
g -> g^p on p-regular conjugacy classes.
"""

from dataclasses import dataclass, field
from typing import Optional

from ..errors import InputError, SizeBoundError, VerificationError
from .abelian import AbelianGroupPresentation
from .groups import FiniteGroup, Subgroup, normal_abelian_cyclic_quotient_witness, p_regular_classes, \
    p_regular_elements
from .homology import (
    DEFAULT_MAX_ORDER_DEGREE2, CoefficientModule, commuting_pairs, h2_bar, homology, induced_psi_on_h,
    pair_cycle_vector,
)
from .rings import EXPECTED_VERDICTS, PairComparison, RingModel, coinvariants, compare_pair, pair_models, \
    tensor_with_finite
from .smith import LocalEliminator, p_valuation

ASSUMED_HYPOTHESES = (
    "R is a p-adically complete integral domain with a Frobenius lift F (F(a) = a^p mod p)",
    "SK1 of R tensored with every unramified extension of Z_p is trivial",
    "R is modelled by its truncation R_N, which resolves every tensor factor",
)


@dataclass
class PsiOrbit:
    """One orbit of the class map c -> class(rep^p) on p-regular classes."""
    members: tuple[int, ...]
    representative: int
    centralizer: Subgroup

    @property
    def size(self) -> int:
        """Number of classes n_j in the orbit."""
        return len(self.members)

    @property
    def representative_class(self) -> int:
        """Class index i_j of the representative."""
        return self.members[0]


@dataclass
class PsiOrbitStructure:
    """The orbit decomposition of the p-regular classes."""
    group: FiniteGroup
    p: int
    orbits: list[PsiOrbit]

    def to_dict(self) -> dict:
        """JSON-friendly representation."""
        names = self.group.names
        reps = self.group.conjugacy.reps
        return {
            "group": self.group.name,
            "p": self.p,
            "orbits": [
                {
                    "classes": [names[reps[k]] for k in orbit.members],
                    "size": orbit.size,
                    "representative": names[orbit.representative],
                    "centralizer_order": orbit.centralizer.order,
                }
                for orbit in self.orbits
            ],
        }


def psi_orbits(group: FiniteGroup, p: int) -> PsiOrbitStructure:
    """Orbits of class(g) -> class(g^p) on the p-regular classes, from the smallest representative."""
    data = group.conjugacy
    regular = sorted(p_regular_classes(group, p), key=lambda k: data.reps[k])
    seen: set[int] = set()
    orbits = []
    for start in regular:
        if start in seen:
            continue
        members = [start]
        seen.add(start)
        current = data.class_of[group.power(data.reps[start], p)]
        while current != start:
            if current in seen:
                raise VerificationError("The p-th power map is not a permutation of p-regular classes")
            members.append(current)
            seen.add(current)
            current = data.class_of[group.power(data.reps[current], p)]
        rep = data.reps[start]
        orbits.append(PsiOrbit(tuple(members), rep, group.centralizer(rep)))
    return PsiOrbitStructure(group, p, orbits)


@dataclass
class OrbitRecord:
    """Per-orbit factors of the orbit formula."""
    representative: str
    size: int
    centralizer_order: int
    h2_bar: AbelianGroupPresentation
    coinvariants: AbelianGroupPresentation
    tensor: AbelianGroupPresentation

    def to_dict(self) -> dict:
        """JSON-friendly representation."""
        return {
            "representative": self.representative,
            "size": self.size,
            "centralizer_order": self.centralizer_order,
            "h2_bar": self.h2_bar.to_dict(),
            "coinvariants": self.coinvariants.to_dict(),
            "tensor": self.tensor.to_dict(),
        }


@dataclass
class SK1Report:
    """SK1(R[G]) with its per-orbit breakdown."""
    group: str
    ring: dict
    precision_used: int
    orbits: list[OrbitRecord]
    total: AbelianGroupPresentation
    certificates: list[dict] = field(default_factory=list)
    assumed_hypotheses: list[str] = field(default_factory=lambda: list(ASSUMED_HYPOTHESES))
    checks: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        """JSON-friendly representation with stable field names."""
        return {
            "group": self.group,
            "ring": self.ring,
            "precision_used": self.precision_used,
            "orbits": [orbit.to_dict() for orbit in self.orbits],
            "total": self.total.to_dict(),
            "certificates": self.certificates,
            "assumed_hypotheses": self.assumed_hypotheses,
            "checks": self.checks,
        }


def effective_precision(model: RingModel, group: FiniteGroup) -> int:
    """max(N, v_p(|G|)); the exponent of every H2 involved divides |G|."""
    return max(model.precision, p_valuation(group.order, model.p))


def sk1(model: RingModel, group: FiniteGroup, max_order: int = DEFAULT_MAX_ORDER_DEGREE2) -> SK1Report:
    """
    SK1(R[G]) by the orbit formula.

    Raises:
        SizeBoundError: If a centralizer exceeds the degree-2 homology bound (the orbit is named)
    """
    p = model.p
    n_eff = effective_precision(model, group)
    working = model.at_precision(n_eff) if n_eff != model.precision else model
    coinv = coinvariants(working).group
    structure = psi_orbits(group, p)
    records = []
    total = AbelianGroupPresentation.trivial()
    for orbit in structure.orbits:
        rep_name = group.names[orbit.representative]
        centralizer = orbit.centralizer.as_group(f"C_{group.name}({rep_name})")
        try:
            bar = h2_bar(centralizer, p, max_order).p_part(p)
        except SizeBoundError as ex:
            raise SizeBoundError(f"Orbit of {rep_name}: {ex}") from ex
        tensor = tensor_with_finite(bar, working)
        records.append(OrbitRecord(rep_name, orbit.size, orbit.centralizer.order, bar, coinv, tensor))
        total = total.direct_sum(tensor)
    hypotheses = list(ASSUMED_HYPOTHESES)
    if not working.is_exact:
        hypotheses.append("The Laurent ring is modelled by a symmetric degree window")
    return SK1Report(group.name, model.descriptor.to_dict(), n_eff, records, total,
                     assumed_hypotheses=hypotheses)


def theta_target_pgroup(model: RingModel, group: FiniteGroup,
                        max_order: int = DEFAULT_MAX_ORDER_DEGREE2) -> AbelianGroupPresentation:
    """
    H2-bar(G, Z) (x) R/(1 - F)R for a p-group G.

    Raises:
        InputError: If G is not a p-group
    """
    if not group.is_p_group(model.p):
        raise InputError(f"{group.name} is not a {model.p}-group")
    working = model.at_precision(effective_precision(model, group))
    return tensor_with_finite(h2_bar(group, model.p, max_order).p_part(model.p), working)


def covariants_direct(model: RingModel, group: FiniteGroup,
                      max_order: int = DEFAULT_MAX_ORDER_DEGREE2) -> AbelianGroupPresentation:
    """
    The Psi-covariants of H2-bar(G, R_N[G_r]) computed without the orbit formula.

    H2(G, Z[G_r]) is computed on the bar complex, tensored with the basis of
    R_N, reduced by the commuting-pair cycles [a|b] - [b|a] (x) g for a, b in
    the centralizer of each class representative g, and by the image of
    1 - Psi where Psi is F on R and g -> g^p on G_r.
    """
    p = model.p
    if group.order % p or group.is_abelian:
        return AbelianGroupPresentation.trivial()
    n_eff = effective_precision(model, group)
    working = model.at_precision(n_eff)
    regular = p_regular_elements(group, p)
    presentation = homology(group, 2, CoefficientModule.conjugation(regular), max_order, primes=[p])
    orders = presentation.generator_orders
    if not orders:
        return AbelianGroupPresentation.trivial()
    d = working.dim
    rows = len(orders) * d
    eliminator = LocalEliminator(p, n_eff + 1, rows)
    col = 0
    for j, order in enumerate(orders):
        relation = p ** min(p_valuation(order, p), n_eff)
        for b in range(d):
            eliminator.add_column(col, {j * d + b: relation})
            col += 1
    cx = presentation.complex
    data = group.conjugacy
    pair_vectors = []
    for k in p_regular_classes(group, p):
        rep = data.reps[k]
        centralizer = group.centralizer(rep).member_set
        module_index = cx.module_index(rep)
        for a, b in commuting_pairs(group):
            if a in centralizer and b in centralizer:
                pair_vectors.append(pair_cycle_vector(cx, a, b, module_index))
    pair_coordinates = presentation.coordinates(pair_vectors) if pair_vectors else []
    for coords in pair_coordinates:
        for b in range(d):
            entries = {j * d + b: v for j, v in enumerate(coords) if v}
            if entries:
                eliminator.add_column(col, entries)
                col += 1
    psi = induced_psi_on_h(presentation, power=p)
    for j in range(len(orders)):
        image = psi.columns[j]
        for b in range(d):
            frobenius = working.frobenius_image(b)
            if frobenius is None:
                continue
            entries = {j * d + b: 1}
            for i, v in enumerate(image):
                if not v:
                    continue
                for b_out, f in frobenius.items():
                    key = i * d + b_out
                    entries[key] = entries.get(key, 0) - v * f
            eliminator.add_column(col, entries)
            col += 1
    return AbelianGroupPresentation.from_orders(eliminator.cokernel_factors(cap=n_eff))


def dual_path(model: RingModel, group: FiniteGroup, max_order: int = DEFAULT_MAX_ORDER_DEGREE2) -> dict:
    """Orbit formula against the direct covariants; a disagreement is reported, not raised."""
    report = sk1(model, group, max_order)
    direct = covariants_direct(model, group, max_order)
    agree = direct == report.total
    result = {"orbit_formula": report.total.to_dict(), "covariants": direct.to_dict(), "agree": agree}
    if not agree:
        result["discrepancy"] = (f"orbit formula gives {report.total}, covariants give {direct} "
                                 f"for {group.name} over {model.descriptor}")
    return result


def ring_comparison_sk1(pair: str, p: int, n: int, group: FiniteGroup, f: int = 1, d: int = 4,
                        max_order: int = DEFAULT_MAX_ORDER_DEGREE2) -> dict:
    """
    Lift the coinvariant comparison of a ring pair to SK1 of the group rings.

    Raises:
        VerificationError: If the SK1 groups contradict the coinvariant verdict
    """
    comparison: PairComparison = compare_pair(pair, p, n, f, d)
    source_descriptor, target_descriptor = pair_models(pair, p, n, f, d)
    source = sk1(source_descriptor.build(), group, max_order)
    target = sk1(target_descriptor.build(), group, max_order)
    verdict = comparison.at_window.verdict
    if verdict == "iso" and source.total != target.total:
        raise VerificationError(f"Isomorphic coinvariants but SK1 differs: {source.total} vs {target.total}")
    if verdict in ("iso", "injective-torsion-free-cokernel", "injective-only") \
            and target.total.order % source.total.order:
        raise VerificationError("Injective comparison but |SK1(S[G])| is not a multiple of |SK1(R[G])|")
    return {
        "pair": pair,
        "group": group.name,
        "expected_verdict": EXPECTED_VERDICTS[pair],
        "comparison": comparison.to_dict(),
        "sk1_source": source.total.to_dict(),
        "sk1_target": target.total.to_dict(),
        "consequence": comparison.at_window.consequence,
    }


@dataclass
class Certificate:
    """A checkable reason forcing SK1(R[G]) = 1."""
    kind: str
    detail: dict

    def to_dict(self) -> dict:
        """JSON-friendly representation."""
        return {"kind": self.kind, **self.detail}


def triviality_certificates(group: FiniteGroup, p: int) -> list[Certificate]:
    """Abelian, coprime order, abelian centralizers, and (p-groups) a normal abelian subgroup with cyclic quotient."""
    certificates = []
    if group.is_abelian:
        certificates.append(Certificate("abelian", {}))
    if group.order % p:
        certificates.append(Certificate("coprime-order", {"order": group.order}))
    data = group.conjugacy
    if all(group.centralizer(data.reps[k]).is_abelian for k in p_regular_classes(group, p)):
        certificates.append(Certificate("abelian-centralizers", {}))
    if group.is_p_group(p) and not group.is_abelian:
        witness = normal_abelian_cyclic_quotient_witness(group)
        if witness is not None:
            certificates.append(Certificate("normal-abelian-cyclic-quotient", {
                "subgroup": [group.names[g] for g in witness.members],
                "index": group.order // witness.order,
            }))
    return certificates


def certify(model: RingModel, group: FiniteGroup, max_order: int = DEFAULT_MAX_ORDER_DEGREE2,
            report: Optional[SK1Report] = None) -> dict:
    """
    Certificates for G with a soundness check against the orbit formula.

    Raises:
        VerificationError: If a certificate is present but SK1 is nontrivial
    """
    certificates = triviality_certificates(group, model.p)
    report = report or sk1(model, group, max_order)
    if certificates and not report.total.is_trivial:
        raise VerificationError(
            f"{group.name} has certificates {[c.kind for c in certificates]} but SK1 = {report.total}")
    return {
        "group": group.name,
        "p": model.p,
        "certificates": [c.to_dict() for c in certificates],
        "status": "forced-trivial" if certificates else "no forced triviality",
        "sk1": report.total.to_dict(),
    }
