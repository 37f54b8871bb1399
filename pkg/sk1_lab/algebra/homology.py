"""
Homology of finite groups in degrees 1 and 2 via the normalized bar complex.

Chains live in C_k = Z[(G - 1)^k] (x) M where M is a permutation module:
either the trivial module Z, or the module spanned by a conjugation-stable
set of elements (G acting by g.x = g x g^-1), optionally tensored with a
free ring of rank f and optionally truncated to Z/p^N coefficients.

The boundary is

    d[g1|...|gk](x)m = [g2|...|gk](x)m
                      + sum_i (-1)^i [g1|...|g_i g_{i+1}|...|gk](x)m
                      + (-1)^k [g1|...|g_{k-1}](x)g_k.m

with identity entries dropped. For a Z-free module H_k (k >= 1) is the
torsion of coker d_{k+1}; its p-part is read off a valuation-pivot
elimination over Z/p^E (see ``LocalEliminator``).
"""

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from math import gcd
from typing import Iterable, Optional, Sequence

from sympy import primefactors

from ..errors import InputError, SizeBoundError, VerificationError
from .abelian import AbelianGroupPresentation
from .groups import FiniteGroup, abelianization, p_regular_classes, p_regular_elements
from .smith import LocalEliminator, p_valuation

DEFAULT_MAX_ORDER_DEGREE2 = 32
HARD_MAX_ORDER_DEGREE2 = 64


@dataclass(frozen=True)
class CoefficientModule:
    """Permutation coefficient module, optionally truncated mod p^N and of ring rank f."""
    kind: str = "trivial"
    basis: tuple[int, ...] = (0,)
    prime: Optional[int] = None
    truncation: Optional[int] = None
    ring_rank: int = 1

    def __post_init__(self):
        if self.kind not in ("trivial", "conjugation"):
            raise InputError(f"Unknown coefficient module kind '{self.kind}'")
        if (self.prime is None) != (self.truncation is None):
            raise InputError("Truncated coefficients need both a prime and a precision")
        if self.truncation is not None and self.truncation < 1:
            raise InputError(f"Coefficient precision must be >= 1, got {self.truncation}")
        if self.ring_rank < 1:
            raise InputError(f"Ring rank must be >= 1, got {self.ring_rank}")
        if self.kind == "trivial" and self.basis != (0,):
            raise InputError("Trivial coefficient module has a single basis element")

    @classmethod
    def integers(cls) -> "CoefficientModule":
        """Trivial module Z."""
        return cls()

    @classmethod
    def trivial_mod(cls, p: int, n: int, ring_rank: int = 1) -> "CoefficientModule":
        """Trivial module Z/p^N (tensored with a rank-f free ring)."""
        return cls(prime=p, truncation=n, ring_rank=ring_rank)

    @classmethod
    def conjugation(cls, elements: Iterable[int], prime: Optional[int] = None,
                    truncation: Optional[int] = None, ring_rank: int = 1) -> "CoefficientModule":
        """Permutation module on a conjugation-stable element set."""
        return cls("conjugation", tuple(sorted(set(elements))), prime, truncation, ring_rank)

    @property
    def rank(self) -> int:
        """Rank as a free (Z or Z/p^N)-module."""
        return len(self.basis) * self.ring_rank

    @property
    def is_truncated(self) -> bool:
        """True for Z/p^N coefficients."""
        return self.truncation is not None

    def describe(self, group: FiniteGroup) -> dict:
        """JSON-friendly description."""
        return {
            "kind": self.kind,
            "basis": [group.names[x] for x in self.basis],
            "prime": self.prime,
            "truncation": self.truncation,
            "ring_rank": self.ring_rank,
        }


@dataclass
class BarChain:
    """Sparse chain {(bars, module index): coefficient}; identity entries are dropped."""
    degree: int
    entries: dict[tuple[tuple[int, ...], int], int] = field(default_factory=dict)

    def add(self, bars: Sequence[int], module_index: int, value: int) -> "BarChain":
        """Accumulate value on the basis element [bars](x)e_module_index."""
        bars = tuple(bars)
        if len(bars) != self.degree:
            raise InputError(f"Bar tuple {bars} does not have degree {self.degree}")
        if 0 in bars or not value:
            return self
        key = (bars, module_index)
        total = self.entries.get(key, 0) + value
        if total:
            self.entries[key] = total
        else:
            self.entries.pop(key, None)
        return self

    def is_zero(self) -> bool:
        """True when there are no entries."""
        return not self.entries


class BarComplex:
    """The normalized bar complex of a group with permutation coefficients."""

    def __init__(self, group: FiniteGroup, module: CoefficientModule):
        self.group = group
        self.module = module
        self.width = group.order - 1
        self._basis_pos = {x: i for i, x in enumerate(module.basis)}
        f = module.ring_rank
        action = []
        for g in group.elements:
            row = []
            for x in module.basis:
                image = x if module.kind == "trivial" else group.conjugate(x, g)
                if image not in self._basis_pos:
                    raise InputError("Coefficient basis is not closed under conjugation")
                base = self._basis_pos[image] * f
                row.extend(base + b for b in range(f))
            action.append(tuple(row))
        self.action = tuple(action)

    @property
    def rank(self) -> int:
        """Module rank per bar tuple."""
        return self.module.rank

    def size(self, k: int) -> int:
        """Number of basis elements of C_k."""
        if k < 0:
            return 0
        return self.width ** k * self.rank

    def module_index(self, element: int, ring_index: int = 0) -> int:
        """Index of element (x) ring basis vector in the module."""
        return self._basis_pos[element] * self.module.ring_rank + ring_index

    def module_element(self, module_index: int) -> tuple[int, int]:
        """(element, ring basis index) of a module index."""
        f = self.module.ring_rank
        return self.module.basis[module_index // f], module_index % f

    def index(self, bars: Sequence[int], module_index: int) -> int:
        """Mixed-radix index of [bars](x)e_m."""
        idx = 0
        for g in bars:
            idx = idx * self.width + (g - 1)
        return idx * self.rank + module_index

    def decode(self, idx: int, k: int) -> tuple[tuple[int, ...], int]:
        """Inverse of ``index``."""
        module_index = idx % self.rank
        idx //= self.rank
        bars = []
        for _ in range(k):
            bars.append(idx % self.width + 1)
            idx //= self.width
        return tuple(reversed(bars)), module_index

    def basis(self, k: int):
        """Iterate (bars, module index) in index order."""
        for bars in product(range(1, self.group.order), repeat=k):
            for m in range(self.rank):
                yield bars, m

    def boundary_column(self, bars: Sequence[int], module_index: int) -> dict[int, int]:
        """d_k of a single basis element as {index: coefficient}."""
        k = len(bars)
        mult = self.group.mult
        out: dict[int, int] = {}

        def add(new_bars, m, value):
            if 0 in new_bars:
                return
            i = self.index(new_bars, m)
            total = out.get(i, 0) + value
            if total:
                out[i] = total
            else:
                out.pop(i, None)

        add(bars[1:], module_index, 1)
        for i in range(k - 1):
            merged = tuple(bars[:i]) + (mult[bars[i]][bars[i + 1]],) + tuple(bars[i + 2:])
            add(merged, module_index, -1 if i % 2 == 0 else 1)
        add(bars[:-1], self.action[bars[-1]][module_index], -1 if k % 2 else 1)
        return out

    def boundary_columns(self, k: int):
        """Iterate the columns of d_k in index order."""
        for bars, m in self.basis(k):
            yield self.boundary_column(bars, m)

    def boundary(self, k: int) -> list[dict[int, int]]:
        """Matrix of d_k as a list of sparse columns (rows index C_{k-1})."""
        if not 1 <= k <= 3:
            raise InputError(f"Boundary degree must be 1, 2 or 3, got {k}")
        return list(self.boundary_columns(k))

    def apply_boundary(self, k: int, vector: dict[int, int], modulus: Optional[int] = None) -> dict[int, int]:
        """d_k applied to a sparse vector of C_k."""
        out: dict[int, int] = {}
        for idx, value in vector.items():
            if not value:
                continue
            bars, m = self.decode(idx, k)
            for row, coef in self.boundary_column(bars, m).items():
                out[row] = out.get(row, 0) + coef * value
        if modulus is not None:
            out = {r: v % modulus for r, v in out.items()}
        return {r: v for r, v in out.items() if v}

    def chain_vector(self, chain: BarChain) -> dict[int, int]:
        """Sparse vector of a BarChain."""
        vector: dict[int, int] = {}
        for (bars, m), value in chain.entries.items():
            if not 0 <= m < self.rank:
                raise InputError(f"Module index {m} out of range")
            idx = self.index(bars, m)
            vector[idx] = vector.get(idx, 0) + value
        return {i: v for i, v in vector.items() if v}


@dataclass
class PrimeComponent:
    """p-primary part of a homology group read off one elimination."""
    p: int
    exponent: int
    eliminator: LocalEliminator
    generators: list[tuple[int, int]]
    cap: Optional[int] = None

    @property
    def orders(self) -> list[int]:
        """Orders of the cyclic generators (after truncation)."""
        return [self.p ** self._exp(s) for _, s in self.generators]

    def _exp(self, s: int) -> int:
        return s if self.cap is None else min(s, self.cap)


@dataclass(eq=False)
class HomologyPresentation:
    """
    H_k(G, M) as a direct sum of cyclic p-primary summands.

    Coordinates of a class are taken per cyclic generator (primary
    decomposition), ordered prime by prime; ``group`` regroups the same
    orders into invariant factors.
    """
    group_obj: FiniteGroup
    degree: int
    module: CoefficientModule
    complex: BarComplex
    components: list[PrimeComponent]
    group: AbelianGroupPresentation
    coordinates_available: bool = True
    _representatives: dict[int, dict[int, int]] = field(default_factory=dict, repr=False)

    @cached_property
    def generator_orders(self) -> list[int]:
        """Order of every cyclic generator."""
        return [order for comp in self.components for order in comp.orders]

    def locate(self, j: int) -> tuple[PrimeComponent, int]:
        for comp in self.components:
            if j < len(comp.generators):
                return comp, j
            j -= len(comp.generators)
        raise IndexError(j)

    def is_cycle(self, vector: dict[int, int]) -> bool:
        """Whether d_k vector vanishes (mod p^N for truncated coefficients)."""
        modulus = self.module.prime ** self.module.truncation if self.module.is_truncated else None
        return not self.complex.apply_boundary(self.degree, vector, modulus)

    def coordinates(self, vectors: list[dict[int, int]],
                    component: Optional[PrimeComponent] = None) -> list[tuple[int, ...]]:
        """
        Class coordinates of cycles given as sparse vectors (no cycle check).

        With ``component`` given, only that prime is read and the other
        coordinates are zero; vectors that are cycles only mod p^E use this.
        """
        if not self.coordinates_available:
            raise InputError("Class coordinates are not available for degree-2 truncated coefficients")
        out = [[] for _ in vectors]
        for comp in self.components:
            if component is not None and comp is not component:
                for k in range(len(vectors)):
                    out[k].extend(0 for _ in comp.generators)
                continue
            transformed = comp.eliminator.transform(vectors)
            for k, vec in enumerate(transformed):
                for (row, _), order in zip(comp.generators, comp.orders):
                    out[k].append(vec.get(row, 0) % order)
        return [tuple(c) for c in out]

    def class_of_vector(self, vector: dict[int, int]) -> "HomologyClass":
        """Class of a sparse cycle vector; the cycle condition is checked."""
        if not self.is_cycle(vector):
            raise InputError("Chain is not a cycle")
        return HomologyClass(self, self.coordinates([vector])[0])

    def zero(self) -> "HomologyClass":
        """The zero class."""
        return HomologyClass(self, tuple(0 for _ in self.generator_orders))

    def cycle_representative(self, j: int) -> dict[int, int]:
        """
        A cycle (mod p^E) whose class is the j-th generator.

        The lifted cokernel generator is corrected by lifts of free rows so
        that its boundary vanishes.
        """
        if j in self._representatives:
            return self._representatives[j]
        comp, local = self.locate(j)
        eliminator = comp.eliminator
        modulus = eliminator.modulus
        row, _ = comp.generators[local]
        vector = eliminator.lift(row)
        residual = self.complex.apply_boundary(self.degree, vector, modulus)
        if residual:
            free_rows = eliminator.free_rows
            lifts = [eliminator.lift(f) for f in free_rows]
            solver = LocalEliminator(comp.p, comp.exponent, self.complex.size(self.degree - 1), keep_pivot_rows=True)
            for col, lifted in enumerate(lifts):
                solver.add_column(col, self.complex.apply_boundary(self.degree, lifted, modulus))
            solution = solver.solve({r: -v for r, v in residual.items()})
            if solution is None:
                raise VerificationError(f"No cycle representative for generator {j}")
            for col, coef in solution.items():
                for idx, value in lifts[col].items():
                    vector[idx] = (vector.get(idx, 0) + coef * value) % modulus
            vector = {i: v for i, v in vector.items() if v}
        self._representatives[j] = vector
        return vector

    def to_dict(self) -> dict:
        """JSON-friendly summary: generators, relation shape and invariant factors."""
        generators = []
        for comp in self.components:
            for (row, s), order in zip(comp.generators, comp.orders):
                bars, m = self.complex.decode(row, self.degree)
                element, ring_index = self.complex.module_element(m)
                generators.append({
                    "prime": comp.p,
                    "order": order,
                    "row": row,
                    "bars": [self.group_obj.names[g] for g in bars],
                    "module": self.group_obj.names[element],
                    "ring_index": ring_index,
                })
        return {
            "degree": self.degree,
            "module": self.module.describe(self.group_obj),
            "relations": {
                "rows": self.complex.size(self.degree),
                "columns": self.complex.size(self.degree + 1),
            },
            "generators": generators,
            "group": self.group.to_dict(),
        }


@dataclass(frozen=True)
class HomologyClass:
    """A homology class as coordinates reduced mod the generator orders."""
    presentation: HomologyPresentation
    coordinates: tuple[int, ...]

    def __post_init__(self):
        orders = self.presentation.generator_orders
        object.__setattr__(self, 'coordinates',
                           tuple(c % o for c, o in zip(self.coordinates, orders)))

    def is_zero(self) -> bool:
        """True for the zero class."""
        return not any(self.coordinates)

    def __add__(self, other: "HomologyClass") -> "HomologyClass":
        return HomologyClass(self.presentation, tuple(a + b for a, b in zip(self.coordinates, other.coordinates)))

    def __sub__(self, other: "HomologyClass") -> "HomologyClass":
        return HomologyClass(self.presentation, tuple(a - b for a, b in zip(self.coordinates, other.coordinates)))

    def __neg__(self) -> "HomologyClass":
        return HomologyClass(self.presentation, tuple(-a for a in self.coordinates))

    def scale(self, factor: int) -> "HomologyClass":
        """Multiply by an integer."""
        return HomologyClass(self.presentation, tuple(factor * a for a in self.coordinates))


def bar_boundary(group: FiniteGroup, k: int, module: Optional[CoefficientModule] = None) -> list[dict[int, int]]:
    """Matrix of d_k on the normalized bar complex, as sparse columns."""
    return BarComplex(group, module or CoefficientModule.integers()).boundary(k)


def compose_is_zero(first: list[dict[int, int]], second: list[dict[int, int]]) -> bool:
    """Whether first o second vanishes (first: C_{k-1} <- C_k, second: C_k <- C_{k+1})."""
    for column in second:
        total: dict[int, int] = {}
        for mid, value in column.items():
            for row, coef in first[mid].items():
                total[row] = total.get(row, 0) + coef * value
        if any(total.values()):
            return False
    return True


def _check_size(group: FiniteGroup, degree: int, max_order: int) -> None:
    if degree == 2 and group.order > max_order:
        raise SizeBoundError(
            f"Degree-2 homology of {group.name} (order {group.order}) exceeds the size bound {max_order}")


def _prime_component(cx: BarComplex, degree: int, p: int, exponent: int,
                     cap: Optional[int]) -> PrimeComponent:
    eliminator = LocalEliminator(p, exponent, cx.size(degree))
    eliminator.add_columns(cx.boundary_columns(degree + 1))
    eliminator.eliminate()
    generators = sorted((row, s) for row, s in eliminator.pivots.items() if s > 0)
    return PrimeComponent(p, exponent, eliminator, generators, cap)


def homology(group: FiniteGroup, degree: int, module: Optional[CoefficientModule] = None,
             max_order: int = DEFAULT_MAX_ORDER_DEGREE2,
             primes: Optional[Sequence[int]] = None) -> HomologyPresentation:
    """
    H_degree(G, M) for degree 1 or 2.

    Args:
        group: The group
        degree: 1 or 2
        module: Coefficient module (trivial Z by default)
        max_order: Size bound for degree-2 computations
        primes: Restrict an integral computation to these primes

    Raises:
        InputError: For unsupported degrees
        SizeBoundError: If the group exceeds the degree-2 bound
    """
    module = module or CoefficientModule.integers()
    if degree not in (1, 2):
        raise InputError(f"Homology degree must be 1 or 2, got {degree}")
    _check_size(group, degree, max_order)
    cx = BarComplex(group, module)
    if module.is_truncated and degree == 2:
        return _truncated_degree_two(group, module, cx, max_order)
    if module.is_truncated:
        candidates = [module.prime]
    else:
        candidates = primefactors(group.order)
        if primes is not None:
            candidates = [p for p in candidates if p in set(primes)]
    components = []
    for p in candidates:
        e = p_valuation(group.order, p) if group.order > 1 else 0
        if e == 0:
            continue
        exponent = 2 * e + 1
        cap = None
        if module.is_truncated:
            exponent = max(exponent, module.truncation)
            cap = module.truncation
        components.append(_prime_component(cx, degree, p, exponent, cap))
    orders = [order for comp in components for order in comp.orders]
    return HomologyPresentation(group, degree, module, cx, components,
                                AbelianGroupPresentation.from_orders(orders))


def _truncated_degree_two(group: FiniteGroup, module: CoefficientModule, cx: BarComplex,
                          max_order: int) -> HomologyPresentation:
    """H2(M/p^N) = H2(M) (x) Z/p^N + Tor(H1(M), Z/p^N); the group only."""
    p, n = module.prime, module.truncation
    integral = CoefficientModule(module.kind, module.basis, None, None, module.ring_rank)
    h2 = homology(group, 2, integral, max_order, primes=[p])
    h1 = homology(group, 1, integral, max_order, primes=[p])
    cap = p ** n
    orders = [min(o, cap) for o in h2.generator_orders] + [min(o, cap) for o in h1.generator_orders]
    return HomologyPresentation(group, 2, module, cx, [], AbelianGroupPresentation.from_orders(orders),
                                coordinates_available=False)


def class_of_cycle(presentation: HomologyPresentation, chain: BarChain) -> HomologyClass:
    """
    Coordinates of a cycle in the presentation's generators.

    Raises:
        InputError: If the chain is not a cycle or has the wrong degree
    """
    if chain.degree != presentation.degree:
        raise InputError(f"Chain degree {chain.degree} does not match homology degree {presentation.degree}")
    return presentation.class_of_vector(presentation.complex.chain_vector(chain))


def exterior_square(group: AbelianGroupPresentation) -> AbelianGroupPresentation:
    """Lambda^2 of a finite abelian group, the closed-form oracle for H2 of abelian groups."""
    return group.exterior_square()


# ---------------------------------------------------------------------------
# Commuting-pair span
# ---------------------------------------------------------------------------

def commuting_pairs(group: FiniteGroup) -> list[tuple[int, int]]:
    """Pairs a < b of commuting non-identity elements."""
    mult = group.mult
    return [(a, b) for a in range(1, group.order) for b in range(a + 1, group.order) if mult[a][b] == mult[b][a]]


def pair_cycle_vector(cx: BarComplex, a: int, b: int, module_index: int = 0) -> dict[int, int]:
    """Sparse vector of [a|b](x)m - [b|a](x)m."""
    return {cx.index((a, b), module_index): 1, cx.index((b, a), module_index): -1}


def _subgroup_structure(p: int, orders: list[int], vectors: list[list[int]]) -> tuple[list[int], list[int]]:
    """
    Quotient and subgroup structure for the span of ``vectors`` in sum Z/orders.

    Returns:
        Tuple ``(quotient_orders, subgroup_orders)``
    """
    if not orders:
        return [], []
    exps = [p_valuation(o, p) for o in orders]
    top = max(exps)

    def quotient_order(multiplier: int) -> tuple[int, list[int]]:
        eliminator = LocalEliminator(p, top + 1, len(orders))
        col = 0
        for i, o in enumerate(orders):
            eliminator.add_column(col, {i: o})
            col += 1
        for vec in vectors:
            entries = {i: multiplier * v for i, v in enumerate(vec) if multiplier * v % orders[i]}
            if entries:
                eliminator.add_column(col, entries)
                col += 1
        factors = eliminator.cokernel_factors()
        size = 1
        for f in factors:
            size *= f
        return size, factors

    total = 1
    for o in orders:
        total *= o
    _, quotient = quotient_order(1)
    span_sizes = [total // quotient_order(p ** i)[0] for i in range(top + 1)] + [1]
    counts = [p_valuation(span_sizes[i] // span_sizes[i + 1], p) if span_sizes[i] > span_sizes[i + 1] else 0
              for i in range(top + 1)]
    subgroup = []
    for i in range(top + 1):
        exact = counts[i] - (counts[i + 1] if i + 1 <= top else 0)
        subgroup.extend([p ** (i + 1)] * exact)
    return quotient, subgroup


@dataclass
class H2AbResult:
    """H2(G,Z), its commuting-pair subgroup H2^ab and the quotient H2-bar."""
    h2: HomologyPresentation
    h2_ab: AbelianGroupPresentation
    h2_bar: AbelianGroupPresentation
    pair_count: int

    def to_dict(self) -> dict:
        """JSON-friendly summary."""
        return {
            "h2": self.h2.group.to_dict(),
            "h2_ab": self.h2_ab.to_dict(),
            "h2_bar": self.h2_bar.to_dict(),
            "commuting_pairs": self.pair_count,
        }


def h2_ab(group: FiniteGroup, max_order: int = DEFAULT_MAX_ORDER_DEGREE2,
          primes: Optional[Sequence[int]] = None) -> H2AbResult:
    """
    The span of commuting-pair cycles [a|b] - [b|a] inside H2(G,Z), and the quotient.

    In homology the corestriction from an abelian subgroup A is induced by
    inclusion, H2(A,Z) = A ^ A is spanned by a ^ b, and [a|b] - [b|a]
    represents a ^ b; so the commuting-pair span equals the span of the
    images of all abelian subgroups.
    """
    h2 = homology(group, 2, CoefficientModule.integers(), max_order, primes)
    pairs = commuting_pairs(group)
    if not h2.generator_orders:
        trivial = AbelianGroupPresentation.trivial()
        return H2AbResult(h2, trivial, trivial, len(pairs))
    vectors = [pair_cycle_vector(h2.complex, a, b) for a, b in pairs]
    coords = h2.coordinates(vectors)
    quotient_orders, sub_orders = [], []
    offset = 0
    for comp in h2.components:
        width = len(comp.generators)
        local = [list(c[offset:offset + width]) for c in coords]
        quotient, sub = _subgroup_structure(comp.p, comp.orders, local)
        quotient_orders += quotient
        sub_orders += sub
        offset += width
    return H2AbResult(h2, AbelianGroupPresentation.from_orders(sub_orders),
                      AbelianGroupPresentation.from_orders(quotient_orders), len(pairs))


def h2_bar(group: FiniteGroup, p: Optional[int] = None,
           max_order: int = DEFAULT_MAX_ORDER_DEGREE2) -> AbelianGroupPresentation:
    """H2-bar(G,Z), or its p-part when p is given; abelian groups short-circuit to 0."""
    if group.is_abelian or group.order == 1:
        return AbelianGroupPresentation.trivial()
    if p is not None and group.order % p:
        return AbelianGroupPresentation.trivial()
    return h2_ab(group, max_order, primes=None if p is None else [p]).h2_bar


# ---------------------------------------------------------------------------
# Shapiro decomposition in degree 1
# ---------------------------------------------------------------------------

@dataclass
class ShapiroComponent:
    """One summand G_i^ab (x) Z/p^N of the Shapiro decomposition."""
    class_index: int
    representative: int
    centralizer_order: int
    orders: list[int]
    generators: list[int]


@dataclass
class ShapiroDecomposition:
    """Oracle sum over p-regular classes, the direct presentation and the identification."""
    group: AbelianGroupPresentation
    components: list[ShapiroComponent]
    direct: HomologyPresentation
    identification: list[tuple[int, ...]]
    is_isomorphism: bool

    def to_dict(self, group: FiniteGroup) -> dict:
        """JSON-friendly summary."""
        return {
            "group": self.group.to_dict(),
            "direct": self.direct.group.to_dict(),
            "is_isomorphism": self.is_isomorphism,
            "components": [
                {
                    "class": c.class_index,
                    "representative": group.names[c.representative],
                    "centralizer_order": c.centralizer_order,
                    "orders": c.orders,
                }
                for c in self.components
            ],
        }


def regular_module(group: FiniteGroup, p: int, n: Optional[int] = None, ring_rank: int = 1) -> CoefficientModule:
    """The conjugation permutation module on G_r (p-regular elements)."""
    return CoefficientModule.conjugation(p_regular_elements(group, p), p if n is not None else None, n, ring_rank)


def shapiro_h1(group: FiniteGroup, p: int, n: int) -> ShapiroDecomposition:
    """
    H1(G, Z/p^N[G_r]) as the sum over p-regular classes of G_i^ab (x) Z/p^N.

    The identification sends the j-th generator of the component of g_i
    to the class of [h_j](x)g_i, where h_j is an element of the centralizer
    G_i projecting to the j-th basis vector of G_i^ab.
    """
    cap = p ** n
    components = []
    oracle_orders = []
    for class_index in p_regular_classes(group, p):
        rep = group.conjugacy.reps[class_index]
        cent = group.centralizer(rep)
        ab, projection = abelianization(cent.as_group())
        orders, generators = [], []
        for j, d in enumerate(ab.torsion):
            order = gcd(d, cap)
            if order == 1:
                continue
            target = tuple(int(i == j) for i in range(len(ab.torsion)))
            local = next(x for x in range(cent.order) if projection(x) == target)
            orders.append(order)
            generators.append(cent.members[local])
        components.append(ShapiroComponent(class_index, rep, cent.order, orders, generators))
        oracle_orders += orders
    direct = homology(group, 1, regular_module(group, p, n))
    vectors = []
    for comp in components:
        for h in comp.generators:
            vectors.append({direct.complex.index((h,), direct.complex.module_index(comp.representative)): 1})
    for vector in vectors:
        if not direct.is_cycle(vector):
            raise VerificationError("Shapiro generator is not a cycle")
    identification = direct.coordinates(vectors) if vectors else []
    oracle = AbelianGroupPresentation.from_orders(oracle_orders)
    iso = oracle == direct.group and _spans(p, direct.generator_orders, identification)
    return ShapiroDecomposition(oracle, components, direct, identification, iso)


def _spans(p: int, orders: list[int], vectors: list[tuple[int, ...]]) -> bool:
    """Whether the vectors generate sum Z/orders."""
    if not orders:
        return True
    quotient, _ = _subgroup_structure(p, orders, [list(v) for v in vectors])
    return not quotient


# ---------------------------------------------------------------------------
# Induced maps
# ---------------------------------------------------------------------------

@dataclass
class InducedMap:
    """Matrix of an endomorphism of a homology presentation (columns are images of generators)."""
    presentation: HomologyPresentation
    columns: list[tuple[int, ...]]

    def apply(self, cls: HomologyClass) -> HomologyClass:
        """Image of a class."""
        orders = self.presentation.generator_orders
        image = [0] * len(orders)
        for j, c in enumerate(cls.coordinates):
            if c:
                for i, v in enumerate(self.columns[j]):
                    image[i] += c * v
        return HomologyClass(self.presentation, tuple(image))

    def compose(self, other: "InducedMap") -> "InducedMap":
        """self o other."""
        columns = []
        for column in other.columns:
            columns.append(self.apply(HomologyClass(self.presentation, column)).coordinates)
        return InducedMap(self.presentation, columns)

    def matrix(self) -> list[list[int]]:
        """Row-major matrix."""
        n = len(self.columns)
        return [[self.columns[j][i] for j in range(n)] for i in range(n)]


def chain_power_map(cx: BarComplex, vector: dict[int, int], degree: int, power: int,
                    frobenius: Sequence[Sequence[int]], modulus: Optional[int] = None) -> dict[int, int]:
    """
    Apply the chain map that is the identity on bars and x (x) b -> sum_b' F[b'][b] x^power (x) b'.
    """
    group = cx.group
    f = cx.module.ring_rank
    out: dict[int, int] = {}
    for idx, value in vector.items():
        bars, m = cx.decode(idx, degree)
        element, b = cx.module_element(m)
        target = group.power(element, power) if cx.module.kind == "conjugation" else element
        for b_out in range(f):
            coef = frobenius[b_out][b]
            if coef:
                j = cx.index(bars, cx.module_index(target, b_out))
                out[j] = out.get(j, 0) + coef * value
    if modulus is not None:
        out = {k: v % modulus for k, v in out.items()}
    return {k: v for k, v in out.items() if v}


def induced_psi_on_h(presentation: HomologyPresentation, frobenius: Optional[Sequence[Sequence[int]]] = None,
                     power: Optional[int] = None, boundary_sample: int = 32) -> InducedMap:
    """
    Matrix of the map induced on homology by identity-on-bars and Psi on coefficients.

    Args:
        presentation: Homology with conjugation-module coefficients on G_r
        frobenius: f x f matrix of F on the ring basis (identity if omitted)
        power: Exponent of the element map (the prime by default)
        boundary_sample: Number of boundary columns checked to map to zero classes

    Raises:
        VerificationError: If images of cycles are not cycles or boundaries do not map to zero
    """
    cx = presentation.complex
    module = presentation.module
    p = module.prime if module.prime is not None else (presentation.components[0].p if presentation.components else 2)
    power = p if power is None else power
    f = module.ring_rank
    frobenius = frobenius or [[int(i == j) for j in range(f)] for i in range(f)]
    if module.kind == "conjugation":
        basis = set(module.basis)
        if any(presentation.group_obj.power(x, power) not in basis for x in module.basis):
            raise InputError("The power map does not preserve the coefficient basis")
    degree = presentation.degree
    columns = []
    for j in range(len(presentation.generator_orders)):
        comp, _ = presentation.locate(j)
        representative = presentation.cycle_representative(j)
        image = chain_power_map(cx, representative, degree, power, frobenius, comp.eliminator.modulus)
        if cx.apply_boundary(degree, image, comp.eliminator.modulus):
            raise VerificationError("Induced map does not send cycles to cycles")
        columns.append(presentation.coordinates([image], comp)[0])
    if presentation.components:
        checked = 0
        for column in cx.boundary_columns(degree + 1):
            if checked >= boundary_sample:
                break
            if not column:
                continue
            image = chain_power_map(cx, column, degree, power, frobenius)
            if any(presentation.coordinates([image])[0]):
                raise VerificationError("Induced map does not send boundaries to zero")
            checked += 1
    return InducedMap(presentation, columns)
