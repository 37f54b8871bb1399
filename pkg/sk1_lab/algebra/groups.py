"""
Finite groups as dense multiplication tables.

Every group is expanded to a full table at load time (target scale
|G| <= 64) so that downstream algorithms get constant-time products.
Element 0 is always the identity; conjugacy class representatives are the
minimal element index of each class.
"""

import hashlib
import re
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from math import lcm
from typing import Any, Callable, Hashable, Iterable, Optional, Sequence

from sympy.combinatorics import Permutation, PermutationGroup
from sympy.combinatorics.named_groups import AlternatingGroup, SymmetricGroup
from sympy import isprime

from ..errors import InputError, SizeBoundError
from .abelian import AbelianGroupPresentation
from .smith import smith_normal_form

MAX_GROUP_ORDER = 64


@dataclass(frozen=True)
class ConjugacyData:
    """Conjugacy classes: class of every element, minimal representatives and class sizes."""
    class_of: tuple[int, ...]
    reps: tuple[int, ...]
    class_sizes: tuple[int, ...]
    members: tuple[tuple[int, ...], ...]

    @property
    def count(self) -> int:
        """Number of conjugacy classes."""
        return len(self.reps)


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """A finite group given by its multiplication table; element 0 is the identity."""
    name: str
    mult: tuple[tuple[int, ...], ...]
    names: tuple[str, ...]

    @property
    def order(self) -> int:
        """Number of elements."""
        return len(self.mult)

    @property
    def identity(self) -> int:
        """Index of the identity element."""
        return 0

    @property
    def elements(self) -> range:
        """All element indices."""
        return range(self.order)

    @cached_property
    def inv(self) -> tuple[int, ...]:
        """Inverse of every element."""
        inverse = [0] * self.order
        for g, row in enumerate(self.mult):
            inverse[g] = row.index(0)
        return tuple(inverse)

    @cached_property
    def fingerprint(self) -> str:
        """Content hash of the multiplication table, used as a cache key."""
        digest = hashlib.sha256(repr(self.mult).encode("utf-8"))
        return digest.hexdigest()[:16]

    def mul(self, g: int, h: int) -> int:
        """Product gh."""
        return self.mult[g][h]

    def power(self, g: int, n: int) -> int:
        """g^n for any integer n."""
        if n < 0:
            g, n = self.inv[g], -n
        result, base = 0, g
        while n:
            if n & 1:
                result = self.mult[result][base]
            base = self.mult[base][base]
            n >>= 1
        return result

    def conjugate(self, g: int, h: int) -> int:
        """h g h^-1."""
        return self.mult[self.mult[h][g]][self.inv[h]]

    def commutator(self, g: int, h: int) -> int:
        """g h g^-1 h^-1."""
        return self.mult[self.mult[self.mult[g][h]][self.inv[g]]][self.inv[h]]

    @cached_property
    def element_orders(self) -> tuple[int, ...]:
        """Order of every element."""
        orders = []
        for g in self.elements:
            n, x = 1, g
            while x != 0:
                x = self.mult[x][g]
                n += 1
            orders.append(n)
        return tuple(orders)

    def element_order(self, g: int) -> int:
        """Order of g."""
        return self.element_orders[g]

    @cached_property
    def exponent(self) -> int:
        """Least common multiple of element orders."""
        return lcm(*set(self.element_orders))

    @cached_property
    def is_abelian(self) -> bool:
        """True when all elements commute."""
        return all(self.mult[g][h] == self.mult[h][g] for g in self.elements for h in range(g))

    def is_p_group(self, p: int) -> bool:
        """True when the order is a power of p (the trivial group included)."""
        n = self.order
        while n % p == 0:
            n //= p
        return n == 1

    def index_of(self, name: str) -> int:
        """Element index for an element name."""
        try:
            return self.names.index(name)
        except ValueError as ex:
            raise InputError(f"Group {self.name} has no element named '{name}'") from ex

    @cached_property
    def conjugacy(self) -> ConjugacyData:
        """Conjugacy classes with minimal-index representatives."""
        class_of = [-1] * self.order
        reps, sizes, members = [], [], []
        for g in self.elements:
            if class_of[g] >= 0:
                continue
            orbit = sorted({self.conjugate(g, h) for h in self.elements})
            for x in orbit:
                class_of[x] = len(reps)
            reps.append(g)
            sizes.append(len(orbit))
            members.append(tuple(orbit))
        return ConjugacyData(tuple(class_of), tuple(reps), tuple(sizes), tuple(members))

    def closure(self, generators: Iterable[int]) -> tuple[int, ...]:
        """Sorted members of the subgroup generated by ``generators``."""
        generators = [g for g in generators if g != 0]
        seen = {0}
        queue = deque([0])
        while queue:
            x = queue.popleft()
            for s in generators:
                y = self.mult[x][s]
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return tuple(sorted(seen))

    @cached_property
    def generators(self) -> tuple[int, ...]:
        """A small generating set chosen greedily in element order."""
        chosen: list[int] = []
        span = {0}
        for g in self.elements:
            if g not in span:
                chosen.append(g)
                span = set(self.closure(chosen))
                if len(span) == self.order:
                    break
        return tuple(chosen)

    def centralizer(self, g: int) -> "Subgroup":
        """Subgroup of elements commuting with g."""
        return Subgroup(self, tuple(h for h in self.elements if self.mult[h][g] == self.mult[g][h]))

    @cached_property
    def center(self) -> "Subgroup":
        """Elements commuting with everything."""
        data = self.conjugacy
        return Subgroup(self, tuple(g for g in self.elements if data.class_sizes[data.class_of[g]] == 1))

    def describe(self) -> dict:
        """JSON-friendly summary."""
        return {"name": self.name, "order": self.order, "fingerprint": self.fingerprint}


@dataclass(frozen=True, eq=False)
class Subgroup:
    """A subgroup of a parent group given by its sorted member indices."""
    parent: FiniteGroup
    members: tuple[int, ...]

    @property
    def order(self) -> int:
        """Number of members."""
        return len(self.members)

    def __contains__(self, g: int) -> bool:
        return g in self.member_set

    @cached_property
    def member_set(self) -> frozenset[int]:
        """Members as a frozenset."""
        return frozenset(self.members)

    @cached_property
    def is_abelian(self) -> bool:
        """True when members pairwise commute."""
        mult = self.parent.mult
        return all(mult[a][b] == mult[b][a] for a in self.members for b in self.members if a < b)

    def is_normal(self) -> bool:
        """True when closed under conjugation by the parent."""
        return all(self.parent.conjugate(a, g) in self.member_set
                   for a in self.members for g in self.parent.generators)

    def as_group(self, name: Optional[str] = None) -> FiniteGroup:
        """The subgroup as a standalone FiniteGroup; local index i is parent element members[i]."""
        local = {g: i for i, g in enumerate(self.members)}
        mult = tuple(tuple(local[self.parent.mult[a][b]] for b in self.members) for a in self.members)
        names = tuple(self.parent.names[g] for g in self.members)
        return FiniteGroup(name or f"{self.parent.name}[{len(self.members)}]", mult, names)


def conjugacy_classes(group: FiniteGroup) -> ConjugacyData:
    """Orbit partition under conjugation with minimal-index representatives."""
    return group.conjugacy


def centralizer(group: FiniteGroup, g: int) -> Subgroup:
    """Centralizer of g."""
    return group.centralizer(g)


def p_parts(group: FiniteGroup, g: int, p: int) -> tuple[int, int]:
    """
    Split g = g_r g_p into commuting prime-to-p and p-power parts.

    Returns:
        Tuple ``(g_r, g_p)``
    """
    n = group.element_order(g)
    p_power, m = 1, n
    while m % p == 0:
        m //= p
        p_power *= p
    if p_power == 1:
        return g, 0
    if m == 1:
        return 0, g
    g_p = group.power(g, m * pow(m, -1, p_power))
    g_r = group.power(g, p_power * pow(p_power, -1, m))
    return g_r, g_p


def p_regular_classes(group: FiniteGroup, p: int) -> tuple[int, ...]:
    """Classes whose representatives have order prime to p."""
    data = group.conjugacy
    return tuple(c for c, rep in enumerate(data.reps) if group.element_order(rep) % p)


def p_regular_elements(group: FiniteGroup, p: int) -> tuple[int, ...]:
    """Elements of order prime to p (the set G_r)."""
    return tuple(g for g in group.elements if group.element_order(g) % p)


def _check_central_of_order(group: FiniteGroup, c: int, p: int) -> None:
    if not isprime(p):
        raise InputError(f"{p} is not prime")
    if group.element_order(c) != p:
        raise InputError(f"Element {group.names[c]} has order {group.element_order(c)}, expected {p}")
    if c not in group.center:
        raise InputError(f"Element {group.names[c]} is not central in {group.name}")


def special_set_S(group: FiniteGroup, c: int, p: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """
    Elements g with c^m g conjugate to g for every m, and the classes they form.

    Returns:
        Tuple ``(S_G, D_G)`` of element indices and class indices
    """
    _check_central_of_order(group, c, p)
    class_of = group.conjugacy.class_of
    powers = [group.power(c, m) for m in range(1, p)]
    members = tuple(g for g in group.elements
                    if all(class_of[group.mult[cm][g]] == class_of[g] for cm in powers))
    classes = tuple(sorted({class_of[g] for g in members}))
    return members, classes


def is_commutator(group: FiniteGroup, c: int) -> bool:
    """Whether c = g h g^-1 h^-1 for some g, h."""
    return any(group.commutator(g, h) == c for g in group.elements for h in group.elements)


def central_translation_is_free(group: FiniteGroup, c: int) -> bool:
    """Whether multiplication by central c moves every conjugacy class."""
    if c not in group.center:
        raise InputError(f"Element {group.names[c]} is not central in {group.name}")
    data = group.conjugacy
    return all(data.class_of[group.mult[c][rep]] != k for k, rep in enumerate(data.reps))


def commutator_subgroup(group: FiniteGroup) -> Subgroup:
    """[G,G] by closure of all commutators."""
    commutators = {group.commutator(g, h) for g in group.elements for h in group.elements}
    return Subgroup(group, group.closure(commutators))


def abelianization(group: FiniteGroup) -> tuple[AbelianGroupPresentation, Callable[[int], tuple[int, ...]]]:
    """
    G/[G,G] from the Smith normal form of the Cayley relation lattice.

    The free abelian group on the elements modulo [g] + [s] = [gs] for a
    generating set of s is G/[G,G]; the column transform of the Smith form
    gives coordinates of every element.

    Returns:
        Tuple ``(presentation, projection)`` where ``projection(g)`` is the
        coordinate vector of g modulo the invariant factors
    """
    n = group.order
    rows = []
    for s in group.generators:
        for g in group.elements:
            row = [0] * n
            row[g] += 1
            row[s] += 1
            row[group.mult[g][s]] -= 1
            rows.append(row)
    if not rows:
        rows = [[1] + [0] * (n - 1)]
    diagonal, transform = smith_normal_form(rows, n)
    kept = [(t, d) for t, d in enumerate(diagonal) if d > 1]
    presentation = AbelianGroupPresentation(free_rank=0, torsion=tuple(d for _, d in kept))
    table = tuple(tuple(transform[g][t] % d for t, d in kept) for g in group.elements)

    def projection(g: int) -> tuple[int, ...]:
        return table[g]

    return presentation, projection


def _cyclic_quotient(group: FiniteGroup, subgroup: Subgroup) -> bool:
    index = group.order // subgroup.order
    if index == 1:
        return True
    for x in group.elements:
        y, k = x, 1
        while y not in subgroup:
            y = group.mult[y][x]
            k += 1
        if k == index:
            return True
    return False


def abelian_cyclic_quotient_subgroups(group: FiniteGroup) -> list[Subgroup]:
    """
    Every abelian subgroup A containing [G,G] with G/A cyclic.

    Such A is automatically normal. The scan grows abelian subgroups from
    [G,G] by adjoining centralizing elements.
    """
    derived = commutator_subgroup(group)
    if not derived.is_abelian:
        return []
    found: dict[tuple[int, ...], Subgroup] = {}
    stack = [derived.members]
    seen = {derived.members}
    while stack:
        members = stack.pop()
        subgroup = Subgroup(group, members)
        if _cyclic_quotient(group, subgroup):
            found[members] = subgroup
        member_set = subgroup.member_set
        for g in group.elements:
            if g in member_set or any(group.mult[g][a] != group.mult[a][g] for a in members):
                continue
            grown = group.closure(members + (g,))
            if grown not in seen:
                seen.add(grown)
                stack.append(grown)
    return [found[key] for key in sorted(found)]


def normal_abelian_cyclic_quotient_witness(group: FiniteGroup) -> Optional[Subgroup]:
    """
    A normal abelian subgroup with cyclic quotient, or None.

    Preference: largest order, then containing an element of maximal order,
    then lexicographically smallest member list.
    """
    if group.is_abelian:
        return Subgroup(group, tuple(group.elements))
    candidates = abelian_cyclic_quotient_subgroups(group)
    if not candidates:
        return None

    def preference(subgroup: Subgroup):
        top = max(group.element_order(a) for a in subgroup.members)
        return (-subgroup.order, -top, subgroup.members)

    return min(candidates, key=preference)


# ---------------------------------------------------------------------------
# Construction
# ---------------------------------------------------------------------------

def _from_elements(name: str, elements: Sequence[Hashable], op: Callable[[Any, Any], Any],
                   namer: Callable[[Any], str]) -> FiniteGroup:
    """Tabulate a group from an element list whose first entry is the identity."""
    if len(elements) > MAX_GROUP_ORDER:
        raise SizeBoundError(f"Group {name} has order {len(elements)}, above the limit {MAX_GROUP_ORDER}")
    index = {x: i for i, x in enumerate(elements)}
    if len(index) != len(elements):
        raise InputError(f"Group {name} has repeated elements")
    try:
        mult = tuple(tuple(index[op(a, b)] for b in elements) for a in elements)
    except KeyError as ex:
        raise InputError(f"Group {name} is not closed under multiplication") from ex
    return FiniteGroup(name, mult, tuple(namer(x) for x in elements))


def _power_name(symbol: str, k: int) -> str:
    if k == 0:
        return ""
    return symbol if k == 1 else f"{symbol}^{k}"


def cyclic_group(n: int) -> FiniteGroup:
    """C_n with generator a."""
    if n < 1:
        raise InputError(f"Cyclic group order must be positive, got {n}")
    return _from_elements(f"C{n}", list(range(n)), lambda a, b: (a + b) % n,
                          lambda k: _power_name("a", k) or "e")


def dihedral_group(order: int) -> FiniteGroup:
    """Dihedral group of the given (even) order, elements r^k s^e."""
    if order < 2 or order % 2:
        raise InputError(f"Dihedral group order must be even and >= 2, got {order}")
    n = order // 2
    elements = [(k, s) for s in range(2) for k in range(n)]

    def op(x, y):
        return ((x[0] + (-1) ** x[1] * y[0]) % n, (x[1] + y[1]) % 2)

    return _from_elements(f"D{order}", elements, op,
                          lambda x: (_power_name("r", x[0]) + ("s" if x[1] else "")) or "e")


def dicyclic_group(order: int) -> FiniteGroup:
    """Dicyclic group of order 4m (quaternion for m a power of 2), elements x^k y^e."""
    if order < 8 or order % 4:
        raise InputError(f"Dicyclic group order must be a multiple of 4 and >= 8, got {order}")
    m = order // 4
    n = 2 * m
    elements = [(k, s) for s in range(2) for k in range(n)]

    def op(x, y):
        k1, s1 = x
        k2, s2 = y
        if s1 == 0:
            return ((k1 + k2) % n, s2)
        if s2 == 0:
            return ((k1 - k2) % n, 1)
        return ((k1 - k2 + m) % n, 0)

    return _from_elements(f"Q{order}", elements, op,
                          lambda x: (_power_name("x", x[0]) + ("y" if x[1] else "")) or "e")


def elementary_abelian_group(p: int, k: int) -> FiniteGroup:
    """(Z/p)^k."""
    if not isprime(p) or k < 1:
        raise InputError(f"Elementary abelian group needs prime p and k >= 1, got p={p}, k={k}")
    elements = list(product(range(p), repeat=k))
    return _from_elements(f"E{p}^{k}", elements,
                          lambda a, b: tuple((x + y) % p for x, y in zip(a, b)),
                          lambda v: "e" if not any(v) else "(" + ",".join(map(str, v)) + ")")


def heisenberg_group(p: int) -> FiniteGroup:
    """Upper unitriangular 3x3 matrices over F_p as triples (a, b, c)."""
    if not isprime(p):
        raise InputError(f"Heisenberg group needs a prime, got {p}")
    elements = [(a, b, c) for a in range(p) for b in range(p) for c in range(p)]

    def op(x, y):
        return ((x[0] + y[0]) % p, (x[1] + y[1]) % p, (x[2] + y[2] + x[0] * y[1]) % p)

    return _from_elements(f"Heis{p}", elements, op,
                          lambda v: "e" if not any(v) else "(" + ",".join(map(str, v)) + ")")


def semidirect_group(n: int, m: int, r: int) -> FiniteGroup:
    """C_n x| C_m where the generator b of C_m acts by a -> a^r."""
    if n < 1 or m < 1 or pow(r, m, n) != 1 % n:
        raise InputError(f"Semidirect data needs r^m = 1 mod n, got n={n}, m={m}, r={r}")
    elements = [(i, j) for j in range(m) for i in range(n)]

    def op(x, y):
        return ((x[0] + pow(r, x[1], n) * y[0]) % n, (x[1] + y[1]) % m)

    return _from_elements(f"SD({n},{m},{r})", elements, op,
                          lambda x: (_power_name("a", x[0]) + _power_name("b", x[1])) or "e")


def _permutation_name(perm: Permutation) -> str:
    cycles = perm.cyclic_form
    if not cycles:
        return "e"
    return "".join("(" + " ".join(str(x + 1) for x in cycle) + ")" for cycle in cycles)


def group_from_permutations(name: str, generators: Sequence[Permutation]) -> FiniteGroup:
    """Tabulate the permutation group generated by ``generators``."""
    degree = max((g.size for g in generators), default=1)
    generators = [Permutation(g.array_form, size=degree) for g in generators] or [Permutation(list(range(degree)))]
    perm_group = PermutationGroup(generators)
    order = perm_group.order()
    if order > MAX_GROUP_ORDER:
        raise SizeBoundError(f"Generators of {name} close to order {order}, above the limit {MAX_GROUP_ORDER}")
    elements = sorted(perm_group.generate(), key=lambda g: g.array_form)
    return _from_elements(name, [tuple(g.array_form) for g in elements],
                          lambda a, b: tuple((Permutation(list(a)) * Permutation(list(b))).array_form),
                          lambda a: _permutation_name(Permutation(list(a))))


def _cycles_to_permutation(cycles: Sequence[Sequence[int]]) -> Permutation:
    if not isinstance(cycles, (list, tuple)):
        raise InputError(f"Permutation generator must be a list of cycles, got {cycles!r}")
    points = [x for cycle in cycles for x in cycle]
    if any(not isinstance(x, int) or x < 1 for x in points):
        raise InputError(f"Cycle entries must be positive integers, got {cycles!r}")
    size = max(points, default=1)
    return Permutation([[x - 1 for x in cycle] for cycle in cycles if cycle], size=size)


def group_from_table(name: str, table: Sequence[Sequence[int]], names: Optional[Sequence[str]] = None) -> FiniteGroup:
    """
    Validate a multiplication table and relabel it so the identity is element 0.

    Raises:
        InputError: If the table is not square, out of range, or fails a group axiom
    """
    n = len(table)
    if n == 0 or any(len(row) != n for row in table):
        raise InputError("Multiplication table must be a non-empty square matrix")
    if n > MAX_GROUP_ORDER:
        raise SizeBoundError(f"Table of order {n} is above the limit {MAX_GROUP_ORDER}")
    if any(not isinstance(x, int) or not 0 <= x < n for row in table for x in row):
        raise InputError("Multiplication table entries must be element indices")
    names = list(names) if names is not None else [str(i) for i in range(n)]
    if len(names) != n or len(set(names)) != n:
        raise InputError("Element names must be unique and one per element")
    identity = next((e for e in range(n)
                     if all(table[e][g] == g and table[g][e] == g for g in range(n))), None)
    if identity is None:
        raise InputError("Multiplication table has no two-sided identity")
    for g in range(n):
        if not any(table[g][h] == identity and table[h][g] == identity for h in range(n)):
            raise InputError(f"Element {names[g]} has no two-sided inverse")
    for a in range(n):
        row_a = table[a]
        for b in range(n):
            ab = row_a[b]
            row_b = table[b]
            for c in range(n):
                if table[ab][c] != row_a[row_b[c]]:
                    raise InputError(f"Multiplication table is not associative at ({names[a]}, {names[b]}, {names[c]})")
    order = [identity] + [g for g in range(n) if g != identity]
    position = {g: i for i, g in enumerate(order)}
    mult = tuple(tuple(position[table[a][b]] for b in order) for a in order)
    return FiniteGroup(name, mult, tuple(names[g] for g in order))


def direct_product(left: FiniteGroup, right: FiniteGroup) -> FiniteGroup:
    """Direct product with pair names."""
    elements = [(a, b) for a in left.elements for b in right.elements]
    return _from_elements(f"{left.name}x{right.name}", elements,
                          lambda x, y: (left.mult[x[0]][y[0]], right.mult[x[1]][y[1]]),
                          lambda x: "e" if x == (0, 0) else f"({left.names[x[0]]},{right.names[x[1]]})")


_NAMED_PATTERNS: list[tuple[re.Pattern, Callable[..., FiniteGroup]]] = [
    (re.compile(r"C(\d+)"), lambda n: cyclic_group(int(n))),
    (re.compile(r"D(\d+)"), lambda n: dihedral_group(int(n))),
    (re.compile(r"Q(\d+)"), lambda n: dicyclic_group(int(n))),
    (re.compile(r"E(\d+)\^(\d+)"), lambda p, k: elementary_abelian_group(int(p), int(k))),
    (re.compile(r"Heis(\d+)"), lambda p: heisenberg_group(int(p))),
    (re.compile(r"S(\d+)"), lambda n: _symmetric(int(n))),
    (re.compile(r"A(\d+)"), lambda n: _alternating(int(n))),
    (re.compile(r"SD\((\d+),(\d+),(\d+)\)"), lambda n, m, r: semidirect_group(int(n), int(m), int(r))),
]


def _symmetric(n: int) -> FiniteGroup:
    if n < 1:
        raise InputError(f"Symmetric group degree must be positive, got {n}")
    return group_from_permutations(f"S{n}", SymmetricGroup(n).generators)


def _alternating(n: int) -> FiniteGroup:
    if n < 1:
        raise InputError(f"Alternating group degree must be positive, got {n}")
    return group_from_permutations(f"A{n}", AlternatingGroup(n).generators)


def _split_product(name: str) -> list[str]:
    """Split 'C2xSD(4,4,3)' on top-level 'x' separators."""
    parts, depth, current = [], 0, ""
    for ch in name:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "x" and depth == 0:
            parts.append(current)
            current = ""
        else:
            current += ch
    parts.append(current)
    return parts


def named_group(name: str) -> FiniteGroup:
    """Build a group from its catalog name (products written with 'x')."""
    name = name.strip().replace(" ", "")
    parts = _split_product(name)
    if len(parts) > 1:
        result = named_group(parts[0])
        for part in parts[1:]:
            result = direct_product(result, named_group(part))
        return FiniteGroup(name, result.mult, result.names)
    for pattern, builder in _NAMED_PATTERNS:
        match = pattern.fullmatch(name)
        if match:
            return builder(*match.groups())
    raise InputError(f"Unknown group name '{name}'")


def build_group(descriptor: Any) -> FiniteGroup:
    """
    Build and validate a group from a descriptor.

    Args:
        descriptor: A name such as ``"Q8"`` or a dict with ``kind`` equal to
            ``"named"`` (``name`` or ``family: "semidirect"`` with ``n, m, r``),
            ``"perm"`` (``generators`` as lists of 1-based cycles) or
            ``"table"`` (``table`` and optional ``names``)

    Raises:
        InputError: If the descriptor is malformed or the group axioms fail
    """
    if isinstance(descriptor, str):
        return named_group(descriptor)
    if not isinstance(descriptor, dict):
        raise InputError(f"Group descriptor must be a string or an object, got {type(descriptor).__name__}")
    kind = descriptor.get("kind")
    if kind == "named":
        if descriptor.get("family") == "semidirect":
            try:
                return semidirect_group(int(descriptor["n"]), int(descriptor["m"]), int(descriptor["r"]))
            except KeyError as ex:
                raise InputError(f"Semidirect descriptor is missing {ex}") from ex
        if "name" not in descriptor:
            raise InputError("Named group descriptor needs a 'name'")
        return named_group(str(descriptor["name"]))
    if kind == "perm":
        generators = descriptor.get("generators")
        if not isinstance(generators, list):
            raise InputError("Permutation descriptor needs a 'generators' list")
        perms = [_cycles_to_permutation(cycles) for cycles in generators]
        return group_from_permutations(descriptor.get("name", "perm"), perms)
    if kind == "table":
        table = descriptor.get("table")
        if not isinstance(table, list):
            raise InputError("Table descriptor needs a 'table' matrix")
        return group_from_table(descriptor.get("name", "table"), table, descriptor.get("names"))
    raise InputError(f"Unknown group descriptor kind '{kind}'")
