"""
Smith normal form over Z and valuation-pivot elimination over Z/p^E.

Two eliminators live here:

* ``smith_normal_form`` works on small dense integer matrices (relation
  lattices of abelianizations, tiny presentation matrices) and returns the
  diagonal together with the column transform, so cokernel coordinates of
  the standard basis can be read off directly.
* ``LocalEliminator`` works on large sparse matrices over Z/p^E, the ring
  in which the p-primary part of every bar-complex cokernel is computed.
  It pivots on entries of minimal p-adic valuation and records every row
  operation, so that vectors can later be expressed in the transformed
  basis (cycle coordinates) and cokernel generators lifted back.
"""

import heapq
from typing import Iterable, Optional

from .abelian import AbelianGroupPresentation


def p_valuation(value: int, p: int, cap: Optional[int] = None) -> int:
    """p-adic valuation of an integer; ``cap`` is returned for zero (or the loop is capped)."""
    if value == 0:
        if cap is None:
            raise ValueError("Valuation of zero requires a cap")
        return cap
    v = 0
    while value % p == 0:
        value //= p
        v += 1
        if cap is not None and v >= cap:
            return cap
    return v


def _min_abs_entry(a: list[list[int]], t: int) -> Optional[tuple[int, int]]:
    best = None
    for i in range(t, len(a)):
        row = a[i]
        for j in range(t, len(row)):
            value = row[j]
            if value and (best is None or abs(value) < best[0]):
                best = (abs(value), i, j)
                if best[0] == 1:
                    return best[1], best[2]
    return None if best is None else (best[1], best[2])


def _swap_columns(a: list[list[int]], v: list[list[int]], i: int, j: int) -> None:
    if i == j:
        return
    for row in a:
        row[i], row[j] = row[j], row[i]
    for row in v:
        row[i], row[j] = row[j], row[i]


def _add_column(a: list[list[int]], v: list[list[int]], target: int, source: int, factor: int) -> None:
    """column[target] += factor * column[source] in both matrices."""
    for row in a:
        row[target] += factor * row[source]
    for row in v:
        row[target] += factor * row[source]


def smith_normal_form(rows: list[list[int]], ncols: int) -> tuple[list[int], list[list[int]]]:
    """
    Diagonalize an integer matrix by unimodular row and column operations.

    Args:
        rows: Relation rows, each of length ``ncols``
        ncols: Number of generators (columns)

    Returns:
        Tuple ``(diagonal, column_transform)``. The nonzero diagonal entries
        form a divisibility chain; ``column_transform`` is the ncols x ncols
        matrix V with U A V = D, so row g of V gives the coordinates of the
        g-th generator in the cokernel basis.
    """
    a = [list(row) for row in rows]
    v = [[int(i == j) for j in range(ncols)] for i in range(ncols)]
    diagonal: list[int] = []
    t = 0
    while t < min(len(a), ncols):
        pivot = _min_abs_entry(a, t)
        if pivot is None:
            break
        i, j = pivot
        a[t], a[i] = a[i], a[t]
        _swap_columns(a, v, t, j)
        while True:
            restart = False
            for i in range(t + 1, len(a)):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    if q:
                        pivot_row = a[t]
                        a[i] = [x - q * y for x, y in zip(a[i], pivot_row)]
                    if a[i][t]:
                        a[t], a[i] = a[i], a[t]
                        restart = True
                        break
            if restart:
                continue
            for j in range(t + 1, ncols):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    if q:
                        _add_column(a, v, j, t, -q)
                    if a[t][j]:
                        _swap_columns(a, v, t, j)
                        restart = True
                        break
            if restart:
                continue
            pivot_value = a[t][t]
            offender = next(
                (i for i in range(t + 1, len(a)) if any(x % pivot_value for x in a[i][t + 1:])),
                None,
            )
            if offender is None:
                break
            a[t] = [x + y for x, y in zip(a[t], a[offender])]
        diagonal.append(abs(a[t][t]))
        t += 1
    return diagonal, v


def cokernel_of_integer_matrix(rows: list[list[int]], ncols: int) -> AbelianGroupPresentation:
    """Cokernel of a dense integer relation matrix (rows are relations)."""
    diagonal, _ = smith_normal_form(rows, ncols)
    return AbelianGroupPresentation.from_orders(
        [d for d in diagonal if d != 1],
        free_rank=ncols - len(diagonal),
    )


class LocalEliminator:
    """
    Sparse row-recorded elimination over Z/p^E.

    Columns are added with ``add_column`` and ``eliminate`` reduces the
    matrix by row operations only. After elimination, row ``r`` in
    ``pivots`` carries valuation ``s`` and contributes a cyclic factor
    Z/p^s to the cokernel; rows never chosen as pivot are free summands
    Z/p^E. Row operations are kept in ``transcript`` as triples
    ``(target, source, factor)`` meaning row_target -= factor * row_source.
    """

    def __init__(self, p: int, exponent: int, nrows: int, keep_pivot_rows: bool = False):
        self.p = p
        self.exponent = exponent
        self.modulus = p ** exponent
        self.nrows = nrows
        self._rows: dict[int, dict[int, int]] = {}
        self._cols: dict[int, set[int]] = {}
        self._heap: list[tuple[int, int]] = []
        self.pivots: dict[int, int] = {}
        self.pivot_columns: dict[int, int] = {}
        self.pivot_order: list[int] = []
        self.transcript: list[tuple[int, int, int]] = []
        self._pivot_rows: Optional[dict[int, dict[int, int]]] = {} if keep_pivot_rows else None
        self._eliminated = False

    def add_column(self, col: int, entries: dict[int, int]) -> None:
        """Add (or accumulate into) column ``col`` given as {row: value}."""
        for row, value in entries.items():
            row_entries = self._rows.setdefault(row, {})
            value = (row_entries.get(col, 0) + value) % self.modulus
            if value:
                row_entries[col] = value
                self._cols.setdefault(col, set()).add(row)
            elif col in row_entries:
                del row_entries[col]
                self._cols[col].discard(row)

    def add_columns(self, columns: Iterable[dict[int, int]], start: int = 0) -> int:
        """Add consecutive columns starting at index ``start``; returns the next free index."""
        col = start
        for entries in columns:
            self.add_column(col, entries)
            col += 1
        return col

    def _valuation(self, value: int) -> int:
        return p_valuation(value, self.p, self.exponent)

    def _pick_row(self, col: int, level: int) -> Optional[int]:
        best = None
        for row in self._cols.get(col, ()):
            if self._valuation(self._rows[row][col]) == level:
                key = (len(self._rows[row]), row)
                if best is None or key < best:
                    best = key
        return None if best is None else best[1]

    def _pivot(self, row: int, col: int, level: int) -> None:
        mod = self.modulus
        scale = self.p ** level
        unit_mod = self.p ** (self.exponent - level)
        pivot_row = self._rows.pop(row)
        for c in pivot_row:
            self._cols[c].discard(row)
        inverse = pow((pivot_row[col] // scale) % unit_mod, -1, unit_mod)
        for target in sorted(self._cols.get(col, ())):
            target_row = self._rows[target]
            factor = ((target_row[col] // scale) * inverse) % unit_mod
            self.transcript.append((target, row, factor))
            for c, value in pivot_row.items():
                new = (target_row.get(c, 0) - factor * value) % mod
                if new:
                    if c not in target_row:
                        self._cols.setdefault(c, set()).add(target)
                    target_row[c] = new
                elif c in target_row:
                    del target_row[c]
                    self._cols[c].discard(target)
                if c != col:
                    heapq.heappush(self._heap, (len(self._cols.get(c, ())), c))
            if not target_row:
                del self._rows[target]
        for c in pivot_row:
            if c in self._cols and not self._cols[c]:
                del self._cols[c]
        self._cols.pop(col, None)
        self.pivots[row] = level
        self.pivot_columns[row] = col
        self.pivot_order.append(row)
        if self._pivot_rows is not None:
            self._pivot_rows[row] = pivot_row

    def eliminate(self) -> "LocalEliminator":
        """Run the elimination; the minimal valuation level only ever increases."""
        if self._eliminated:
            return self
        self._cols = {c: rows for c, rows in self._cols.items() if rows}
        level = 0
        while self._cols and level < self.exponent:
            self._heap = [(len(rows), c) for c, rows in self._cols.items()]
            heapq.heapify(self._heap)
            while self._heap:
                length, col = heapq.heappop(self._heap)
                rows = self._cols.get(col)
                if not rows:
                    continue
                if len(rows) != length:
                    heapq.heappush(self._heap, (len(rows), col))
                    continue
                row = self._pick_row(col, level)
                if row is not None:
                    self._pivot(row, col, level)
            level += 1
        self._heap = []
        self._eliminated = True
        return self

    @property
    def free_rows(self) -> list[int]:
        """Rows never used as pivots: free Z/p^E summands of the cokernel."""
        return [r for r in range(self.nrows) if r not in self.pivots]

    def cokernel_factors(self, cap: Optional[int] = None) -> list[int]:
        """
        Orders of the nontrivial cyclic cokernel summands, free rows included as p^E.

        Args:
            cap: Optional exponent cap; summands Z/p^s become Z/p^min(s, cap)
        """
        self.eliminate()
        exponents = [s for s in self.pivots.values() if s > 0]
        exponents += [self.exponent] * len(self.free_rows)
        if cap is not None:
            exponents = [min(s, cap) for s in exponents]
        return sorted(self.p ** s for s in exponents if s > 0)

    def generator_rows(self) -> list[tuple[int, int]]:
        """(row, exponent) of every nontrivial cokernel summand in row order."""
        self.eliminate()
        rows = [(r, s) for r, s in self.pivots.items() if s > 0]
        rows += [(r, self.exponent) for r in self.free_rows]
        return sorted(rows)

    def transform(self, vectors: list[dict[int, int]]) -> list[dict[int, int]]:
        """Apply the recorded row operations to a batch of vectors {row: value}."""
        self.eliminate()
        mod = self.modulus
        by_row: dict[int, dict[int, int]] = {}
        for k, vector in enumerate(vectors):
            for row, value in vector.items():
                value %= mod
                if value:
                    by_row.setdefault(row, {})[k] = value
        for target, source, factor in self.transcript:
            src = by_row.get(source)
            if not src:
                continue
            dst = by_row.setdefault(target, {})
            for k, value in src.items():
                new = (dst.get(k, 0) - factor * value) % mod
                if new:
                    dst[k] = new
                else:
                    dst.pop(k, None)
        out: list[dict[int, int]] = [{} for _ in vectors]
        for row, entries in by_row.items():
            for k, value in entries.items():
                out[k][row] = value
        return out

    def coordinates(self, vectors: list[dict[int, int]]) -> list[list[int]]:
        """Cokernel coordinates of vectors, ordered like ``generator_rows``."""
        generators = self.generator_rows()
        result = []
        for transformed in self.transform(vectors):
            result.append([transformed.get(r, 0) % (self.p ** s) for r, s in generators])
        return result

    def lift(self, row: int) -> dict[int, int]:
        """The original-basis vector mapping to the unit vector of ``row``."""
        self.eliminate()
        mod = self.modulus
        vector = {row: 1}
        for target, source, factor in reversed(self.transcript):
            value = vector.get(source)
            if value:
                new = (vector.get(target, 0) + factor * value) % mod
                if new:
                    vector[target] = new
                else:
                    vector.pop(target, None)
        return vector

    def solve(self, target: dict[int, int]) -> Optional[dict[int, int]]:
        """
        Solve A z = target over Z/p^E by back substitution.

        Returns:
            A solution as {column: value}, or None when target is not in the column span.
        """
        if self._pivot_rows is None:
            raise ValueError("solve() requires keep_pivot_rows=True")
        self.eliminate()
        transformed = self.transform([target])[0]
        if any(transformed.get(r, 0) for r in self.free_rows):
            return None
        solution: dict[int, int] = {}
        for row in reversed(self.pivot_order):
            level = self.pivots[row]
            col = self.pivot_columns[row]
            pivot_row = self._pivot_rows[row]
            value = transformed.get(row, 0)
            for c, entry in pivot_row.items():
                if c != col and c in solution:
                    value -= entry * solution[c]
            value %= self.modulus
            scale = self.p ** level
            if value % scale:
                return None
            unit_mod = self.p ** (self.exponent - level)
            inverse = pow((pivot_row[col] // scale) % unit_mod, -1, unit_mod)
            z = ((value // scale) * inverse) % unit_mod
            if z:
                solution[col] = z
        return solution


def local_cokernel(p: int, exponent: int, nrows: int, columns: Iterable[dict[int, int]]) -> AbelianGroupPresentation:
    """Cokernel over Z/p^E of a sparse matrix given column by column."""
    eliminator = LocalEliminator(p, exponent, nrows)
    eliminator.add_columns(columns)
    return AbelianGroupPresentation.from_orders(eliminator.cokernel_factors())
