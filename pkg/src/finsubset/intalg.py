"""Exact integer linear algebra.

Smith normal form, integer kernels and cokernels, homology of a pair of
boundary matrices and orders of elements in quotient lattices.  Everything
is done with Python integers, so there is no overflow however large the
intermediate entries get.

Elimination runs in two phases.  Unit pivots are removed first by sparse
Schur-complement steps (a unit is always a minimal-absolute-value pivot);
whatever is left has no unit entries and is finished by a dense Smith
reduction that always pivots on a minimal nonzero entry, scanning row-major.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Sequence


class CompositionNotZero(ValueError):
    """Raised when two boundary matrices do not compose to zero."""


class Infinite:
    """Order of an element of infinite order (singleton)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "Infinite"

    __str__ = __repr__


INFINITE = Infinite()


class IntegerMatrix:
    """Sparse integer matrix, immutable after construction.

    ``entries`` maps ``(row, col)`` to a nonzero int.  Zero-row and
    zero-column shapes are allowed and represent zero maps.
    """

    __slots__ = ("rows", "cols", "_entries")

    def __init__(self, rows: int, cols: int, entries=None):
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        self.rows = rows
        self.cols = cols
        clean = {}
        if entries:
            for (r, c), v in entries.items():
                if not (0 <= r < rows and 0 <= c < cols):
                    raise IndexError(f"entry ({r}, {c}) outside {rows}x{cols}")
                v = int(v)
                if v:
                    clean[(r, c)] = v
        self._entries = clean

    @classmethod
    def from_dense(cls, data: Sequence[Sequence[int]], cols: int | None = None):
        data = [list(row) for row in data]
        rows = len(data)
        if cols is None:
            cols = len(data[0]) if rows else 0
        entries = {}
        for r, row in enumerate(data):
            if len(row) != cols:
                raise ValueError("ragged matrix")
            for c, v in enumerate(row):
                if v:
                    entries[(r, c)] = v
        return cls(rows, cols, entries)

    @classmethod
    def from_columns(cls, rows: int, columns: Sequence[dict]):
        """Build from a list of sparse columns ``{row: value}``."""
        entries = {}
        for c, col in enumerate(columns):
            for r, v in col.items():
                if v:
                    entries[(r, c)] = v
        return cls(rows, len(columns), entries)

    @classmethod
    def zeros(cls, rows: int, cols: int):
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int):
        return cls(n, n, {(i, i): 1 for i in range(n)})

    @property
    def entries(self) -> dict:
        return dict(self._entries)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def nnz(self) -> int:
        return len(self._entries)

    def __getitem__(self, rc):
        return self._entries.get(rc, 0)

    def items(self):
        return self._entries.items()

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for (r, c), v in self._entries.items():
            out[r][c] = v
        return out

    def row_dicts(self) -> list[dict]:
        rows = [dict() for _ in range(self.rows)]
        for (r, c), v in self._entries.items():
            rows[r][c] = v
        return rows

    def column(self, c: int) -> list[int]:
        col = [0] * self.rows
        for (r, cc), v in self._entries.items():
            if cc == c:
                col[r] = v
        return col

    def transpose(self) -> "IntegerMatrix":
        return IntegerMatrix(self.cols, self.rows,
                             {(c, r): v for (r, c), v in self._entries.items()})

    T = property(transpose)

    def is_zero(self) -> bool:
        return not self._entries

    def __matmul__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        by_row = {}
        for (r, c), v in other._entries.items():
            by_row.setdefault(r, []).append((c, v))
        out = {}
        for (r, k), a in self._entries.items():
            for c, b in by_row.get(k, ()):
                key = (r, c)
                out[key] = out.get(key, 0) + a * b
        return IntegerMatrix(self.rows, other.cols, out)

    def apply(self, vec: Sequence[int]) -> list[int]:
        if len(vec) != self.cols:
            raise ValueError("vector length does not match column count")
        out = [0] * self.rows
        for (r, c), v in self._entries.items():
            out[r] += v * vec[c]
        return out

    def __neg__(self):
        return IntegerMatrix(self.rows, self.cols,
                             {k: -v for k, v in self._entries.items()})

    def __eq__(self, other):
        if not isinstance(other, IntegerMatrix):
            return NotImplemented
        return self.shape == other.shape and self._entries == other._entries

    def __hash__(self):
        return hash((self.rows, self.cols, frozenset(self._entries.items())))

    def __repr__(self):
        return f"IntegerMatrix({self.rows}x{self.cols}, nnz={len(self._entries)})"

    def dump(self) -> str:
        """Plain-text integer grid, for debugging."""
        dense = self.to_dense()
        if not dense or not self.cols:
            return f"<{self.rows}x{self.cols} zero matrix>"
        width = max(len(str(v)) for row in dense for v in row)
        return "\n".join(" ".join(str(v).rjust(width) for v in row) for row in dense)


@dataclass(frozen=True)
class SmithForm:
    """Nonzero invariant factors ``d_1 | d_2 | ... | d_r``."""

    invariants: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.invariants)

    def torsion(self) -> tuple[int, ...]:
        return tuple(d for d in self.invariants if d > 1)


@dataclass(frozen=True)
class AbelianGroup:
    """Finitely generated abelian group ``Z^free_rank + Z/t_1 + ... + Z/t_s``.

    Torsion coefficients are kept in canonical invariant-factor form, so
    structural equality is group isomorphism.
    """

    free_rank: int = 0
    torsion: tuple[int, ...] = field(default=())

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("free rank must be nonnegative")
        tors = tuple(int(t) for t in self.torsion)
        for t in tors:
            if t <= 1:
                raise ValueError(f"torsion coefficient {t} must exceed 1")
        for a, b in zip(tors, tors[1:]):
            if b % a:
                raise ValueError(f"torsion {tors} not in divisibility order")
        object.__setattr__(self, "torsion", tors)

    @classmethod
    def from_orders(cls, free_rank: int, orders: Iterable[int]):
        """Build from arbitrary cyclic orders (units dropped, sorted into invariant factors)."""
        return cls(free_rank, tuple(d for d in invariant_factors_of_diagonal(orders) if d > 1))

    @classmethod
    def parse(cls, text: str) -> "AbelianGroup":
        text = text.strip()
        if text == "0":
            return cls()
        free, tors = 0, []
        for term in text.split("+"):
            term = term.strip()
            if term == "Z":
                free += 1
            elif term.startswith("Z^"):
                free += int(term[2:])
            elif term.startswith("Z/"):
                tors.append(int(term[2:]))
            else:
                raise ValueError(f"cannot parse group term {term!r}")
        return cls.from_orders(free, tors)

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def __str__(self):
        if self.is_trivial():
            return "0"
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{t}" for t in self.torsion)
        return " + ".join(parts)


def invariant_factors_of_diagonal(diag: Iterable[int]) -> list[int]:
    """Turn the nonzero entries of a diagonal matrix into invariant factors."""
    a = [abs(int(d)) for d in diag if d]
    units = sum(1 for d in a if d == 1)
    # units are already invariant factors; only the rest need the sweep
    a = sorted(d for d in a if d != 1)
    n = len(a)
    for i in range(n):
        for j in range(i + 1, n):
            g = gcd(a[i], a[j])
            if g != a[i]:
                a[i], a[j] = g, a[i] * a[j] // g
    return [1] * units + a


def _eliminate(m: IntegerMatrix, extra: list[int] | None = None):
    """Diagonalise ``m`` by unimodular row and column operations.

    Returns ``(pivots, extra)`` where ``pivots`` is a list of
    ``(row, value)`` for each nonzero diagonal entry of the result and
    ``extra`` is the input vector transformed by the same row operations.
    Rows that never became pivot rows are zero in the reduced matrix.
    """
    rows = m.row_dicts()
    cols: dict[int, set] = {}
    for (r, c), _ in m.items():
        cols.setdefault(c, set()).add(r)
    pivots = []

    def remove_pivot(r, c, p):
        # Schur step: clear column c using row r (p must be a unit).
        prow = rows[r]
        for i in list(cols[c]):
            if i == r:
                continue
            row_i = rows[i]
            q = row_i[c] * p  # p == +-1, so q == row_i[c] / p
            for j, v in prow.items():
                nv = row_i.get(j, 0) - q * v
                if nv:
                    if j not in row_i:
                        cols.setdefault(j, set()).add(i)
                    row_i[j] = nv
                else:
                    if j in row_i:
                        del row_i[j]
                        cols[j].discard(i)
            if extra is not None and extra[r]:
                extra[i] -= q * extra[r]
        for j in prow:
            cols[j].discard(r)
        rows[r] = {}
        pivots.append((r, p))

    # phase 1: unit pivots, lightest columns first (Markowitz-style tie-break)
    progress = True
    while progress:
        progress = False
        heap = [(len(s), c) for c, s in cols.items() if s]
        heapq.heapify(heap)
        while heap:
            n, c = heapq.heappop(heap)
            s = cols.get(c)
            if not s:
                continue
            if len(s) != n:
                heapq.heappush(heap, (len(s), c))
                continue
            best = None
            for r in s:
                v = rows[r][c]
                if v == 1 or v == -1:
                    key = (len(rows[r]), r)
                    if best is None or key < best[0]:
                        best = (key, r, v)
            if best is None:
                continue
            _, r, v = best
            remove_pivot(r, c, v)
            progress = True

    # phase 2: dense Smith reduction of the remainder
    live_rows = sorted(r for r in range(m.rows) if rows[r])
    live_cols = sorted(c for c, s in cols.items() if s)
    if live_rows:
        cidx = {c: k for k, c in enumerate(live_cols)}
        dense = []
        for r in live_rows:
            row = [0] * len(live_cols)
            for c, v in rows[r].items():
                row[cidx[c]] = v
            dense.append(row)
        sub_extra = [extra[r] for r in live_rows] if extra is not None else None
        for i, d in _dense_smith(dense, sub_extra):
            pivots.append((live_rows[i], d))
        if extra is not None:
            for k, r in enumerate(live_rows):
                extra[r] = sub_extra[k]
    return pivots, extra


def _dense_smith(a: list[list[int]], extra: list[int] | None):
    """Dense diagonalisation with minimal-absolute-value pivoting.

    Operates in place.  Yields ``(row, value)`` for each pivot.
    """
    nr = len(a)
    nc = len(a[0]) if nr else 0
    active_r = list(range(nr))
    active_c = list(range(nc))
    out = []
    while True:
        best = None
        for i in active_r:
            row = a[i]
            for j in active_c:
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, pi, pj = best
        p = a[pi][pj]
        clean = True
        for i in active_r:
            if i == pi or not a[i][pj]:
                continue
            q = a[i][pj] // p
            if q:
                row_i, prow = a[i], a[pi]
                for j in active_c:
                    if prow[j]:
                        row_i[j] -= q * prow[j]
                if extra is not None:
                    extra[i] -= q * extra[pi]
            if a[i][pj]:
                clean = False
        for j in active_c:
            if j == pj or not a[pi][j]:
                continue
            q = a[pi][j] // p
            if q:
                for i in active_r:
                    if a[i][pj]:
                        a[i][j] -= q * a[i][pj]
            if a[pi][j]:
                clean = False
        if clean:
            out.append((pi, p))
            active_r.remove(pi)
            active_c.remove(pj)
    return out


def smith_normal_form(m: IntegerMatrix) -> SmithForm:
    """Nonzero invariant factors of ``m`` in divisibility order.

    >>> smith_normal_form(IntegerMatrix.from_dense([[2, 4], [6, 8]])).invariants
    (2, 4)
    """
    pivots, _ = _eliminate(m)
    return SmithForm(tuple(invariant_factors_of_diagonal(p for _, p in pivots)))


def rank(m: IntegerMatrix) -> int:
    return smith_normal_form(m).rank


def homology_at(d_n: IntegerMatrix, d_succ: IntegerMatrix, check: bool = True) -> AbelianGroup:
    """Homology ``ker d_n / im d_succ`` at the middle chain group."""
    if d_n.cols != d_succ.rows:
        raise ValueError(f"incompatible shapes {d_n.shape} and {d_succ.shape}")
    if check and not (d_n @ d_succ).is_zero():
        raise CompositionNotZero("boundary matrices do not compose to zero")
    nullity = d_n.cols - rank(d_n)
    snf = smith_normal_form(d_succ)
    return AbelianGroup(nullity - snf.rank, snf.torsion())


def cokernel(m: IntegerMatrix) -> AbelianGroup:
    snf = smith_normal_form(m)
    return AbelianGroup(m.rows - snf.rank, snf.torsion())


def hermite_normal_form(vectors: Sequence[Sequence[int]], width: int | None = None) -> list[list[int]]:
    """Row-style Hermite normal form of the lattice spanned by ``vectors``.

    Rows are returned top to bottom with strictly increasing pivot columns,
    positive pivots, and entries above each pivot reduced into ``[0, pivot)``.
    Zero rows are dropped.
    """
    rows = [list(v) for v in vectors]
    if width is None:
        width = len(rows[0]) if rows else 0
    rows, _ = _row_echelon(rows, width, None)
    _reduce_above(rows)
    return rows


def _row_echelon(rows, width, companion):
    """Unimodular row reduction to echelon form; companion rows follow along."""
    rows = [list(r) for r in rows]
    comp = [list(r) for r in companion] if companion is not None else None
    top = 0
    for col in range(width):
        if top >= len(rows):
            break
        while True:
            nz = [i for i in range(top, len(rows)) if rows[i][col]]
            if not nz:
                break
            piv = min(nz, key=lambda i: (abs(rows[i][col]), i))
            rows[top], rows[piv] = rows[piv], rows[top]
            if comp is not None:
                comp[top], comp[piv] = comp[piv], comp[top]
            done = True
            p = rows[top][col]
            for i in range(top + 1, len(rows)):
                v = rows[i][col]
                if v:
                    q = v // p
                    rows[i] = [a - q * b for a, b in zip(rows[i], rows[top])]
                    if comp is not None:
                        comp[i] = [a - q * b for a, b in zip(comp[i], comp[top])]
                    if rows[i][col]:
                        done = False
            if done:
                break
        if any(rows[i][col] for i in range(top, len(rows))):
            if rows[top][col] < 0:
                rows[top] = [-a for a in rows[top]]
                if comp is not None:
                    comp[top] = [-a for a in comp[top]]
            top += 1
    if comp is None:
        return [r for r in rows if any(r)], None
    return rows, comp


def _reduce_above(rows):
    for k, row in enumerate(rows):
        col = next(j for j, v in enumerate(row) if v)
        p = row[col]
        for i in range(k):
            q = rows[i][col] // p
            if q:
                rows[i] = [a - q * b for a, b in zip(rows[i], row)]


def kernel_basis(m: IntegerMatrix) -> list[list[int]]:
    """Basis of the integer kernel ``{x : m x = 0}`` in Hermite normal form.

    The kernel of an integer matrix is a saturated sublattice; the returned
    vectors generate it freely.
    """
    n = m.cols
    at = m.transpose().to_dense()  # one row per column of m
    ident = [[int(i == j) for j in range(n)] for i in range(n)]
    red, comp = _row_echelon(at, m.rows, ident)
    kern = [comp[i] for i in range(n) if not any(red[i])]
    if not kern:
        return []
    return hermite_normal_form(kern, n)


def order_in_quotient(m: IntegerMatrix, v: Sequence[int]):
    """Least ``n >= 1`` with ``n * v`` in the column span of ``m``, or ``INFINITE``."""
    if len(v) != m.rows:
        raise ValueError("vector length must equal the row count")
    pivots, w = _eliminate(m, [int(x) for x in v])
    pivot_rows = {}
    for r, p in pivots:
        pivot_rows[r] = abs(p)
    order = 1
    for r in range(m.rows):
        if r in pivot_rows:
            p = pivot_rows[r]
            need = p // gcd(p, w[r])
            order = order * need // gcd(order, need)
        elif w[r]:
            return INFINITE
    return order
