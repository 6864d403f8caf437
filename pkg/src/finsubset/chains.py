"""Finite chain complexes of free abelian groups with named bases."""

from __future__ import annotations

import json
from typing import Callable, Hashable, Iterable

from .intalg import AbelianGroup, CompositionNotZero, IntegerMatrix, smith_normal_form


class ChainComplex:
    """Graded free chain complex.

    ``basis[d]`` is the ordered list of basis cells in degree ``d`` and
    ``boundary(d)`` the matrix of the differential ``C_d -> C_{d-1}``
    (rows indexed by ``basis[d-1]``, columns by ``basis[d]``).
    """

    def __init__(self, basis: dict[int, list], boundaries: dict[int, IntegerMatrix], meta=None):
        self.basis = {d: list(cells) for d, cells in basis.items() if cells}
        self._boundaries = dict(boundaries)
        self.meta = dict(meta or {})
        self._snf_cache = {}
        for d, m in self._boundaries.items():
            if m.shape != (self.rank(d - 1), self.rank(d)):
                raise ValueError(f"boundary {d} has shape {m.shape}, expected "
                                 f"{(self.rank(d - 1), self.rank(d))}")

    @classmethod
    def from_cells(cls, cells: Iterable, dim: Callable, boundary: Callable,
                   key: Callable | None = None, meta=None) -> "ChainComplex":
        """Assemble a complex from cells, a dimension function and a boundary function.

        ``boundary(cell)`` returns a mapping ``{face: coefficient}``; every
        face with a nonzero coefficient must itself be one of ``cells``.
        """
        basis: dict[int, list] = {}
        for c in cells:
            basis.setdefault(dim(c), []).append(c)
        for d in basis:
            basis[d].sort(key=key)
        index = {d: {c: i for i, c in enumerate(cs)} for d, cs in basis.items()}
        mats = {}
        for d, cs in basis.items():
            if d - 1 not in basis:
                continue
            rows = index[d - 1]
            entries = {}
            for j, c in enumerate(cs):
                for face, coef in boundary(c).items():
                    if not coef:
                        continue
                    try:
                        i = rows[face]
                    except KeyError:
                        raise KeyError(f"face {face} of {c} is not a cell of the complex") from None
                    entries[(i, j)] = entries.get((i, j), 0) + coef
            mats[d] = IntegerMatrix(len(rows), len(cs), entries)
        return cls(basis, mats, meta)

    def degrees(self) -> list[int]:
        return sorted(self.basis)

    def top_degree(self) -> int:
        return max(self.basis) if self.basis else 0

    def rank(self, d: int) -> int:
        return len(self.basis.get(d, ()))

    def boundary(self, d: int) -> IntegerMatrix:
        m = self._boundaries.get(d)
        if m is None:
            return IntegerMatrix(self.rank(d - 1), self.rank(d))
        return m

    def _snf(self, d: int):
        if d not in self._snf_cache:
            self._snf_cache[d] = smith_normal_form(self.boundary(d))
        return self._snf_cache[d]

    def check_d_squared(self) -> bool:
        for d in self.degrees():
            if not (self.boundary(d - 1) @ self.boundary(d)).is_zero():
                return False
        return True

    def euler_characteristic(self) -> int:
        return sum((-1) ** d * len(cs) for d, cs in self.basis.items())

    def homology(self, coefficients: str = "Z", check: bool = True) -> dict[int, AbelianGroup]:
        """Homology in every degree from 0 to the top degree.

        Over ``"Q"`` the groups returned are torsion-free and record Betti
        numbers only.
        """
        if check and not self.check_d_squared():
            raise CompositionNotZero("boundary of boundary is not zero")
        coefficients = coefficients.upper()
        if coefficients not in ("Z", "Q"):
            raise ValueError(f"unknown coefficients {coefficients!r}")
        out = {}
        lo = min(0, min(self.basis, default=0))
        for d in range(lo, self.top_degree() + 1):
            out_rank = self._snf(d).rank
            snf_in = self._snf(d + 1)
            free = self.rank(d) - out_rank - snf_in.rank
            tors = snf_in.torsion() if coefficients == "Z" else ()
            out[d] = AbelianGroup(free, tors)
        return out

    def index_of(self, d: int, cell) -> int:
        return self.basis[d].index(cell)

    def vector(self, d: int, chain: dict) -> list[int]:
        """Coefficient vector of a chain ``{cell: coef}`` in the degree-``d`` basis."""
        vec = [0] * self.rank(d)
        pos = {c: i for i, c in enumerate(self.basis.get(d, ()))}
        for c, v in chain.items():
            vec[pos[c]] += v
        return vec

    def to_json(self) -> str:
        cells = []
        for d in self.degrees():
            for c in self.basis[d]:
                cells.append({"dim": d, "label": str(c)})
        bnd = {}
        for d in self.degrees():
            m = self.boundary(d)
            if m.nnz():
                bnd[str(d)] = sorted([r, c, v] for (r, c), v in m.items())
        doc = dict(self.meta)
        doc["cells"] = cells
        doc["boundaries"] = bnd
        return json.dumps(doc, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "ChainComplex":
        """Rebuild a complex from :meth:`to_json` output; cells become their labels."""
        doc = json.loads(text)
        basis: dict[int, list] = {}
        for cell in doc.pop("cells"):
            basis.setdefault(cell["dim"], []).append(cell["label"])
        mats = {}
        for d, triples in doc.pop("boundaries").items():
            d = int(d)
            mats[d] = IntegerMatrix(len(basis.get(d - 1, ())), len(basis.get(d, ())),
                                    {(r, c): v for r, c, v in triples})
        return cls(basis, mats, doc)


def format_homology(groups: dict[int, AbelianGroup]) -> str:
    """One ``H_d = ...`` line per degree, lowest first."""
    return "\n".join(f"H_{d} = {g}" for d, g in sorted(groups.items()))


def reduced(groups: dict[int, AbelianGroup]) -> dict[int, AbelianGroup]:
    """Drop one free summand from ``H_0`` (connected complexes)."""
    out = dict(groups)
    h0 = out.get(0)
    if h0 is not None and h0.free_rank:
        out[0] = AbelianGroup(h0.free_rank - 1, h0.torsion)
    return out
