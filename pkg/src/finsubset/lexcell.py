"""Lexicographic cell complexes for finite subset spaces of wedges of 2-spheres.

A cell is a product of compositions, one per face (2-cell) of the wedge,
together with a flag telling whether the configuration contains the base
vertex.  Based cells are written with round brackets, unbased ones with
square brackets: ``(2,1)`` versus ``[2,1]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .chains import ChainComplex
from .intalg import AbelianGroup, order_in_quotient, rank
from .partitions import (
    Composition,
    InvalidArgument,
    compositions,
    decrement,
    merge,
    signed_binomial,
)


@dataclass(frozen=True)
class SphereCell:
    """``factors`` holds ``(face_index, composition)`` pairs with increasing face index."""

    factors: tuple = ()
    based: bool = True

    def __post_init__(self):
        fs = tuple((int(i), c if isinstance(c, Composition) else Composition(c))
                   for i, c in self.factors)
        object.__setattr__(self, "factors", fs)
        faces = [i for i, _ in fs]
        if any(i < 1 for i in faces) or faces != sorted(set(faces)):
            raise InvalidArgument(f"face indices must be positive and increasing: {faces}")
        if not fs and not self.based:
            raise InvalidArgument("the empty unbased cell does not exist")

    @classmethod
    def single(cls, parts, based=True, face=1):
        return cls(((face, Composition(parts)),), based)

    def dimension(self) -> int:
        return sum(c.norm() + c.length() for _, c in self.factors)

    def points(self) -> int:
        return sum(c.norm() for _, c in self.factors) + (1 if self.based else 0)

    def norm(self) -> int:
        return sum(c.norm() for _, c in self.factors)

    def with_based(self, based: bool) -> "SphereCell":
        return SphereCell(self.factors, based)

    def sort_key(self):
        return (len(self.factors), tuple(i for i, _ in self.factors),
                tuple(c.sort_key() for _, c in self.factors), 0 if self.based else 1)

    def label(self, show_faces: bool | None = None) -> str:
        if not self.factors:
            return "v"
        if show_faces is None:
            show_faces = len(self.factors) > 1 or self.factors[0][0] != 1
        open_, close = ("(", ")") if self.based else ("[", "]")
        bits = []
        for i, c in self.factors:
            s = open_ + ",".join(map(str, c.parts)) + close
            bits.append(f"{s}_{i}" if show_faces else s)
        return "*".join(bits)

    def __str__(self):
        return self.label()

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()


def _add(chain: dict, cell, coef: int):
    if coef:
        v = chain.get(cell, 0) + coef
        if v:
            chain[cell] = v
        else:
            chain.pop(cell, None)


def boundary_nu(s: Composition, tilde: bool, face: int = 1) -> dict:
    """Boundary from a point colliding with the base vertex.

    Only even parts contribute.  With ``tilde`` each face term appears as a
    based cell with twice the coefficient and as an unbased cell with minus
    the coefficient.
    """
    s = Composition(s)
    out: dict = {}
    for a in range(1, len(s) + 1):
        if s[a - 1] % 2:
            continue
        c = -((-1) ** s.prefix_norm(a))
        t = decrement(s, a)
        if tilde:
            _add(out, SphereCell(((face, t),), True), 2 * c)
            _add(out, SphereCell(((face, t),), False), -c)
        else:
            _add(out, SphereCell(((face, t),), True), c)
    return out


def lambda_coefficient(x: int, y: int, rational_basis: bool = False) -> int:
    if rational_basis:
        return 1 if (x * y) % 2 == 0 else 0
    return signed_binomial(x + y, x)


def boundary_lambda(s: Composition, tilde: bool, rational_basis: bool = False,
                    face: int = 1) -> dict:
    """Boundary from two adjacent points colliding; keeps the tilde flag."""
    s = Composition(s)
    out: dict = {}
    for a in range(1, len(s)):
        coef = (-1) ** (a - 1) * lambda_coefficient(s[a - 1], s[a], rational_basis)
        _add(out, SphereCell(((face, merge(s, a)),), not tilde), coef)
    return out


def _factor_boundary(face: int, s: Composition, based: bool) -> dict:
    """Full boundary of a single-face cell."""
    nu = boundary_nu(s, tilde=not based, face=face)
    lam = boundary_lambda(s, tilde=not based, face=face)
    out: dict = {}
    for cell, c in nu.items():
        _add(out, cell, c)
    sign = (-1) ** s.norm()
    for cell, c in lam.items():
        _add(out, cell, sign * c)
    return out


def full_boundary(cell: SphereCell) -> dict:
    """Cellular boundary of a cell, as ``{SphereCell: coefficient}``.

    Product cells follow the Leibniz rule; a based term in any factor makes
    the whole product based.
    """
    out: dict = {}
    prefix_dim = 0
    fs = cell.factors
    for q, (face, s) in enumerate(fs):
        sign = (-1) ** prefix_dim
        for term, c in _factor_boundary(face, s, cell.based).items():
            (_, t), = term.factors
            new = fs[:q] + ((face, t),) + fs[q + 1:]
            _add(out, SphereCell(new, cell.based or term.based), sign * c)
        prefix_dim += s.norm() + s.length()
    return out


def _face_assignments(m: int, total_max: int):
    """All tuples of (face, composition) products with total norm in 1..total_max."""
    def rec(face, budget):
        if face > m:
            yield ()
            return
        yield from rec(face + 1, budget)
        for n in range(1, budget + 1):
            for c in compositions(n):
                for rest in rec(face + 1, budget - n):
                    yield ((face, c),) + rest
    for fs in rec(1, total_max):
        if fs:
            yield fs


def cells(k: int, based: bool, m: int = 1) -> list[SphereCell]:
    """Cells of the based (``based=True``) or unbased complex, sorted."""
    if k < 1:
        raise InvalidArgument(f"k must be positive, got {k}")
    if m < 1:
        raise InvalidArgument(f"face count must be positive, got {m}")
    out = [SphereCell((), True)]
    out.extend(SphereCell(fs, True) for fs in _face_assignments(m, k - 1))
    if not based:
        out.extend(SphereCell(fs, False) for fs in _face_assignments(m, k))
    out.sort(key=SphereCell.sort_key)
    return out


def build_complex(k: int, based: bool, m: int = 1) -> ChainComplex:
    return ChainComplex.from_cells(
        cells(k, based, m), SphereCell.dimension, full_boundary,
        key=SphereCell.sort_key, meta={"k": k, "based": based, "m": m})


def homology(k: int, based: bool, coefficients: str = "Z", m: int = 1) -> list[AbelianGroup]:
    """Unreduced homology, indexed by dimension from 0 to the top cell."""
    h = build_complex(k, based, m).homology(coefficients)
    return [h[d] for d in range(max(h) + 1)]


def clipped_cube(k: int, rational_basis: bool = False) -> ChainComplex:
    """Compositions of ``k`` graded by length, with the merging boundary.

    A composition of length ``l`` sits in dimension ``k + l``.
    """
    if k < 1:
        raise InvalidArgument(f"k must be positive, got {k}")

    def bnd(s):
        return {c.factors[0][1]: v for c, v in
                boundary_lambda(s, False, rational_basis).items()}

    return ChainComplex.from_cells(
        compositions(k), lambda s: k + s.length(), bnd, key=Composition.sort_key,
        meta={"k": k, "rational_basis": rational_basis})


def clipped_cube_ranks(k: int, rational_basis: bool = False) -> dict[int, int]:
    """Rank of the boundary leaving grade ``l`` (length ``l``), for each ``l``."""
    cx = clipped_cube(k, rational_basis)
    return {l: rank(cx.boundary(k + l)) for l in range(1, k + 1)}


def expected_clipped_rank(k: int, length: int) -> int:
    if length >= k or length < 2:
        return 0
    return comb(k - 2, length - 2)


def _relative_complex(k: int, m: int):
    """Tilded cells of the unbased complex with based terms dropped."""
    tilded = [c for c in cells(k, False, m) if not c.based]

    def bnd(c):
        return {f: v for f, v in full_boundary(c).items() if not f.based}

    return ChainComplex.from_cells(tilded, SphereCell.dimension, bnd, key=SphereCell.sort_key)


def quotient_iso_check(k: int, m: int = 1) -> bool:
    """Compare the positive-dimensional based complex one level up with the relative complex.

    The map sends a based cell ``S`` to ``(-1)^|S|`` times its tilded twin;
    returns True when it commutes with the boundaries in every dimension.
    """
    if k < 1:
        raise InvalidArgument(f"k must be positive, got {k}")
    upper = build_complex(k + 1, True, m)
    rel = _relative_complex(k, m)
    if [d for d in upper.degrees() if d > 0] != rel.degrees():
        return False
    for d in rel.degrees():
        src = upper.basis[d]
        if [c.with_based(False) for c in src] != rel.basis[d]:
            return False
        lower = upper.basis.get(d - 1, []) if d > 1 else []
        if not lower:
            continue
        sign_in = [(-1) ** c.norm() for c in src]
        sign_out = [(-1) ** c.norm() for c in lower]
        # D_rel . P  versus  P . D_based
        lhs = {(r, j): v * sign_in[j] for (r, j), v in rel.boundary(d).items()}
        rhs = {(r, j): v * sign_out[r] for (r, j), v in upper.boundary(d).items()}
        if lhs != rhs:
            return False
    return True


@dataclass
class ClassOrderReport:
    k: int
    based_top: tuple  # H_{2k-2}, H_{2k-3}, H_{2k-4}
    unbased_top: tuple  # H_{2k}, H_{2k-1}, H_{2k-2}
    cycle_order: object

    def as_dict(self):
        return {"k": self.k,
                "based": {2 * self.k - 2 - i: str(g) for i, g in enumerate(self.based_top)},
                "unbased": {2 * self.k - i: str(g) for i, g in enumerate(self.unbased_top)},
                "cycle_order": str(self.cycle_order)}


def class_order_report(k: int) -> ClassOrderReport:
    """Top three homology groups of both complexes and the order of the splitting cycle.

    The cycle is the all-ones tilded cell on ``k-1`` points minus twice its
    based twin, taken modulo boundaries in dimension ``2k-2``.
    """
    if k < 3:
        raise InvalidArgument(f"class order report needs k >= 3, got {k}")
    hb = build_complex(k, True).homology()
    hu_cx = build_complex(k, False)
    hu = hu_cx.homology()
    ones = Composition([1] * (k - 1))
    d = 2 * k - 2
    vec = hu_cx.vector(d, {SphereCell(((1, ones),), False): 1,
                           SphereCell(((1, ones),), True): -2})
    order = order_in_quotient(hu_cx.boundary(d + 1), vec)
    zero = AbelianGroup(0, ())
    return ClassOrderReport(
        k,
        tuple(hb.get(2 * k - 2 - i, zero) for i in range(3)),
        tuple(hu.get(2 * k - i, zero) for i in range(3)),
        order,
    )
