"""Top three dimensions of the lexicographic complex for a closed surface.

The surface carries its standard structure: one vertex, ``n`` edges and one
face attached along ``[e1, e(1+g)]...[eg, e2g]`` (orientable, ``n = 2g``) or
``e1^2 ... eg^2`` (non-orientable, ``n = g``).  Only the cells of dimension
``2k``, ``2k-1`` and ``2k-2`` are built, which is enough for ``H_2k`` and
``H_{2k-1}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement

from .intalg import AbelianGroup, IntegerMatrix, homology_at, rank
from .lexcell import boundary_lambda, boundary_nu
from .partitions import Composition, InvalidArgument, compositions, signed_binomial


class UnsupportedCell(ValueError):
    """A cell or product outside the top-slice fragment was requested."""


@dataclass(frozen=True)
class SurfaceSpec:
    orientable: bool = True
    genus: int = 1

    def __post_init__(self):
        if self.genus < 0 or (not self.orientable and self.genus < 1):
            raise InvalidArgument(f"invalid genus {self.genus} for "
                                  f"{'orientable' if self.orientable else 'non-orientable'} surface")

    @property
    def edge_count(self) -> int:
        return 2 * self.genus if self.orientable else self.genus

    def name(self) -> str:
        return f"{'orientable' if self.orientable else 'non-orientable'} genus {self.genus}"


@dataclass(frozen=True)
class SurfaceCell:
    """Face composition (or None) cupped with the edge cell ``e_J``.

    ``edges`` has one multiplicity per edge; ``based`` marks cells that also
    contain the vertex.
    """

    face: Composition | None
    edges: tuple
    based: bool = False

    def __post_init__(self):
        if self.face is not None and not isinstance(self.face, Composition):
            object.__setattr__(self, "face", Composition(self.face))
        object.__setattr__(self, "edges", tuple(int(j) for j in self.edges))
        if any(j < 0 for j in self.edges):
            raise InvalidArgument(f"negative edge multiplicity in {self.edges}")

    def face_norm(self) -> int:
        return self.face.norm() if self.face is not None else 0

    def dimension(self) -> int:
        d = sum(self.edges)
        if self.face is not None:
            d += self.face.norm() + self.face.length()
        return d

    def points(self) -> int:
        return self.face_norm() + sum(self.edges) + (1 if self.based else 0)

    def sort_key(self):
        fk = self.face.sort_key() if self.face is not None else (0, ())
        return (sum(self.edges), tuple(-j for j in self.edges), fk, 0 if self.based else 1)

    def __str__(self):
        bits = []
        if self.face is not None:
            o, c = ("(", ")") if self.based else ("[", "]")
            bits.append(o + ",".join(map(str, self.face.parts)) + c)
        elif self.based:
            bits.append("v")
        for i, j in enumerate(self.edges, start=1):
            if j:
                bits.append(f"e{i}({j})")
        return "*".join(bits) if bits else "v"


def _add(chain: dict, key, coef: int):
    if coef:
        v = chain.get(key, 0) + coef
        if v:
            chain[key] = v
        else:
            chain.pop(key, None)


def _unit(n: int, *idx) -> tuple:
    j = [0] * n
    for i in idx:
        j[i] += 1
    return tuple(j)


def attach_word_image(gen: int, spec: SurfaceSpec) -> dict:
    """Image of ``e(gen)`` under the chain map induced by the face's attaching word.

    Edges are numbered from 1 in the text but stored 0-based in the tuples.
    """
    n, g = spec.edge_count, spec.genus
    out: dict = {}
    if gen == 1:
        if not spec.orientable:
            for i in range(g):
                _add(out, _unit(n, i), 2)
    elif gen == 2:
        if spec.orientable:
            for i in range(g):
                _add(out, _unit(n, i, i + g), 2)
        else:
            for i in range(g):
                _add(out, _unit(n, i, i), 2)
            for i in range(g):
                for j in range(i + 1, g):
                    _add(out, _unit(n, i, j), 4)
    else:
        raise UnsupportedCell(f"attaching-word image of e({gen}) is outside the top slice")
    return out


def _cup_monomials(a: tuple, b: tuple):
    """``e_a * e_b`` as ``(sign_or_coefficient, product)``."""
    coef = 1
    prod = list(a)
    for p, lp in enumerate(b):
        if not lp:
            continue
        # move the factor past every higher-index factor of a
        higher = sum(a[q] for q in range(p + 1, len(a)))
        if (lp * higher) % 2:
            coef = -coef
        if a[p]:
            if a[p] + lp > 2:
                raise UnsupportedCell(f"edge {p + 1} multiplicity {a[p] + lp} exceeds 2")
            coef *= signed_binomial(a[p] + lp, a[p])
        prod[p] += lp
    return coef, tuple(prod)


def cup_edge_cells(a: dict, b: dict) -> dict:
    """Product of two edge chains ``{J: coef}``, written in increasing edge order."""
    out: dict = {}
    for ja, ca in a.items():
        for jb, cb in b.items():
            if len(ja) != len(jb):
                raise InvalidArgument("edge tuples of different lengths")
            s, j = _cup_monomials(ja, jb)
            _add(out, j, s * ca * cb)
    return out


def _edge_boundary(edges: tuple) -> dict:
    # single points on loop edges have zero boundary; nothing larger is needed
    if any(j > 1 for j in edges):
        raise UnsupportedCell(f"boundary of edge cell {edges} is outside the top slice")
    return {}


def face_boundary(s: Composition, spec: SurfaceSpec) -> dict:
    """Boundary of the unbased face cell, as ``{SurfaceCell: coef}`` with no extra edges."""
    n = spec.edge_count
    zero = (0,) * n
    out: dict = {}
    for c, v in boundary_nu(s, tilde=True).items():
        (_, t), = c.factors
        _add(out, SurfaceCell(t, zero, c.based), v)
    sign = (-1) ** s.norm()
    for c, v in boundary_lambda(s, tilde=True).items():
        (_, t), = c.factors
        _add(out, SurfaceCell(t, zero, False), sign * v)
    gsign = (-1) ** (s.norm() + s.length() - 1)
    rest = Composition(s.parts[:-1]) if s.length() > 1 else None
    for j, v in attach_word_image(s[-1], spec).items():
        _add(out, SurfaceCell(rest, j, False), gsign * v)
    return out


def cell_boundary(cell: SurfaceCell, spec: SurfaceSpec) -> dict:
    """Boundary of an unbased top-slice cell ``face * e_J`` by the Leibniz rule."""
    if cell.based:
        raise UnsupportedCell("boundaries of based cells are not part of the top slice")
    out: dict = {}
    if cell.face is not None:
        for f, v in face_boundary(cell.face, spec).items():
            for j, w in cup_edge_cells({f.edges: 1}, {cell.edges: 1}).items():
                _add(out, SurfaceCell(f.face, j, f.based), v * w)
        fdim = cell.face.norm() + cell.face.length()
    else:
        fdim = 0
    for j, v in _edge_boundary(cell.edges).items():
        _add(out, SurfaceCell(cell.face, j, False), (-1) ** fdim * v)
    return out


def _edge_tuples(n: int, size: int):
    for combo in combinations_with_replacement(range(n), size):
        j = [0] * n
        for i in combo:
            j[i] += 1
        if max(j, default=0) <= 2:
            yield tuple(j)


def top_cells(spec: SurfaceSpec, k: int, dim: int) -> list[SurfaceCell]:
    """All cells of the given dimension admissible in the ``k``-point space, sorted."""
    n = spec.edge_count
    out = []
    faces = [None] + [c for j in range(1, k + 1) for c in compositions(j)]
    for based in (True, False):
        budget = k - (1 if based else 0)
        for f in faces:
            fn = f.norm() if f is not None else 0
            fd = fn + f.length() if f is not None else 0
            size = dim - fd
            if size < 0 or fn + size > budget:
                continue
            if f is None and size == 0:
                continue
            if n == 0 and size > 0:
                continue
            for j in _edge_tuples(n, size) if size else [(0,) * n]:
                out.append(SurfaceCell(f, j, based))
    out.sort(key=SurfaceCell.sort_key)
    return out


@dataclass
class TopSlice:
    spec: SurfaceSpec
    k: int
    bases: tuple  # cells in dimensions 2k, 2k-1, 2k-2
    d_top: IntegerMatrix  # C_2k -> C_{2k-1}
    d_next: IntegerMatrix  # C_{2k-1} -> C_{2k-2}


def _matrix(cols, rows, spec):
    pos = {c: i for i, c in enumerate(rows)}
    entries = {}
    for jcol, c in enumerate(cols):
        for f, v in cell_boundary(c, spec).items():
            try:
                i = pos[f]
            except KeyError:
                raise UnsupportedCell(f"boundary term {f} of {c} is not a listed cell") from None
            entries[(i, jcol)] = entries.get((i, jcol), 0) + v
    return IntegerMatrix(len(rows), len(cols), entries)


def top_slice_complex(spec: SurfaceSpec, k: int) -> TopSlice:
    if k < 2:
        raise InvalidArgument(f"top slice needs k >= 2, got {k}")
    bases = tuple(top_cells(spec, k, 2 * k - i) for i in range(3))
    for cell in bases[1] + bases[2]:
        assert max(cell.edges, default=0) <= 2, cell
    d_top = _matrix(bases[0], bases[1], spec)
    d_next = _matrix(bases[1], bases[2], spec)
    return TopSlice(spec, k, bases, d_top, d_next)


def top_homology(spec: SurfaceSpec, k: int) -> tuple[AbelianGroup, AbelianGroup]:
    """``(H_2k, H_{2k-1})`` of the ``k``-point subset space of the surface."""
    if k < 3:
        raise InvalidArgument(f"top homology is computed for k >= 3, got {k}")
    ts = top_slice_complex(spec, k)
    h_top = AbelianGroup(len(ts.bases[0]) - rank(ts.d_top), ())
    h_next = homology_at(ts.d_next, ts.d_top)
    return h_top, h_next
