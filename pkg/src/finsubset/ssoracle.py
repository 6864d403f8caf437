"""Finite subset spaces of simplicial sets, as an independent homology check.

An ``n``-simplex of a simplicial set is stored as ``(x, eta)`` where ``x``
is a nondegenerate simplex of dimension ``d`` and ``eta`` is a monotone
surjection ``[n] -> [d]`` written as the tuple ``(eta(0), ..., eta(n))``.
The ``n``-simplices of ``Exp_j(K)`` are sets of at most ``j`` such pairs,
and faces act elementwise.
"""

from __future__ import annotations

import os
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations, combinations_with_replacement, product
from math import comb, prod
from pathlib import Path
from typing import Callable

from .chains import ChainComplex
from .intalg import AbelianGroup
from .partitions import InvalidArgument

DEFAULT_CEILING = 5 * 10 ** 7
CEILING_ENV = "FINSUBSET_CEILING"
DATA_DIR = Path(__file__).with_name("data")


class ResourceBound(RuntimeError):
    pass


def identity(n: int) -> tuple:
    return tuple(range(n + 1))


def jump_mask(eta: tuple) -> int:
    """Bit ``p`` is set when ``eta`` steps up between ``p`` and ``p+1``."""
    m = 0
    for p in range(len(eta) - 1):
        if eta[p + 1] != eta[p]:
            m |= 1 << p
    return m


def surjection_from_mask(mask: int, n: int) -> tuple:
    eta = [0]
    for p in range(n):
        eta.append(eta[-1] + (mask >> p & 1))
    return tuple(eta)


class FiniteSimplicialSet:
    """Nondegenerate simplices by dimension plus a face function.

    ``face(x, i)`` returns ``(y, theta)``: the ``i``-th face of the
    nondegenerate simplex ``x`` is the nondegenerate ``y`` pulled back along
    the surjection ``theta``.
    """

    def __init__(self, simplices: dict[int, list], face: Callable, name: str = "",
                 complete_below: bool = True, complete_above: bool = True):
        self.simplices = {d: list(xs) for d, xs in simplices.items() if xs}
        self._face = face
        self.name = name
        # False when the enumeration was cut off below or above
        self.complete_below = complete_below
        self.complete_above = complete_above
        self._dims = {x: d for d, xs in self.simplices.items() for x in xs}
        self._elem_cache: dict = {}

    def dimension(self) -> int:
        return max(self.simplices, default=-1)

    def dim_of(self, x) -> int:
        return self._dims[x]

    def counts(self) -> dict[int, int]:
        return {d: len(xs) for d, xs in sorted(self.simplices.items())}

    def total(self) -> int:
        return sum(len(xs) for xs in self.simplices.values())

    def face(self, x, i: int):
        return self._face(x, i)

    def face_element(self, elem, i: int):
        """``d_i`` of an arbitrary simplex ``(x, eta)``, normalized."""
        key = (elem, i)
        hit = self._elem_cache.get(key)
        if hit is not None:
            return hit
        x, eta = elem
        rest = eta[:i] + eta[i + 1:]
        d = eta[-1]
        missing = None
        if i == 0 and (len(eta) == 1 or eta[1] != eta[0]):
            missing = eta[0]
        elif i == len(eta) - 1 and eta[i - 1] != eta[i]:
            missing = eta[i]
        elif 0 < i < len(eta) - 1 and eta[i - 1] != eta[i] != eta[i + 1]:
            missing = eta[i]
        if missing is None:
            out = (x, rest)
        else:
            y, theta = self.face(x, missing)
            shifted = tuple(v if v < missing else v - 1 for v in rest)
            out = (y, tuple(theta[v] for v in shifted))
            assert len(theta) == d
        self._elem_cache[key] = out
        return out

    @classmethod
    def from_facets(cls, facets, name: str = "") -> "FiniteSimplicialSet":
        """Ordered simplicial complex generated by the given maximal simplices."""
        faces = set()
        for f in facets:
            f = tuple(sorted(int(v) for v in f))
            if len(set(f)) != len(f):
                raise InvalidArgument(f"repeated vertex in facet {f}")
            for r in range(1, len(f) + 1):
                faces.update(combinations(f, r))
        simplices: dict[int, list] = {}
        for s in sorted(faces):
            simplices.setdefault(len(s) - 1, []).append(s)

        def face(x, i):
            return x[:i] + x[i + 1:], identity(len(x) - 2)

        return cls(simplices, face, name)

    @classmethod
    def from_text(cls, text: str, name: str = "") -> "FiniteSimplicialSet":
        """One maximal simplex per line as whitespace-separated vertex indices; ``#`` starts a comment."""
        facets = []
        for line in text.splitlines():
            line = line.split("#", 1)[0].strip()
            if line:
                facets.append([int(t) for t in line.replace(",", " ").split()])
        if not facets:
            raise InvalidArgument("no simplices in triangulation text")
        return cls.from_facets(facets, name)

    @classmethod
    def from_file(cls, path) -> "FiniteSimplicialSet":
        path = Path(path)
        return cls.from_text(path.read_text(), path.stem)


def shipped(name: str) -> FiniteSimplicialSet:
    """A triangulation from the package data directory (``s2``, ``octahedron``, ``torus``, ``rp2``)."""
    path = DATA_DIR / f"{name}.txt"
    if not path.exists():
        raise InvalidArgument(f"no shipped triangulation named {name!r}")
    return FiniteSimplicialSet.from_file(path)


def sphere_one_cell() -> FiniteSimplicialSet:
    """The 2-sphere as one vertex and one 2-simplex with fully degenerate boundary."""
    def face(x, i):
        if x == "s":
            return "v", (0, 0)
        raise InvalidArgument(f"vertex {x} has no faces")
    return FiniteSimplicialSet({0: ["v"], 2: ["s"]}, face, "sphere_one_cell")


def projective_plane_small() -> FiniteSimplicialSet:
    """One vertex, one edge ``a`` and a 2-simplex bounded by ``a``, ``v``, ``a``."""
    table = {("s", 0): ("a", (0, 1)), ("s", 1): ("v", (0, 0)), ("s", 2): ("a", (0, 1)),
             ("a", 0): ("v", (0,)), ("a", 1): ("v", (0,))}

    def face(x, i):
        return table[(x, i)]
    return FiniteSimplicialSet({0: ["v"], 1: ["a"], 2: ["s"]}, face, "projective_plane_small")


def check_face_identities(s: FiniteSimplicialSet, max_dim: int | None = None) -> bool:
    """``d_i d_j = d_{j-1} d_i`` for ``i < j`` on every nondegenerate simplex."""
    top = s.dimension() if max_dim is None else max_dim
    for n, xs in s.simplices.items():
        if n < 2 or n > top:
            continue
        for x in xs:
            e = (x, identity(n))
            for j in range(n + 1):
                dj = s.face_element(e, j)
                for i in range(j):
                    if s.face_element(dj, i) != s.face_element(s.face_element(e, i), j - 1):
                        return False
    return True


def _collapse(elements: tuple, n: int):
    """Write a set of ``n``-simplices as a nondegenerate set pulled back along a surjection."""
    mask = 0
    for _, eta in elements:
        mask |= jump_mask(eta)
    if mask == (1 << n) - 1:
        return elements, identity(n)
    gamma = surjection_from_mask(mask, n)
    keep = [p for p in range(n + 1) if p == 0 or gamma[p] != gamma[p - 1]]
    reduced = tuple(sorted((x, tuple(eta[p] for p in keep)) for x, eta in elements))
    return reduced, gamma


def candidate_count(k: FiniteSimplicialSet, j: int, n: int) -> int:
    """Number of nondegenerate ``n``-simplices of ``Exp_j(K)``."""
    return sum(c for _, c in _mask_combos(k, j, n))


def _mask_combos(k: FiniteSimplicialSet, j: int, n: int):
    sizes = k.counts()
    masks = [m for m in range(1 << n) if sizes.get(bin(m).count("1"), 0)]
    full = (1 << n) - 1
    for r in range(1, j + 1):
        for combo in combinations_with_replacement(masks, r):
            acc = 0
            for m in combo:
                acc |= m
            if acc != full:
                continue
            mult = Counter(combo)
            count = prod(comb(sizes[bin(m).count("1")], c) for m, c in mult.items())
            if count:
                yield mult, count


def resolve_ceiling(ceiling: int | None) -> int:
    if ceiling is not None:
        return int(ceiling)
    env = os.environ.get(CEILING_ENV)
    return int(float(env)) if env else DEFAULT_CEILING


def exp_simplicial(k: FiniteSimplicialSet, j: int, max_dim: int | None = None,
                   min_dim: int = 0, ceiling: int | None = None) -> FiniteSimplicialSet:
    """Nondegenerate simplices of ``Exp_j(K)`` in dimensions ``min_dim..max_dim``.

    Raises ResourceBound before enumerating if the total simplex count
    exceeds ``ceiling`` (default from the environment, else 5e7).
    """
    if j < 1:
        raise InvalidArgument(f"subset size bound must be positive, got {j}")
    top = j * k.dimension()
    if max_dim is None:
        max_dim = top
    if max_dim < 0:
        raise InvalidArgument(f"dimension bound must be nonnegative, got {max_dim}")
    limit = resolve_ceiling(ceiling)
    dims = range(max(min_dim, 0), min(max_dim, top) + 1)
    total = 0
    for n in dims:
        total += candidate_count(k, j, n)
        if total > limit:
            raise ResourceBound(f"Exp_{j}({k.name}) needs more than {limit} simplices "
                                f"up to dimension {n}")
    simplices: dict[int, list] = {}
    for n in dims:
        out = []
        for mult, _ in _mask_combos(k, j, n):
            groups = []
            for m, c in sorted(mult.items()):
                eta = surjection_from_mask(m, n)
                pool = k.simplices[bin(m).count("1")]
                groups.append([tuple((x, eta) for x in xs) for xs in combinations(pool, c)])
            for parts in product(*groups):
                out.append(tuple(sorted(e for part in parts for e in part)))
        out.sort()
        simplices[n] = out

    def face(x, i):
        n = len(x[0][1]) - 1
        faced = tuple(sorted({k.face_element(e, i) for e in x}))
        return _collapse(faced, n - 1)

    return FiniteSimplicialSet(simplices, face, f"Exp_{j}({k.name})",
                               complete_below=min_dim <= 0, complete_above=max_dim >= top)


def normalized_complex(s: FiniteSimplicialSet) -> ChainComplex:
    """Normalized chains: degenerate faces are dropped from the alternating sum."""
    def bnd(x):
        n = s.dim_of(x)
        out: dict = {}
        if n == 0:
            return out
        for i in range(n + 1):
            y, theta = s.face(x, i)
            if len(theta) == n and theta[-1] == n - 1:
                v = out.get(y, 0) + (-1) ** i
                if v:
                    out[y] = v
                else:
                    out.pop(y)
        return out

    cells = [x for xs in s.simplices.values() for x in xs]
    return ChainComplex.from_cells(cells, s.dim_of, bnd, key=None,
                                   meta={"name": s.name})


def normalized_homology(s: FiniteSimplicialSet, degrees=None) -> dict[int, AbelianGroup]:
    """Homology of the normalized chains.

    When ``s`` is a truncated enumeration, the bottom and top computed
    dimensions are dropped from the report on the side that was cut, since
    their groups are not determined by the simplices present.
    """
    cx = normalized_complex(s)
    h = cx.homology()
    lo, hi = min(s.simplices), s.dimension()
    h = {d: g for d, g in h.items()
         if (d > lo or (s.complete_below and d >= lo)) and (d < hi or s.complete_above)}
    if degrees is not None:
        missing = [d for d in degrees if d not in h]
        if missing:
            raise InvalidArgument(f"degrees {missing} are not determined by this enumeration")
        h = {d: h[d] for d in degrees}
    return h


SPACES = {"S2": "s2", "T2": "torus", "RP2": "rp2"}


@dataclass
class OracleReport:
    space: str
    k: int
    oracle: dict
    predicted: dict
    counts: dict = field(default_factory=dict)

    @property
    def matches(self) -> dict:
        return {d: self.oracle.get(d) == g for d, g in self.predicted.items()}

    @property
    def ok(self) -> bool:
        return all(self.matches.values())

    def as_dict(self):
        return {"space": self.space, "k": self.k, "ok": self.ok,
                "counts": {str(d): c for d, c in self.counts.items()},
                "degrees": {str(d): {"oracle": str(self.oracle.get(d)), "predicted": str(g),
                                     "match": self.matches[d]}
                            for d, g in sorted(self.predicted.items())}}


def _prediction(space: str, k: int) -> dict[int, AbelianGroup]:
    from . import lexcell, surface, symring
    if space == "S2":
        return dict(enumerate(lexcell.homology(k, based=False)))
    spec = surface.SurfaceSpec(orientable=(space == "T2"), genus=1)
    if k >= 3:
        top, nxt = surface.top_homology(spec, k)
        return {2 * k: top, 2 * k - 1: nxt}
    if k == 2 and spec.orientable:
        # closed orientable 4-manifold: H_3 is dual to H^1 of the symmetric square
        return {4: AbelianGroup(1, ()), 3: AbelianGroup(len(symring.sym_basis(1, 2, spec.genus)), ())}
    raise InvalidArgument(f"no top-degree prediction for {space} with k={k}")


def oracle_compare(space: str, k: int, ceiling: int | None = None) -> OracleReport:
    """Oracle homology of ``Exp_k`` of a shipped triangulation against the cellular prediction.

    Full homology for S2; the top two degrees for T2 and RP2.
    """
    space = space.upper()
    if space not in SPACES:
        raise InvalidArgument(f"unknown space {space!r}; choose from {sorted(SPACES)}")
    if k < 1:
        raise InvalidArgument(f"k must be positive, got {k}")
    predicted = _prediction(space, k)
    base = shipped(SPACES[space])
    if space == "S2":
        ex = exp_simplicial(base, k, ceiling=ceiling)
        oracle = normalized_homology(ex)
    else:
        top = 2 * k
        ex = exp_simplicial(base, k, max_dim=top, min_dim=top - 2, ceiling=ceiling)
        oracle = normalized_homology(ex, degrees=[top, top - 1])
    return OracleReport(space, k, oracle, predicted, ex.counts())
