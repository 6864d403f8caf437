"""Cohomology rings of surface products and symmetric products, and ``H^*(Exp_3)``.

A class of a closed orientable genus-``g`` surface is coded by an integer:
``0`` is the unit, ``1..2g`` are the degree-one generators ``alpha_i`` and
``2g+1`` is the top class ``beta``.  A tensor monomial in ``H^*(Sigma^k)``
is a ``k``-tuple of such codes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from math import comb, factorial

from .intalg import (
    AbelianGroup,
    IntegerMatrix,
    cokernel,
    hermite_normal_form,
    rank,
)
from .partitions import InvalidArgument


class MismatchedContext(ValueError):
    pass


class InadmissibleMonomial(ValueError):
    pass


class CrossCheckFailed(AssertionError):
    pass


def degree(code: int, g: int) -> int:
    if code == 0:
        return 0
    if 1 <= code <= 2 * g:
        return 1
    if code == 2 * g + 1:
        return 2
    raise InvalidArgument(f"class code {code} out of range for genus {g}")


def class_name(code: int, g: int) -> str:
    if code == 0:
        return "1"
    if code == 2 * g + 1:
        return "b"
    return f"a{code}"


def multiply_classes(x: int, y: int, g: int) -> tuple[int, int]:
    """Product of two surface classes as ``(coefficient, code)``."""
    if x == 0:
        return 1, y
    if y == 0:
        return 1, x
    beta = 2 * g + 1
    if x == beta or y == beta:
        return 0, 0
    if y == x + g:
        return 1, beta
    if x == y + g:
        return -1, beta
    return 0, 0


def tensor_basis(r: int, k: int, g: int) -> list[tuple]:
    """Tensor monomials of total degree ``r``, factor-wise class order."""
    codes = range(2 * g + 2)
    return [w for w in product(codes, repeat=k) if sum(degree(c, g) for c in w) == r]


def multiply_monomials(a: tuple, b: tuple, g: int) -> tuple[int, tuple]:
    """``a * b`` with the Koszul sign for moving each ``b_q`` past ``a_p``, ``p > q``."""
    da = [degree(c, g) for c in a]
    db = [degree(c, g) for c in b]
    crossings = 0
    for q in range(len(b)):
        if db[q]:
            crossings += db[q] * sum(da[q + 1:])
    coef = -1 if crossings % 2 else 1
    out = []
    for x, y in zip(a, b):
        c, z = multiply_classes(x, y, g)
        if not c:
            return 0, ()
        coef *= c
        out.append(z)
    return coef, tuple(out)


@dataclass
class CohomClass:
    """Integer combination of tensor monomials in ``H^*(Sigma^k)``."""

    k: int
    g: int
    terms: dict = field(default_factory=dict)

    @classmethod
    def monomial(cls, word, g: int, coef: int = 1):
        word = tuple(word)
        return cls(len(word), g, {word: coef} if coef else {})

    @classmethod
    def one(cls, k: int, g: int):
        return cls.monomial((0,) * k, g)

    def _check(self, other):
        if not isinstance(other, CohomClass):
            return NotImplemented
        if (self.k, self.g) != (other.k, other.g):
            raise MismatchedContext(f"classes live in different rings: "
                                    f"(k={self.k}, g={self.g}) vs (k={other.k}, g={other.g})")
        return None

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for w, c in other.terms.items():
            v = out.get(w, 0) + c
            if v:
                out[w] = v
            else:
                out.pop(w, None)
        return CohomClass(self.k, self.g, out)

    def __neg__(self):
        return CohomClass(self.k, self.g, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, n: int):
        if not n:
            return CohomClass(self.k, self.g, {})
        return CohomClass(self.k, self.g, {w: n * c for w, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        if self._check(other) is NotImplemented:
            return NotImplemented
        return tensor_multiply(self, other)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, CohomClass):
            return NotImplemented
        return (self.k, self.g, self.terms) == (other.k, other.g, other.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> set:
        return {sum(degree(c, self.g) for c in w) for w in self.terms}

    def vector(self, basis: list) -> list[int]:
        pos = {w: i for i, w in enumerate(basis)}
        vec = [0] * len(basis)
        for w, c in self.terms.items():
            vec[pos[w]] += c
        return vec

    def __str__(self):
        if not self.terms:
            return "0"
        bits = []
        for w in sorted(self.terms):
            c = self.terms[w]
            mono = "(x)".join(class_name(x, self.g) for x in w)
            bits.append(f"{c:+d}*{mono}")
        return " ".join(bits)


def tensor_multiply(a: CohomClass, b: CohomClass) -> CohomClass:
    if (a.k, a.g) != (b.k, b.g):
        raise MismatchedContext(f"classes live in different rings: "
                                f"(k={a.k}, g={a.g}) vs (k={b.k}, g={b.g})")
    out: dict = {}
    for wa, ca in a.terms.items():
        for wb, cb in b.terms.items():
            s, w = multiply_monomials(wa, wb, a.g)
            if s:
                v = out.get(w, 0) + s * ca * cb
                if v:
                    out[w] = v
                else:
                    out.pop(w, None)
    return CohomClass(a.k, a.g, out)


def spread(code: int, k: int, g: int) -> CohomClass:
    """``sum_j pi_j^*(class)``: the class placed in each factor in turn."""
    out = CohomClass(k, g, {})
    for j in range(k):
        w = [0] * k
        w[j] = code
        out = out + CohomClass.monomial(w, g)
    return out


@dataclass(frozen=True)
class SymMonomial:
    """``xi_{i1} ... xi_{im} eta^n`` in ``H^*(Sym^k Sigma)``; xi indices are 1-based."""

    xi: tuple
    n: int
    k: int
    g: int

    def __post_init__(self):
        object.__setattr__(self, "xi", tuple(self.xi))

    @property
    def degree(self) -> int:
        return len(self.xi) + 2 * self.n

    def is_admissible(self) -> bool:
        r, m = self.degree, len(self.xi)
        return (self.n >= 0 and all(1 <= i <= 2 * self.g for i in self.xi)
                and list(self.xi) == sorted(set(self.xi)) and m <= min(r, 2 * self.k - r))

    def __str__(self):
        xi_name, eta_name = ("xi", "eta") if self.k != 2 else ("zeta", "theta")
        bits = [f"{xi_name}{i}" for i in self.xi]
        if self.n:
            bits.append(eta_name + (f"^{self.n}" if self.n > 1 else ""))
        return "*".join(bits) if bits else "1"


def sym_basis(r: int, k: int, g: int) -> list[SymMonomial]:
    """Additive basis of ``H^r(Sym^k Sigma)`` ordered by eta power, then xi indices."""
    out = []
    for m in range(r % 2, min(r, 2 * k - r) + 1, 2):
        n = (r - m) // 2
        for xi in combinations(range(1, 2 * g + 1), m):
            out.append(SymMonomial(xi, n, k, g))
    out.sort(key=lambda s: (s.n, s.xi))
    return out


def sym_monomial_image(mono: SymMonomial) -> CohomClass:
    """Image of a basis monomial in ``H^*(Sigma^k)``, multiplied in the listed order."""
    if not mono.is_admissible():
        raise InadmissibleMonomial(f"{mono} is not a basis monomial for k={mono.k}, g={mono.g}")
    k, g = mono.k, mono.g
    out = CohomClass.one(k, g)
    for i in mono.xi:
        out = out * spread(i, k, g)
    eta = spread(2 * g + 1, k, g)
    for _ in range(mono.n):
        out = out * eta
    return out


def diagonal_pullback(c: CohomClass) -> CohomClass:
    """Pull back along ``(a, b) -> (a, b, b)``: ``x (x) y (x) z -> x (x) (y z)``."""
    if c.k != 3:
        raise MismatchedContext(f"diagonal pullback needs a class on Sigma^3, got k={c.k}")
    out = CohomClass(2, c.g, {})
    for (x, y, z), coef in c.terms.items():
        s, yz = multiply_classes(y, z, c.g)
        if s:
            out = out + CohomClass.monomial((x, yz), c.g, s * coef)
    return out


def injectivity_matrix(r: int, k: int, g: int) -> IntegerMatrix:
    """Columns are the images of the degree-``r`` symmetric basis in tensor monomials."""
    tb = tensor_basis(r, k, g)
    cols = [sym_monomial_image(s).vector(tb) for s in sym_basis(r, k, g)]
    return IntegerMatrix.from_columns(len(tb), [{i: v for i, v in enumerate(c) if v} for c in cols])


def phi_matrix(i: int, g: int) -> IntegerMatrix:
    """Matrix of ``(x, y) -> iota^* x - q_2^* y`` in degree ``i``.

    Columns: the degree-``i`` basis of the threefold symmetric product, then
    that of the twofold one.  Rows: tensor monomials of ``Sigma x Sigma``.
    """
    if not 0 <= i <= 6:
        raise InvalidArgument(f"degree must be in 0..6, got {i}")
    if g < 0:
        raise InvalidArgument(f"genus must be nonnegative, got {g}")
    tb = tensor_basis(i, 2, g)
    cols = [diagonal_pullback(sym_monomial_image(s)).vector(tb) for s in sym_basis(i, 3, g)]
    cols += [(-sym_monomial_image(s)).vector(tb) for s in sym_basis(i, 2, g)]
    return IntegerMatrix.from_columns(len(tb), [{r: v for r, v in enumerate(c) if v} for c in cols])


def phi_kernel_cokernel(i: int, g: int) -> tuple[int, AbelianGroup]:
    m = phi_matrix(i, g)
    return m.shape[1] - rank(m), cokernel(m)


def exp3_cohomology(g: int) -> list[AbelianGroup]:
    """``H^0 .. H^6`` of the three-point subset space of the genus-``g`` surface."""
    out = []
    prev_coker = AbelianGroup(0, ())
    for i in range(7):
        ker, coker = phi_kernel_cokernel(i, g)
        out.append(AbelianGroup(prev_coker.free_rank + ker, prev_coker.torsion))
        prev_coker = coker
    return out


def _gbinom(n: int, r: int) -> Fraction:
    """Binomial coefficient as a polynomial in the top argument (valid for negative ``n``)."""
    num = 1
    for i in range(r):
        num *= n - i
    return Fraction(num, factorial(r))


def euler_closed_form(g: int) -> Fraction:
    return Fraction(-4 * g ** 3 + 12 * g ** 2 - 17 * g + 9, 3)


def euler_from_pieces(g: int) -> Fraction:
    """Sum of the symmetric-product characteristics minus that of the square."""
    return -_gbinom(2 * g - 2, 3) + _gbinom(2 * g - 2, 2) - (2 - 2 * g) ** 2


def euler_exp3(g: int, table: list[AbelianGroup] | None = None) -> int:
    """Euler characteristic from the cohomology table, checked against two formulas."""
    table = exp3_cohomology(g) if table is None else table
    chi = sum((-1) ** i * h.free_rank for i, h in enumerate(table))
    closed, pieces = euler_closed_form(g), euler_from_pieces(g)
    if not chi == closed == pieces:
        raise CrossCheckFailed(f"genus {g}: table gives {chi}, closed form {closed}, "
                               f"pieces give {pieces}")
    return chi


def expected_h3_rank(g: int) -> int:
    return comb(2 * g, 3) + comb(2 * g, 2) + 2 * g


def expected_h4_free_rank(g: int) -> int:
    return comb(2 * g, 2) + 1


def phi2_image_matches(g: int) -> bool:
    """Image lattice of ``Phi_2`` against the span of ``b(x)1``, ``1(x)b`` and antisymmetrized pairs."""
    tb = tensor_basis(2, 2, g)
    beta = 2 * g + 1
    gens = [CohomClass.monomial((beta, 0), g), CohomClass.monomial((0, beta), g)]
    for i in range(1, 2 * g + 1):
        for j in range(i + 1, 2 * g + 1):
            gens.append(CohomClass.monomial((i, j), g) - CohomClass.monomial((j, i), g))
    expected = hermite_normal_form([c.vector(tb) for c in gens], len(tb))
    m = phi_matrix(2, g)
    image = hermite_normal_form([m.column(j) for j in range(m.shape[1])], len(tb))
    return expected == image
