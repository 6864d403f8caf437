from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from finsubset import lexcell
from finsubset.intalg import INFINITE, AbelianGroup, kernel_basis
from finsubset.lexcell import (
    SphereCell,
    boundary_lambda,
    boundary_nu,
    build_complex,
    cells,
    class_order_report,
    clipped_cube,
    clipped_cube_ranks,
    expected_clipped_rank,
    full_boundary,
    quotient_iso_check,
)
from finsubset.partitions import Composition, InvalidArgument, compositions

Z, O = AbelianGroup(1), AbelianGroup(0)


def G(text):
    return AbelianGroup.parse(text)


def test_cell_labels():
    assert SphereCell.single([2, 1]).label() == "(2,1)"
    assert SphereCell.single([2, 1], based=False).label() == "[2,1]"
    assert SphereCell((), True).label() == "v"
    assert SphereCell.single([3]).dimension() == 4


def test_small_boundaries():
    assert boundary_nu(Composition([2]), tilde=True) == {
        SphereCell.single([1], True): -2, SphereCell.single([1], False): 1}
    assert boundary_nu(Composition([1, 1]), tilde=False) == {}
    assert boundary_lambda(Composition([1, 1]), tilde=True) == {}
    assert boundary_lambda(Composition([2, 2]), tilde=False) == {
        SphereCell.single([4], True): 2}


def test_k2_unbased_homology():
    assert lexcell.homology(2, False) == [Z, O, Z, O, Z]


def test_k3_based_is_a_four_sphere():
    assert lexcell.homology(3, True) == [Z, O, O, O, Z]


def test_cells_reject_bad_arguments():
    with pytest.raises(InvalidArgument):
        cells(0, True)
    with pytest.raises(InvalidArgument):
        class_order_report(2)


@pytest.mark.parametrize("k", range(1, 8))
def test_cell_counts_by_bidegree(k):
    based = cells(k, True)
    for j in range(1, k):
        for l in range(1, j + 1):
            n = sum(1 for c in based if c.norm() == j and c.factors[0][1].length() == l)
            assert n == comb(j - 1, l - 1)
    if k == 1:
        assert build_complex(k, False).euler_characteristic() == 2
    else:
        assert build_complex(k, True).euler_characteristic() == 2
        assert build_complex(k, False).euler_characteristic() == 3


def _apply(op, chain, **kw):
    out = {}
    for cell, c in chain.items():
        (_, s), = cell.factors
        for t, v in op(s, tilde=not cell.based, **kw).items():
            out[t] = out.get(t, 0) + c * v
    return {t: v for t, v in out.items() if v}


cells_up_to_9 = st.integers(1, 9).flatmap(
    lambda j: st.sampled_from(compositions(j))).flatmap(
    lambda s: st.booleans().map(lambda b: SphereCell.single(s.parts, based=b)))


@settings(max_examples=300, deadline=None)
@given(cells_up_to_9)
def test_nu_lambda_square_zero_and_commute(cell):
    start = {cell: 1}
    nu = lambda ch: _apply(boundary_nu, ch)
    lam = lambda ch: _apply(boundary_lambda, ch)
    assert nu(nu(start)) == {}
    assert lam(lam(start)) == {}
    assert nu(lam(start)) == lam(nu(start))
    assert _apply(boundary_lambda, _apply(boundary_lambda, start, rational_basis=True),
                  rational_basis=True) == {}


@pytest.mark.parametrize("m", [1, 2])
@pytest.mark.parametrize("k", range(1, 6))
def test_d_squared_zero(k, m):
    for based in (True, False):
        assert build_complex(k, based, m).check_d_squared()


def test_full_boundary_of_product_is_leibniz():
    a = SphereCell(((1, Composition([2])), (2, Composition([2]))), False)
    b = full_boundary(a)
    # the second factor's terms pick up the sign of the first factor's dimension (3)
    assert b[SphereCell(((1, Composition([1])), (2, Composition([2]))), True)] == -2
    assert b[SphereCell(((1, Composition([2])), (2, Composition([1]))), True)] == 2
    assert b[SphereCell(((1, Composition([2])), (2, Composition([1]))), False)] == -1


def test_two_sphere_wedge_low_k():
    h = lexcell.homology(2, True, m=2)
    assert h[0] == Z and h[2] == AbelianGroup(2)


@pytest.mark.parametrize("k", range(1, 9))
def test_quotient_iso_check(k):
    assert quotient_iso_check(k)


def test_quotient_iso_check_two_faces():
    assert quotient_iso_check(3, m=2)


@pytest.mark.parametrize("k", range(3, 7))
def test_class_order_report(k):
    r = class_order_report(k)
    assert r.cycle_order == k - 1
    assert r.based_top[2] == AbelianGroup(0, (k - 2,) if k > 3 else ())
    assert r.as_dict()["unbased"][2 * k] == "Z"


@pytest.mark.parametrize("k", range(3, 9))
def test_clipped_ranks_rational(k):
    ranks = clipped_cube_ranks(k, rational_basis=True)
    for l in range(1, k):
        assert ranks[l] == expected_clipped_rank(k, l)


def test_clipped_top_generators():
    k = 5
    cx = clipped_cube(k, rational_basis=True)
    d = 2 * k - 1
    assert cx.boundary(d + 1).is_zero()
    twos = [Composition([1] * i + [2] + [1] * (k - 2 - i)) for i in range(k - 1)]
    gen = cx.vector(d, {t: (-1) ** i for i, t in enumerate(twos)})
    assert kernel_basis(cx.boundary(d)) in ([gen], [[-v for v in gen]])
    assert lexcell.order_in_quotient(cx.boundary(d + 1), gen) is INFINITE
