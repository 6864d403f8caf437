import random

import pytest
from hypothesis import given, settings, strategies as st

from finsubset.intalg import (
    INFINITE,
    AbelianGroup,
    CompositionNotZero,
    IntegerMatrix,
    cokernel,
    hermite_normal_form,
    homology_at,
    invariant_factors_of_diagonal,
    kernel_basis,
    order_in_quotient,
    rank,
    smith_normal_form,
)
from oracles import determinantal_invariants, rational_rank


def small_matrices(max_rows=4, max_cols=5, bound=6):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(st.integers(-bound, bound), min_size=c, max_size=c),
                               min_size=r, max_size=r)))


def test_smith_small_example():
    assert smith_normal_form(IntegerMatrix.from_dense([[2, 4], [6, 8]])).invariants == (2, 4)


def test_smith_of_zero_and_empty():
    assert smith_normal_form(IntegerMatrix(3, 2)).invariants == ()
    assert smith_normal_form(IntegerMatrix(0, 4)).invariants == ()


def test_smith_diagonal_normalization():
    m = IntegerMatrix.from_dense([[4, 0, 0], [0, 6, 0], [0, 0, 1]])
    assert smith_normal_form(m).invariants == (1, 2, 12)


def test_invariant_factors_chain():
    assert invariant_factors_of_diagonal([6, 4, 0, 1, 1]) == [1, 1, 2, 12]


@settings(max_examples=500, deadline=None)
@given(small_matrices())
def test_smith_matches_determinantal_divisors(a):
    snf = smith_normal_form(IntegerMatrix.from_dense(a))
    assert list(snf.invariants) == determinantal_invariants(a)
    inv = snf.invariants
    assert all(inv[i + 1] % inv[i] == 0 for i in range(len(inv) - 1))


@settings(max_examples=150, deadline=None)
@given(small_matrices(5, 5, 9))
def test_rank_matches_rational_elimination(a):
    assert rank(IntegerMatrix.from_dense(a)) == rational_rank(a)


def test_large_sparse_unit_matrix_is_fast():
    rng = random.Random(7)
    n = 3000
    entries = {(i, i): 1 for i in range(n)}
    for _ in range(2 * n):
        entries[(rng.randrange(n), rng.randrange(n))] = rng.choice([-1, 1, 2])
    assert rank(IntegerMatrix(n, n, entries)) <= n


def test_homology_at_simple_cases():
    d1 = IntegerMatrix(0, 1)
    d2 = IntegerMatrix.from_dense([[-2]])
    assert homology_at(d1, d2) == AbelianGroup(0, (2,))
    with pytest.raises(CompositionNotZero):
        homology_at(IntegerMatrix.from_dense([[1]]), IntegerMatrix.from_dense([[1]]))


def test_cokernel():
    assert cokernel(IntegerMatrix.from_dense([[2, 0], [0, 0]])) == AbelianGroup(1, (2,))


def test_kernel_basis_example():
    assert kernel_basis(IntegerMatrix.from_dense([[1, 1, 0], [0, 0, 0]])) == [[1, -1, 0], [0, 0, 1]]


@settings(max_examples=150, deadline=None)
@given(small_matrices(4, 5, 5))
def test_kernel_basis_is_kernel_and_saturated(a):
    m = IntegerMatrix.from_dense(a)
    basis = kernel_basis(m)
    assert len(basis) == m.cols - rank(m)
    for v in basis:
        assert m.apply(v) == [0] * m.rows
    if basis:
        # saturated lattice: the basis matrix has trivial torsion cokernel part
        assert smith_normal_form(IntegerMatrix.from_dense(basis)).torsion() == ()


@settings(max_examples=100, deadline=None)
@given(small_matrices(4, 4, 5), st.randoms(use_true_random=False))
def test_hermite_form_ignores_generator_order(a, rnd):
    rows = [r for r in a]
    shuffled = rows[:]
    rnd.shuffle(shuffled)
    width = len(rows[0])
    assert hermite_normal_form(rows, width) == hermite_normal_form(shuffled, width)


def test_order_in_quotient():
    m = IntegerMatrix.from_dense([[2], [0]])
    assert order_in_quotient(m, [1, 0]) == 2
    assert order_in_quotient(m, [0, 1]) is INFINITE
    assert order_in_quotient(m, [2, 0]) == 1
    n = IntegerMatrix.from_dense([[4, 0], [0, 6]])
    assert order_in_quotient(n, [1, 1]) == 12


def test_abelian_group_text_round_trip():
    for text in ["0", "Z", "Z^3", "Z/2", "Z^2 + Z/2 + Z/4"]:
        assert str(AbelianGroup.parse(text)) == text
    assert AbelianGroup.parse("Z/2 + Z/3") == AbelianGroup(0, (6,))
    with pytest.raises(ValueError):
        AbelianGroup(0, (4, 2))


def test_matrix_product_and_transpose():
    a = IntegerMatrix.from_dense([[1, 2], [3, 4]])
    b = IntegerMatrix.from_dense([[0, 1], [1, 0]])
    assert (a @ b).to_dense() == [[2, 1], [4, 3]]
    assert a.T.to_dense() == [[1, 3], [2, 4]]
    with pytest.raises(IndexError):
        IntegerMatrix(1, 1, {(1, 0): 1})
