"""Slow, independent reference computations used only by the tests."""

from fractions import Fraction
from itertools import combinations, permutations
from math import gcd


def signed_binomial_by_enumeration(m: int, r: int) -> int:
    """Sum over r-subsets of [m] of the sign of the shuffle putting the subset first."""
    total = 0
    for chosen in combinations(range(m), r):
        cs = set(chosen)
        inversions = sum(1 for c in chosen for u in range(c) if u not in cs)
        total += -1 if inversions % 2 else 1
    return total


def compositions_by_brute_force(j: int) -> set:
    out = set()

    def rec(rest, prefix):
        if rest == 0:
            out.add(tuple(prefix))
            return
        for p in range(1, rest + 1):
            rec(rest - p, prefix + [p])
    rec(j, [])
    return out


def det(rows) -> int:
    n = len(rows)
    total = 0
    for perm in permutations(range(n)):
        inv = sum(1 for a in range(n) for b in range(a + 1, n) if perm[a] > perm[b])
        term = -1 if inv % 2 else 1
        for i, p in enumerate(perm):
            term *= rows[i][p]
            if not term:
                break
        total += term
    return total


def determinantal_invariants(a) -> list[int]:
    """Invariant factors as ratios of gcds of k x k minors."""
    rows, cols = len(a), len(a[0]) if a else 0
    divisors = [1]
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for rs in combinations(range(rows), k):
            for cs in combinations(range(cols), k):
                g = gcd(g, det([[a[r][c] for c in cs] for r in rs]))
        if g == 0:
            break
        divisors.append(g)
    return [divisors[i] // divisors[i - 1] for i in range(1, len(divisors))]


def rational_rank(a) -> int:
    m = [[Fraction(x) for x in row] for row in a]
    rank = 0
    cols = len(m[0]) if m else 0
    for c in range(cols):
        piv = next((r for r in range(rank, len(m)) if m[r][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for r in range(len(m)):
            if r != rank and m[r][c]:
                f = m[r][c] / m[rank][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[rank])]
        rank += 1
    return rank


def cohomology_from_homology(h: dict) -> dict:
    """Universal coefficients: free part of H_i plus torsion of H_{i-1}."""
    from finsubset.intalg import AbelianGroup
    top = max(h)
    return {i: AbelianGroup(h[i].free_rank, h[i - 1].torsion if i > 0 else ())
            for i in range(top + 1)}
