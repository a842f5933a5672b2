"""Independent oracles used to freeze expected values.

These deliberately use different algorithms from the library: weight
multiplicities via the Kostant alternating sum over the Weyl group instead
of the Freudenthal recursion, symmetric/exterior powers by direct multiset
enumeration instead of the graded convolution, and the rank-1 chart
function from the binomial theorem instead of symbolic conjugation.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from math import comb

from flagsplit.fpoly import SparsePolynomial
from flagsplit.rootdata import RootSystem


def kostant_partition_count(rs: RootSystem, vec: tuple[int, ...]) -> int:
    """Number of ways to write ``vec`` (simple-root coordinates) as a sum of
    positive roots, by recursion over the root list."""
    roots = tuple(r.simple for r in rs.positive_roots)

    @lru_cache(maxsize=None)
    def count(v: tuple[int, ...], k: int) -> int:
        if all(x == 0 for x in v):
            return 1
        if k == len(roots) or any(x < 0 for x in v):
            return 0
        total = 0
        cur = v
        while all(x >= 0 for x in cur):
            total += count(cur, k + 1)
            cur = tuple(a - b for a, b in zip(cur, roots[k]))
        return total

    return count(tuple(vec), 0)


def kostant_multiplicity(rs: RootSystem, lam, mu) -> int:
    """Weight multiplicity via the alternating Weyl sum over the partition
    function."""
    lam_rho = tuple(c + 1 for c in lam)
    mu_rho = tuple(c + 1 for c in mu)
    total = 0
    for word in rs.weyl_elements():
        moved = rs.weight_action(word, lam_rho)
        diff_fund = tuple(a - b for a, b in zip(moved, mu_rho))
        coords = rs.to_simple_coords(diff_fund)
        if any(x.denominator != 1 for x in coords):
            continue
        vec = tuple(int(x) for x in coords)
        if any(x < 0 for x in vec):
            continue
        total += (-1) ** len(word) * kostant_partition_count(rs, vec)
    return total


def brute_sym_power(weights, n) -> dict[tuple[int, ...], int]:
    """Multiset of degree-n monomial weights by direct enumeration."""
    out: dict[tuple[int, ...], int] = {}
    for combo in itertools.combinations_with_replacement(range(len(weights)), n):
        total = tuple(sum(weights[i][k] for i in combo) for k in range(len(weights[0])))
        out[total] = out.get(total, 0) + 1
    if n == 0:
        rank = len(weights[0]) if weights else 0
        return {(0,) * rank: 1}
    return out


def brute_exterior_power(weights, j) -> dict[tuple[int, ...], int]:
    out: dict[tuple[int, ...], int] = {}
    rank = len(weights[0]) if weights else 0
    if j == 0:
        return {(0,) * rank: 1}
    for combo in itertools.combinations(range(len(weights)), j):
        total = tuple(sum(weights[i][k] for i in combo) for k in range(rank))
        out[total] = out.get(total, 0) + 1
    return out


def rank1_chart_closed_form(p: int) -> SparsePolynomial:
    """(1 - x y)^(p-1) over the two chart variables, from the binomial theorem."""
    terms = {}
    for k in range(p):
        c = ((-1) ** k * comb(p - 1, k)) % p
        if c:
            terms[(k, k)] = c
    return SparsePolynomial(p, ("y21", "x12"), terms)


def rank1_chart_by_conjugation(p: int) -> dict[tuple[int, int], int]:
    """Top-left entry of g (I+X) g^{-1} to the (p-1)-st power for the generic
    2x2 pair, computed with plain dict arithmetic.

    Exponent keys are (y-degree, x-degree); coefficients are reduced mod p.
    """

    def mul(a, b):
        out = {}
        for (ya, xa), ca in a.items():
            for (yb, xb), cb in b.items():
                key = (ya + yb, xa + xb)
                out[key] = (out.get(key, 0) + ca * cb) % p
        return {k: c for k, c in out.items() if c}

    def add(a, b):
        out = dict(a)
        for k, c in b.items():
            out[k] = (out.get(k, 0) + c) % p
        return {k: c for k, c in out.items() if c}

    one = {(0, 0): 1}
    y = {(1, 0): 1}
    x = {(0, 1): 1}
    neg_y = {(1, 0): p - 1}
    zero = {}
    g = [[one, zero], [y, one]]
    i_plus_x = [[one, x], [zero, one]]
    g_inv = [[one, zero], [neg_y, one]]

    def matmul(a, b):
        return [
            [add(mul(a[i][0], b[0][j]), mul(a[i][1], b[1][j])) for j in range(2)]
            for i in range(2)
        ]

    conj = matmul(matmul(g, i_plus_x), g_inv)
    f = one
    for _ in range(p - 1):
        f = mul(f, conj[0][0])
    return f


def dominance_by_descent(rs: RootSystem, mu, lam) -> bool:
    """Is lam - mu a sum of simple roots?  Breadth-first subtraction oracle."""
    start = tuple(a - b for a, b in zip(lam, mu))
    seen = {start}
    queue = [start]
    zero = (0,) * rs.rank
    # bound the search by the total coroot pairing, which strictly drops
    def level(v) -> int:
        return sum(sum(u * c for u, c in zip(r.coroot, v)) for r in rs.positive_roots)
    while queue:
        v = queue.pop()
        if v == zero:
            return True
        if level(v) <= 0:
            continue
        for i in range(1, rs.rank + 1):
            w = tuple(a - b for a, b in zip(v, rs.simple_root(i).fund))
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return False
