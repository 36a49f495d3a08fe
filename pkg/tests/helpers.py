"""Shared strategies and independent oracles for the test suite.

The oracles here deliberately avoid the library's own algorithms: the
dimension oracle enumerates every variable subset, and the membership
oracle solves a bounded-degree linear system for the cofactors.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

from hypothesis import strategies as st

from slicegb.poly import Polynomial
from slicegb.rings import PowerProduct, Ring, pp_mul


def all_power_products(n: int, max_degree: int) -> List[PowerProduct]:
    """Every exponent tuple in ``n`` variables of total degree <= max_degree."""
    out = []
    for degree in range(max_degree + 1):
        for bars in itertools.combinations(range(degree + n - 1), n - 1):
            prev = -1
            parts = []
            for b in bars:
                parts.append(b - prev - 1)
                prev = b
            parts.append(degree + n - 2 - prev)
            out.append(tuple(parts))
    return out


def fractions(max_num: int = 9, max_den: int = 4):
    return st.fractions(
        min_value=Fraction(-max_num), max_value=Fraction(max_num), max_denominator=max_den
    )


def power_products(n: int, max_degree: int = 4):
    return st.sampled_from(all_power_products(n, max_degree))


def polynomials(ring: Ring, max_degree: int = 4, max_terms: int = 6, coeffs=None):
    coeffs = coeffs or fractions()
    return st.dictionaries(
        power_products(ring.arity, max_degree), coeffs, max_size=max_terms
    ).map(lambda d: Polynomial.from_terms(ring, d))


def nonzero_polynomials(ring: Ring, max_degree: int = 4, max_terms: int = 6, coeffs=None):
    return polynomials(ring, max_degree, max_terms, coeffs).filter(bool)


# -- independent oracles ---------------------------------------------


def dimension_by_subset_search(n: int, generators: Sequence[PowerProduct]) -> int:
    """Largest variable subset containing no generator's support, by
    brute-force enumeration of all 2^n subsets; -1 when 1 is a generator."""
    supports = [frozenset(i for i, e in enumerate(t) if e) for t in generators]
    if any(not s for s in supports):
        return -1
    best = -1
    for size in range(n, -1, -1):
        for subset in itertools.combinations(range(n), size):
            chosen = frozenset(subset)
            if all(not s <= chosen for s in supports):
                return size
    return best


def solve_exact(rows: List[List[Fraction]], rhs: List[Fraction]) -> Optional[List[Fraction]]:
    """One solution of A x = b over Q by Gaussian elimination, or None."""
    m = len(rows)
    n = len(rows[0]) if m else 0
    a = [list(r) + [b] for r, b in zip(rows, rhs)]
    pivots = []
    row = 0
    for col in range(n):
        sel = next((r for r in range(row, m) if a[r][col]), None)
        if sel is None:
            continue
        a[row], a[sel] = a[sel], a[row]
        inv = 1 / a[row][col]
        a[row] = [v * inv for v in a[row]]
        for r in range(m):
            if r != row and a[r][col]:
                factor = a[r][col]
                a[r] = [v - factor * w for v, w in zip(a[r], a[row])]
        pivots.append(col)
        row += 1
        if row == m:
            break
    for r in range(row, m):
        if a[r][n]:
            return None
    x = [Fraction(0)] * n
    for r, col in enumerate(pivots):
        x[col] = a[r][n]
    return x


def member_with_bound(generators: Sequence[Polynomial], f: Polynomial, degree_bound: int) -> bool:
    """Does f equal some combination sum h_i g_i with deg h_i <= bound?

    Solves for the cofactor coefficients as an exact linear system; a
    True answer is a certificate, False only rules out the given bound.
    """
    ring = f.ring
    cols: List[Tuple[int, PowerProduct]] = []
    pps = all_power_products(ring.arity, degree_bound)
    for gi in range(len(generators)):
        for t in pps:
            cols.append((gi, t))
    row_index = {}
    columns = []
    for gi, t in cols:
        col = {}
        for s, c in generators[gi].terms.items():
            u = pp_mul(s, t)
            col[u] = col.get(u, Fraction(0)) + c
            if u not in row_index:
                row_index[u] = len(row_index)
        columns.append(col)
    for u in f.terms:
        if u not in row_index:
            row_index[u] = len(row_index)
    nrows = len(row_index)
    rows = [[Fraction(0)] * len(columns) for _ in range(nrows)]
    for ci, col in enumerate(columns):
        for u, c in col.items():
            rows[row_index[u]][ci] = c
    rhs = [Fraction(0)] * nrows
    for u, c in f.terms.items():
        rhs[row_index[u]] = c
    return solve_exact(rows, rhs) is not None
