"""Independent reference computations.

Nothing here imports the package: matrices are nested lists of Fractions and
counts come from textbook recursions, so agreement with the library is
evidence rather than a tautology.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb


def matmul(a, b, p=None):
    """Naive triple loop; ``p`` gives the column count when ``b`` has no rows."""
    n, m = len(a), len(b)
    p = (len(b[0]) if b else 0) if p is None else p
    out = [[Fraction(0)] * p for _ in range(n)]
    for i in range(n):
        for j in range(p):
            s = Fraction(0)
            for k in range(m):
                s += Fraction(a[i][k]) * Fraction(b[k][j])
            out[i][j] = s
    return out


def kron(a, b):
    rb, cb = len(b), len(b[0]) if b else 0
    ra, ca = len(a), len(a[0]) if a else 0
    out = [[Fraction(0)] * (ca * cb) for _ in range(ra * rb)]
    for i in range(ra):
        for j in range(ca):
            for k in range(rb):
                for l in range(cb):
                    out[i * rb + k][j * cb + l] = Fraction(a[i][j]) * Fraction(b[k][l])
    return out


def rank(rows) -> int:
    m = [[Fraction(x) for x in r] for r in rows]
    r = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c] / m[r][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        r += 1
    return r


def catalan(n: int) -> int:
    """Catalan numbers by the convolution recursion (not the closed form)."""
    c = [1]
    for k in range(1, n + 1):
        c.append(sum(c[i] * c[k - 1 - i] for i in range(k)))
    return c[n]


@lru_cache(maxsize=None)
def tree_count(leaves: int, inner: int, arities: frozenset) -> int:
    """Planted planar trees with the given leaf and inner-vertex counts.

    A tree is a leaf or an inner vertex of arity a ∈ ``arities`` over an
    ordered a-tuple of trees; leaves and inner vertices add up over children.
    """
    if inner == 0:
        return 1 if leaves == 1 else 0
    total = 0
    for a in arities:
        total += _forest_count(a, leaves, inner - 1, arities)
    return total


@lru_cache(maxsize=None)
def _forest_count(k: int, leaves: int, inner: int, arities: frozenset) -> int:
    if k == 0:
        return 1 if leaves == 0 and inner == 0 else 0
    total = 0
    for l in range(leaves + 1):
        for i in range(inner + 1):
            first = tree_count(l, i, arities)
            if first:
                total += first * _forest_count(k - 1, leaves - l, inner - i, arities)
    return total


def path_counts(objects, edges, max_len: int) -> dict:
    """Number of paths of length ≤ max_len from x to y, by adjacency powers."""
    idx = {o: k for k, o in enumerate(objects)}
    n = len(objects)
    adj = [[0] * n for _ in range(n)]
    for (x, y), mult in edges.items():
        adj[idx[x]][idx[y]] += mult
    power = [[int(i == j) for j in range(n)] for i in range(n)]
    total = [row[:] for row in power]
    for _ in range(max_len):
        power = [[sum(power[i][k] * adj[k][j] for k in range(n)) for j in range(n)]
                 for i in range(n)]
        total = [[total[i][j] + power[i][j] for j in range(n)] for i in range(n)]
    return {(x, y): total[idx[x]][idx[y]] for x in objects for y in objects}


def binom(n: int, k: int) -> int:
    return comb(n, k)


def dense(f) -> list:
    """A library LinMap as a list of Fraction rows."""
    return [[Fraction(int(x.numerator), int(x.denominator)) for x in row] for row in f.entries()]
