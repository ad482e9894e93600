"""Sparse exact linear algebra over the rationals.

Vectors are ``dict[int, mpq]`` holding only nonzero entries.  Everything here
is a pure function of its inputs; callers never see mutated arguments.
"""

from __future__ import annotations

import heapq
from typing import Iterable, Sequence

import gmpy2

Q = gmpy2.mpq
Vec = dict


def axpy(y: dict, a, x: dict) -> None:
    """In place ``y += a * x``, dropping cancelled entries."""
    for k, v in x.items():
        w = y.get(k)
        if w is None:
            y[k] = a * v
        else:
            w = w + a * v
            if w:
                y[k] = w
            else:
                del y[k]


def _reduce(v: dict, piv: dict) -> dict:
    """Eliminate every pivot column of ``piv`` from ``v``.

    ``piv`` maps pivot column -> row whose smallest key is that column and
    whose entry there is 1.
    """
    heap = [k for k in v if k in piv]
    heapq.heapify(heap)
    while heap:
        k = heapq.heappop(heap)
        c = v.get(k)
        if not c:
            continue
        row = piv[k]
        for kk, rv in row.items():
            w = v.get(kk)
            if w is None:
                v[kk] = -c * rv
                if kk in piv:
                    heapq.heappush(heap, kk)
            else:
                w = w - c * rv
                if w:
                    v[kk] = w
                else:
                    del v[kk]
    return v


class Echelon:
    """Incremental row echelon form with leftmost pivots."""

    def __init__(self):
        self.piv: dict[int, dict] = {}

    @property
    def rank(self) -> int:
        return len(self.piv)

    def add(self, v: dict) -> bool:
        """Insert ``v``; return True when it raised the rank."""
        v = _reduce(dict(v), self.piv)
        if not v:
            return False
        p = min(v)
        inv = Q(1) / v[p]
        self.piv[p] = {k: x * inv for k, x in v.items()}
        return True

    def reduce(self, v: dict) -> dict:
        return _reduce(dict(v), self.piv)

    def contains(self, v: dict) -> bool:
        return not self.reduce(v)

    def rref(self) -> dict[int, dict]:
        """Fully reduced rows keyed by pivot column (canonical for the span)."""
        out: dict[int, dict] = {}
        for p in sorted(self.piv, reverse=True):
            row = dict(self.piv[p])
            c = row.pop(p)
            row = _reduce(row, out)
            row[p] = c
            out[p] = row
        return out


def rank(vectors: Iterable[dict]) -> int:
    e = Echelon()
    for v in vectors:
        e.add(v)
    return e.rank


def independent_subset(vectors: Sequence[dict]) -> list[int]:
    """Indices of a greedy maximal independent subfamily, in input order."""
    e = Echelon()
    return [i for i, v in enumerate(vectors) if e.add(v)]


def transpose(cols: Sequence[dict], nrows: int) -> list[dict]:
    rows: list[dict] = [{} for _ in range(nrows)]
    for j, col in enumerate(cols):
        for i, x in col.items():
            rows[i][j] = x
    return rows


def solve_columns(a_cols: Sequence[dict], m: int, b_cols: Sequence[dict]):
    """Return ``x_cols`` with ``A x = B`` (free variables set to zero).

    ``A`` is m x n given by columns, ``B`` is m x k.  Returns None when the
    system is inconsistent.
    """
    n = len(a_cols)
    rows = transpose(a_cols, m)
    for j, col in enumerate(b_cols):
        for i, x in col.items():
            rows[i][n + j] = x
    e = Echelon()
    for r in rows:
        e.add(r)
    red = e.rref()
    if any(p >= n for p in red):
        return None
    x_cols: list[dict] = [{} for _ in b_cols]
    for p, row in red.items():
        for k, v in row.items():
            if k >= n:
                x_cols[k - n][p] = v
    return x_cols


class Quotient:
    """The quotient ``W / span(relations)`` with canonical coordinates.

    The surviving basis is the set of non-pivot coordinates of the reduced row
    echelon form of the relations, in increasing order.
    """

    def __init__(self, dim: int, relations: Iterable[dict]):
        e = Echelon()
        for r in relations:
            e.add(r)
        self.dim_ambient = dim
        self.rows = e.rref()
        self.kept = [j for j in range(dim) if j not in self.rows]
        self.index = {j: i for i, j in enumerate(self.kept)}

    @property
    def dim(self) -> int:
        return len(self.kept)

    def project(self, v: dict) -> dict:
        out: dict = {}
        idx = self.index
        for k, x in v.items():
            i = idx.get(k)
            if i is not None:
                out[i] = out.get(i, 0) + x
            else:
                for kk, rv in self.rows[k].items():
                    if kk != k:
                        ii = idx[kk]
                        out[ii] = out.get(ii, 0) - x * rv
        return {k: x for k, x in out.items() if x}

    def projection_columns(self) -> list[dict]:
        return [self.project({j: Q(1)}) for j in range(self.dim_ambient)]

    def section_columns(self) -> list[dict]:
        return [{j: Q(1)} for j in self.kept]
