"""Non-symmetric operads in the partial-composition presentation.

An operad is a sequence of spaces ``O(n)`` with a unit ``u: 1 → O(1)`` and
maps ``∘ᵢ: O(m)⊗O(n) → O(m+n−1)``.  Everything is only asserted up to a
declared ``max_arity``.  Compositions may be given eagerly as a dict or lazily
through a function; they are cached either way.

Tensor factors attached to a tree are always ordered by path order of the
inner vertices, and every reordering is an explicit permutation.
"""

from __future__ import annotations

import itertools
from collections.abc import Callable, Iterable
from collections.abc import Sequence as Seq
from dataclasses import dataclass, field

import numpy as np

from . import trees as tr
from .exactcat import (
    ONE,
    UNIT,
    ZERO_SPACE,
    FinSetMap,
    FinSetObj,
    LinMap,
    Space,
    compose,
    compose_all,
    linearize,
    linearize_obj,
    permute_factors,
    scalar,
    tensor_map,
    tensor_maps,
    tensor_objs,
)
from .linalg import axpy
from .report import Report
from .trees import Tree, TruncationRequired


@dataclass(frozen=True, eq=False)
class Sequence:
    """Arity-indexed spaces; missing arities are the zero space."""

    support: dict = field(default_factory=dict)

    def __getitem__(self, n: int) -> Space:
        return self.support.get(n, ZERO_SPACE)

    def arities(self) -> list[int]:
        return sorted(n for n, s in self.support.items() if s.dim > 0)

    def dims(self, upto: int) -> list[int]:
        return [self[n].dim for n in range(upto + 1)]


@dataclass(frozen=True, eq=False)
class SeqMap:
    """A morphism of sequences, one linear map per arity."""

    source: Sequence
    target: Sequence
    components: dict = field(default_factory=dict)

    def __getitem__(self, n: int) -> LinMap:
        c = self.components.get(n)
        if c is None:
            return LinMap.zero(self.source[n], self.target[n])
        return c


def seq_compose(g: SeqMap, f: SeqMap) -> SeqMap:
    ar = set(f.components) | set(g.components)
    return SeqMap(f.source, g.target, {n: compose(g[n], f[n]) for n in ar})


class Operad:
    """An operad valid up to ``max_arity``.

    ``circ_fn(m, i, n)`` returns ``∘ᵢ: O(m)⊗O(n) → O(m+n−1)``; arities with a
    zero space give zero maps automatically.  ``weights`` optionally assigns a
    weight to each basis vector, and ``weight_bound`` records that everything
    of larger weight has been quotiented away.
    """

    def __init__(self, seq: Sequence, unit: LinMap, circ: dict | Callable, max_arity: int,
                 weights: dict | None = None, weight_bound: int | None = None,
                 name: str = "", meta: dict | None = None):
        self.seq = seq
        self.unit = unit
        self.max_arity = max_arity
        self.weights = weights
        self.weight_bound = weight_bound
        self.name = name
        self.meta = meta or {}
        if callable(circ):
            self._fn = circ
            self._cache: dict = {}
        else:
            self._fn = None
            self._cache = dict(circ)

    def __getitem__(self, n: int) -> Space:
        return self.seq[n]

    def circ_i(self, m: int, i: int, n: int) -> LinMap:
        key = (m, i, n)
        c = self._cache.get(key)
        if c is not None:
            return c
        if not 1 <= i <= m:
            raise IndexError(f"∘{i} is undefined on arity {m}")
        if max(m, n, m + n - 1) > self.max_arity:
            raise ValueError(f"arity overflow: {key} exceeds max_arity {self.max_arity}")
        src = tensor_objs([self.seq[m], self.seq[n]])
        tgt = self.seq[m + n - 1]
        if src.dim == 0 or tgt.dim == 0 or self._fn is None:
            c = LinMap.zero(src, tgt)
        else:
            c = self._fn(m, i, n)
        self._cache[key] = c
        return c

    @property
    def circ(self) -> dict:
        """All compositions within ``max_arity`` (materialised)."""
        out = {}
        for m, i, n in circ_keys(self.max_arity):
            out[(m, i, n)] = self.circ_i(m, i, n)
        return out

    def weight_of(self, n: int, k: int) -> int:
        if self.weights is None:
            return 0
        return self.weights[n][k]

    def dims(self, upto: int | None = None) -> list[int]:
        return self.seq.dims(self.max_arity if upto is None else upto)

    def __repr__(self) -> str:
        return f"Operad({self.name or '?'}, dims={self.dims()})"


def circ_keys(max_arity: int):
    for m in range(1, max_arity + 1):
        for n in range(0, max_arity + 1):
            if m + n - 1 <= max_arity:
                for i in range(1, m + 1):
                    yield (m, i, n)


@dataclass(frozen=True, eq=False)
class OperadMap:
    source: Operad
    target: Operad
    components: dict

    def __getitem__(self, n: int) -> LinMap:
        c = self.components.get(n)
        if c is None:
            return LinMap.zero(self.source[n], self.target[n])
        return c

    def as_seqmap(self) -> SeqMap:
        return SeqMap(self.source.seq, self.target.seq, dict(self.components))


# ---------------------------------------------------------------------------
# Checking the axioms


def _apply2(c: LinMap, dim_b: int, v: dict, w: dict) -> dict:
    out: dict = {}
    cols = c.cols
    for a, x in v.items():
        base = a * dim_b
        for b, y in w.items():
            axpy(out, x * y, cols[base + b])
    return out


def _basis(n: int):
    return [{k: ONE} for k in range(n)]


def _monomial(c: LinMap):
    """Row/coefficient arrays when every column has at most one entry.

    Rows are -1 for zero columns; coefficients are ``None`` when all are one.
    Most operads met in practice (free, Ass, End) have such compositions,
    which lets the axiom checks run on whole index grids at once.
    """
    rows = np.full(len(c.cols), -1, dtype=np.int64)
    coefs = np.empty(len(c.cols), dtype=object)
    all_one = True
    for j, col in enumerate(c.cols):
        if len(col) > 1:
            return None
        for r, v in col.items():
            rows[j] = r
            coefs[j] = v
            if v != ONE:
                all_one = False
    if all_one:
        return rows, None
    coefs[rows < 0] = ONE
    return rows, coefs


def _mono_step(mat, idx):
    rows, coefs = mat
    safe = np.where(idx >= 0, idx, 0)
    r = np.where(idx >= 0, rows[safe], -1)
    return r, (None if coefs is None else coefs[safe])


def _mul(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return a * b


def _mono_compare(r1, k1, r2, k2, shape):
    bad = r1 != r2
    both = (r1 >= 0) & (r2 >= 0) & ~bad
    if k1 is not None or k2 is not None:
        one = np.full(r1.shape, ONE, dtype=object)
        c1 = one if k1 is None else k1
        c2 = one if k2 is None else k2
        sel = np.nonzero(both)
        diff = np.zeros(r1.shape, dtype=bool)
        diff[sel] = np.array([x != y for x, y in zip(c1[sel], c2[sel])], dtype=bool)
        bad = bad | diff
    for flat in np.flatnonzero(bad):
        yield tuple(int(v) for v in np.unravel_index(flat, shape))


def _mono_rel1(ms, dl, dm, dn):
    ci, cj, cj2, ci2 = ms
    a, b, c = np.meshgrid(np.arange(dl), np.arange(dm), np.arange(dn), indexing="ij")
    r, k = _mono_step(ci, a * dm + b)
    r, k2 = _mono_step(cj, np.where(r >= 0, r * dn + c, -1))
    lhs_r, lhs_k = r, _mul(k, k2)
    r, k = _mono_step(cj2, a * dn + c)
    r, k2 = _mono_step(ci2, np.where(r >= 0, r * dm + b, -1))
    return _mono_compare(lhs_r, lhs_k, r, _mul(k, k2), (dl, dm, dn))


def _mono_rel2(ms, dl, dm, dn, dmn):
    ci, cj, cin, cout = ms
    a, b, c = np.meshgrid(np.arange(dl), np.arange(dm), np.arange(dn), indexing="ij")
    r, k = _mono_step(ci, a * dm + b)
    r, k2 = _mono_step(cj, np.where(r >= 0, r * dn + c, -1))
    lhs_r, lhs_k = r, _mul(k, k2)
    r, k = _mono_step(cin, b * dn + c)
    r, k2 = _mono_step(cout, np.where(r >= 0, a * dmn + r, -1))
    return _mono_compare(lhs_r, lhs_k, r, _mul(k, k2), (dl, dm, dn))


def check_operad(o, max_arity: int | None = None, stop_after: int | None = None) -> Report:
    """Verify unit and associativity relations on all basis triples.

    Relation numbering: (1) ``(x∘ᵢy)∘ⱼz = (x∘ⱼz)∘_{i+n−1}y`` for j < i,
    (2) ``(x∘ᵢy)∘ⱼz = x∘ᵢ(y∘_{j−i+1}z)`` for i ≤ j < m+i, (3) ``u∘₁x = x`` and
    (4) ``x∘ᵢu = x``.  Every violated instance is listed in the report.
    """
    if isinstance(o, SetOperad):
        o = o.linearize()
    N = o.max_arity if max_arity is None else max_arity
    if N > o.max_arity:
        raise ValueError("cannot check beyond the operad's max_arity")
    rep = Report()
    d = [o.seq[n].dim for n in range(N + 1)]
    u = o.unit.cols[0] if o.unit.source.dim else {}

    def bad(**info):
        rep.fail(**info)
        return stop_after is not None and len(rep.details) >= stop_after

    # units
    for n in range(N + 1):
        if d[n] == 0:
            continue
        if d[1] == 0:
            if bad(relation=3, arity=n, reason="O(1) is zero but O(n) is not"):
                return rep
            continue
        c1 = o.circ_i(1, 1, n)
        for k in range(d[n]):
            rep.checked += 1
            if _apply2(c1, d[n], u, {k: ONE}) != {k: ONE}:
                if bad(relation=3, arity=n, basis=k):
                    return rep
        for i in range(1, n + 1):
            ci = o.circ_i(n, i, 1)
            for k in range(d[n]):
                rep.checked += 1
                if _apply2(ci, d[1], {k: ONE}, u) != {k: ONE}:
                    if bad(relation=4, arity=n, i=i, basis=k):
                        return rep
    # associativity
    mono: dict = {}

    def monomial(key):
        if key not in mono:
            mono[key] = _monomial(o.circ_i(*key))
        return mono[key]

    for l, m, n in itertools.product(range(1, N + 1), range(N + 1), range(N + 1)):
        if l + m + n - 2 > N or l + m - 1 > N or l + n - 1 > N or m + n - 1 > N:
            continue
        if d[l] == 0 or d[m] == 0 or d[n] == 0:
            continue
        lm, ln, mn, tot = l + m - 1, l + n - 1, m + n - 1, l + m + n - 2
        for i in range(1, l + 1):
            ci = o.circ_i(l, i, m)
            # relation (1)
            for j in range(1, i):
                keys = [(l, i, m), (lm, j, n), (l, j, n), (ln, i + n - 1, m)]
                ms = [monomial(k) for k in keys]
                if all(x is not None for x in ms):
                    rep.checked += d[l] * d[m] * d[n]
                    for basis in _mono_rel1(ms, d[l], d[m], d[n]):
                        if bad(relation=1, arities=(l, m, n), i=i, j=j, basis=basis):
                            return rep
                    continue
                cj = o.circ_i(lm, j, n)
                cj2 = o.circ_i(l, j, n)
                ci2 = o.circ_i(ln, i + n - 1, m)
                for a, b, c in itertools.product(range(d[l]), range(d[m]), range(d[n])):
                    rep.checked += 1
                    lhs = _apply2(cj, d[n], _apply2(ci, d[m], {a: ONE}, {b: ONE}), {c: ONE})
                    rhs = _apply2(ci2, d[m], _apply2(cj2, d[n], {a: ONE}, {c: ONE}), {b: ONE})
                    if lhs != rhs:
                        if bad(relation=1, arities=(l, m, n), i=i, j=j, basis=(a, b, c)):
                            return rep
            # relation (2)
            for j in range(i, m + i):
                keys = [(l, i, m), (lm, j, n), (m, j - i + 1, n), (l, i, mn)]
                ms = [monomial(k) for k in keys]
                if all(x is not None for x in ms):
                    rep.checked += d[l] * d[m] * d[n]
                    for basis in _mono_rel2(ms, d[l], d[m], d[n], d[mn]):
                        if bad(relation=2, arities=(l, m, n), i=i, j=j, basis=basis):
                            return rep
                    continue
                cj = o.circ_i(lm, j, n)
                cin = o.circ_i(m, j - i + 1, n)
                cout = o.circ_i(l, i, mn)
                for a, b, c in itertools.product(range(d[l]), range(d[m]), range(d[n])):
                    rep.checked += 1
                    lhs = _apply2(cj, d[n], _apply2(ci, d[m], {a: ONE}, {b: ONE}), {c: ONE})
                    rhs = _apply2(cout, d[mn], {a: ONE}, _apply2(cin, d[n], {b: ONE}, {c: ONE}))
                    if lhs != rhs:
                        if bad(relation=2, arities=(l, m, n), i=i, j=j, basis=(a, b, c)):
                            return rep
    if o.weight_bound is not None and rep.status == "pass":
        rep.status = "truncated"
        rep.note(truncation=f"weight <= {o.weight_bound}")
    return rep


def check_operad_map(f: OperadMap, max_arity: int | None = None,
                     weight_bound: int | None = None) -> Report:
    """Unit and ∘ᵢ compatibility of an operad map.

    When ``weight_bound`` is given (or the source is weight-truncated) only
    pairs of basis vectors of total weight within the bound are checked, since
    the truncated source forgets heavier composites.
    """
    src, tgt = f.source, f.target
    N = min(src.max_arity, tgt.max_arity) if max_arity is None else max_arity
    wb = weight_bound if weight_bound is not None else src.weight_bound
    rep = Report()
    if compose(f[1], src.unit) != tgt.unit:
        rep.fail(square="unit")
    for m, i, n in circ_keys(N):
        ds, dt = src.seq[m].dim, src.seq[n].dim
        if ds == 0 or dt == 0:
            continue
        cs = src.circ_i(m, i, n)
        ct = tgt.circ_i(m, i, n)
        fm, fn, fr = f[m], f[n], f[m + n - 1]
        for a in range(ds):
            for b in range(dt):
                if wb is not None and src.weight_of(m, a) + src.weight_of(n, b) > wb:
                    continue
                rep.checked += 1
                lhs = fr.apply(cs.cols[a * dt + b])
                rhs = _apply2(ct, tgt.seq[n].dim, fm.cols[a], fn.cols[b])
                if lhs != rhs:
                    rep.fail(square="circ", m=m, i=i, n=n, basis=(a, b))
    if wb is not None and rep.status == "pass":
        rep.status = "truncated"
        rep.note(truncation=f"weight <= {wb}")
    return rep


# ---------------------------------------------------------------------------
# Multiplications μ


def mu_from_circ(o: Operad, n: int, ps: Seq[int]) -> LinMap:
    """``μ_{n;p₁…pₙ}: O(n)⊗O(p₁)⊗…⊗O(pₙ) → O(Σpᵢ)`` as a composite of ∘ᵢ's.

    Slots receiving arity-0 operations are filled first and then the others,
    each pass from right to left, so that no intermediate arity exceeds
    ``max(n, Σpᵢ)``.  Any order gives the same map by the associativity
    relations; this one stays inside the declared arity bound.
    """
    if len(ps) != n:
        raise ValueError("need one arity per input")
    order = [k for k in reversed(range(n)) if ps[k] == 0] + \
        [k for k in reversed(range(n)) if ps[k] != 0]
    dims = [o.seq[n].dim] + [o.seq[p].dim for p in ps]
    pm = permute_factors(dims, [0] + [k + 1 for k in order])
    cur = LinMap(pm.source, pm.target, pm.cols)
    arity = n
    done: set = set()
    for step_no, k in enumerate(order):
        pos = k + 1 - sum(1 for q in done if q < k and ps[q] == 0) + \
            sum(ps[q] - 1 for q in done if q < k and ps[q] != 0)
        p = ps[k]
        rest = [LinMap.identity(o.seq[ps[q]]) for q in order[step_no + 1:]]
        step = tensor_maps([o.circ_i(arity, pos, p)] + rest)
        cur = compose(step, LinMap(cur.source, step.source, cur.cols))
        arity += p - 1
        done.add(k)
    src = tensor_objs([o.seq[n]] + [o.seq[p] for p in ps])
    return LinMap(src, o.seq[sum(ps)], cur.cols)


def circ_from_mu(mu: Callable, unit: LinMap, seq: Sequence, m: int, i: int, n: int) -> LinMap:
    """``∘ᵢ`` recovered by inserting units into ``μ_{m;1,…,n,…,1}``."""
    parts = [LinMap.identity(seq[m])]
    for k in range(1, m + 1):
        parts.append(LinMap.identity(seq[n]) if k == i else unit)
    ins = tensor_maps(parts)
    ps = [1] * m
    ps[i - 1] = n
    return LinMap(tensor_objs([seq[m], seq[n]]), seq[m + n - 1], compose(mu(m, ps), ins).cols)


# ---------------------------------------------------------------------------
# Trees evaluated in an operad


def eval_tree(o: Operad, t: Tree) -> Space:
    """``⊗_{v ∈ I(T)} O(val v)`` in path order."""
    return tensor_objs([o.seq[a] for _, a, _ in tr.inner_vertices(t)])


def tree_factor_dims(o: Operad, t: Tree) -> list[int]:
    return [o.seq[a].dim for _, a, _ in tr.inner_vertices(t)]


def _edge_circ_map(circ: Callable, dims: list[int], pv: int, pw: int, k: int, av: int,
                   aw: int) -> LinMap:
    """Bring factor pw next to pv, apply ∘ₖ there, identity elsewhere."""
    n = len(dims)
    perm = list(range(pv + 1)) + [pw] + [q for q in range(pv + 1, n) if q != pw]
    pm = permute_factors(dims, perm)
    parts = [LinMap.identity(Space(dims[q])) for q in range(pv)]
    parts.append(circ(av, k, aw))
    parts += [LinMap.identity(Space(dims[q])) for q in perm[pv + 2:]]
    step = tensor_maps(parts)
    return compose(step, LinMap(pm.source, step.source, pm.cols))


def eval_contraction(o: Operad, t: Tree, e: tr.EdgeRef) -> LinMap:
    """``L(O)(p_e): L(O)(T) → L(O)(T/e)`` for an inner edge e."""
    if not tr.is_inner_edge(t, e):
        raise tr.NotInnerEdge(str(e))
    return _contraction_with(o.circ_i, [o.seq[a] for _, a, _ in tr.inner_vertices(t)], t, e)


def _contraction_with(circ: Callable, spaces: list[Space], t: Tree, e: tr.EdgeRef) -> LinMap:
    idx = tr.inner_index(t)
    w = e.upper
    v = w[:-1]
    pv, pw = idx[v], idx[w]
    av, aw = tr.subtree(t, v).arity, tr.subtree(t, w).arity
    dims = [s.dim for s in spaces]
    return _edge_circ_map(circ, dims, pv, pw, w[-1], av, aw)


def eval_contraction_set(o: Operad, t: Tree, edges: Iterable[tr.EdgeRef]) -> LinMap:
    """Contract the given inner edges one at a time (lowest address first)."""
    edges = sorted({e.upper for e in edges}, key=lambda a: (len(a), a))
    cur_t = t
    acc = LinMap.identity(eval_tree(o, t))
    remaining = [tr.EdgeRef(a) for a in edges]
    while remaining:
        e = remaining.pop()  # deepest first keeps other addresses valid
        step = eval_contraction(o, cur_t, e)
        acc = compose(step, acc)
        cur_t = tr.contract(cur_t, e)
    return acc


def eval_full_contraction(o: Operad, t: Tree) -> LinMap:
    """``O(p_T): L(O)(T) → O(n)`` collapsing every inner edge (U gives u)."""
    return _full(o, t)


def _full(o: Operad, t: Tree) -> LinMap:
    if t.is_leaf:
        return o.unit
    kids = t.children
    parts = [LinMap.identity(o.seq[len(kids)])] + [_full(o, c) for c in kids]
    inner = tensor_maps(parts)
    mu = mu_from_circ(o, len(kids), [tr.n_leaves(c) for c in kids])
    res = compose(mu, LinMap(inner.source, mu.source, inner.cols))
    return LinMap(eval_tree(o, t), o.seq[tr.n_leaves(t)], res.cols)


def eval_tree_on(o: Operad, t: Tree, vecs: Seq[dict]) -> dict:
    """``O(p_T)`` applied to the pure tensor of ``vecs`` (path order)."""
    return _run_plan(o.unit.cols[0], _tree_plan(o, t), vecs)


def _tree_plan(o: Operad, t: Tree) -> tuple:
    """Precompiled ∘ᵢ steps for :func:`eval_tree_on`, cached on the operad.

    A plan is ``None`` for the bare edge, else ``(kid_plans, steps)`` with
    steps ``(kid, circ, dim_b)``: zero-arity slots first, then the rest, each
    right to left so intermediate arities stay within the bound.
    """
    cache = o.__dict__.setdefault("_plans", {})
    plan = cache.get(t)
    if plan is not None or t in cache:
        return plan
    if t.is_leaf:
        plan = None
    else:
        kids = tuple(_tree_plan(o, c) for c in t.children)
        ps = [tr.n_leaves(c) for c in t.children]
        n = len(ps)
        zeros = [k for k in reversed(range(n)) if ps[k] == 0]
        rest = [k for k in reversed(range(n)) if ps[k] != 0 and not t.children[k].is_leaf]
        steps, arity = [], n
        for k in zeros:
            steps.append((k, o.circ_i(arity, k + 1, 0), o.seq[0].dim))
            arity -= 1
        for k in rest:
            pos = k + 1 - sum(1 for q in zeros if q < k)
            steps.append((k, o.circ_i(arity, pos, ps[k]), o.seq[ps[k]].dim))
            arity += ps[k] - 1
        plan = (kids, tuple(steps))
    cache[t] = plan
    return plan


def _run_plan(unit: dict, plan, vecs: Seq[dict]) -> dict:
    pos = 0

    def go(pl) -> dict:
        nonlocal pos
        if pl is None:
            return unit
        cur = vecs[pos]
        pos += 1
        vals = [go(k) for k in pl[0]]
        for k, c, db in pl[1]:
            if not cur:
                return {}
            cur = _apply2(c, db, cur, vals[k])
        return cur

    return go(plan)


# ---------------------------------------------------------------------------
# Standard operads


def ass_operad(base: str = "vect", max_arity: int = 6):
    """The operad with a 1-dimensional space in every arity and trivial compositions."""
    if base == "finset":
        return SetOperad.ass(max_arity)
    seq = Sequence({n: UNIT for n in range(max_arity + 1)})
    ident = LinMap.identity(UNIT)
    return Operad(seq, ident, lambda m, i, n: ident, max_arity, name="Ass")


def unit_operad(max_arity: int = 6) -> Operad:
    """``1_∘``: the unit object in arity 1 and zero elsewhere."""
    seq = Sequence({1: UNIT})
    ident = LinMap.identity(UNIT)
    return Operad(seq, ident, {(1, 1, 1): ident}, max_arity, name="1")


def rescaled_ass(scalars: dict, max_arity: int) -> Operad:
    """Ass with basis ``x_n`` rescaled by nonzero ``s_n``.

    ``x_m ∘ᵢ x_n = (s_m s_n / s_{m+n−1}) x_{m+n−1}`` and ``u = x₁/s₁``.  Arities
    missing from ``scalars`` are zero, which is allowed only when the result is
    still closed (the caller's responsibility; check_operad will tell).
    """
    s = {n: scalar(v) for n, v in scalars.items() if n <= max_arity}
    seq = Sequence({n: UNIT for n in s})

    def circ(m, i, n):
        r = m + n - 1
        return LinMap.from_rows([[s[m] * s[n] / s[r]]])

    unit = LinMap.from_rows([[1 / s[1]]]) if 1 in s else LinMap.zero(UNIT, ZERO_SPACE)
    return Operad(seq, unit, circ, max_arity, name="rescaled-Ass")


# ---------------------------------------------------------------------------
# Operads in finite sets


@dataclass(frozen=True, eq=False)
class SetOperad:
    """An operad in finite sets; checked and compared through linearization."""

    seq: dict
    unit: FinSetMap
    circ: dict
    max_arity: int
    name: str = ""

    @staticmethod
    def ass(max_arity: int) -> "SetOperad":
        pt = FinSetObj(("*",))
        pp = FinSetObj(("(*,*)",))
        seq = {n: pt for n in range(max_arity + 1)}
        circ = {k: FinSetMap(pp, pt, ("*",)) for k in circ_keys(max_arity)}
        return SetOperad(seq, FinSetMap(pt, pt, ("*",)), circ, max_arity, "Ass")

    def linearize(self) -> Operad:
        seq = Sequence({n: linearize_obj(s) for n, s in self.seq.items()})
        circ = {k: _relabel(linearize(c), seq, k) for k, c in self.circ.items()}
        return Operad(seq, linearize(self.unit), circ, self.max_arity, name=self.name)


def _relabel(f: LinMap, seq: Sequence, key) -> LinMap:
    m, _, n = key
    return LinMap(tensor_objs([seq[m], seq[n]]), seq[m + n - 1], f.cols)


# ---------------------------------------------------------------------------
# Free operads


@dataclass(frozen=True, eq=False)
class Summand:
    tree: Tree
    offset: int
    dims: tuple  # factor dims in path order
    dim: int


class FreeOperad(Operad):
    """``F(V)(n) = ⊕_T ⊗_{v ∈ I(T)} V(val v)`` with weight = number of inner vertices."""

    def __init__(self, gens: Sequence, n_max: int, w_max: int | None):
        support = set(gens.arities())
        if w_max is None and (0 in support or 1 in support):
            raise TruncationRequired("generators in arity 0 or 1 need a weight bound")
        self.gens = gens
        self.w_max = w_max
        self.summands: dict[int, list[Summand]] = {}
        self.tree_pos: dict[Tree, tuple[int, int]] = {}
        spaces, weights = {}, {}
        for n in range(n_max + 1):
            lim = w_max if w_max is not None else max(n - 1, 0)
            if w_max is not None and not (0 in support or 1 in support):
                lim = min(w_max, max(n - 1, 0))
            ts = tr.enumerate_trees(n, support, lim) if support or n == 1 else (
                [tr.LEAF] if n == 1 else [])
            lst, off, ws = [], 0, []
            for t in ts:
                dims = tuple(gens[a].dim for _, a, _ in tr.inner_vertices(t))
                dim = 1
                for x in dims:
                    dim *= x
                if dim == 0:
                    continue
                self.tree_pos[t] = (n, len(lst))
                lst.append(Summand(t, off, dims, dim))
                ws += [tr.n_inner(t)] * dim
                off += dim
            self.summands[n] = lst
            if off:
                spaces[n] = Space(off)
                weights[n] = tuple(ws)
        seq = Sequence(spaces)
        unit = LinMap(UNIT, seq[1], ({self.summand(tr.LEAF).offset: ONE},))
        super().__init__(seq, unit, self._circ, n_max, weights=weights,
                         weight_bound=w_max, name="F")

    def summand(self, t: Tree) -> Summand:
        n, k = self.tree_pos[t]
        return self.summands[n][k]

    def has_tree(self, t: Tree) -> bool:
        return t in self.tree_pos

    def _circ(self, m: int, i: int, n: int) -> LinMap:
        src_dim_b = self.seq[n].dim
        tgt = self.seq[m + n - 1]
        cols: list[dict] = [{} for _ in range(self.seq[m].dim * src_dim_b)]
        for sa in self.summands[m]:
            pre = _inner_before_leaf(sa.tree, i)
            for sb in self.summands[n]:
                t = tr.circ_i_tree(sa.tree, i, sb.tree)
                if t not in self.tree_pos:
                    continue  # weight beyond the bound: quotiented away
                sc = self.summand(t)
                dims = list(sa.dims) + list(sb.dims)
                na = len(sa.dims)
                perm = list(range(pre)) + [na + q for q in range(len(sb.dims))] + \
                    list(range(pre, na))
                pm = permute_factors(dims, perm)
                for a in range(sa.dim):
                    for b in range(sb.dim):
                        (k, _), = pm.cols[a * sb.dim + b].items()
                        cols[(sa.offset + a) * src_dim_b + sb.offset + b] = {sc.offset + k: ONE}
        return LinMap(tensor_objs([self.seq[m], self.seq[n]]), tgt, tuple(cols))

    def inclusion(self, t: Tree) -> LinMap:
        """``⊗ V(val v) → F(V)(n)`` onto the summand of ``t``."""
        s = self.summand(t)
        n = tr.n_leaves(t)
        return LinMap(Space(s.dim), self.seq[n], tuple({s.offset + k: ONE} for k in range(s.dim)))


def _inner_before_leaf(t: Tree, i: int) -> int:
    """Number of inner vertices preceding the i-th leaf in path order."""
    cnt, seen = 0, 0
    for _, leaf in tr.vertices(t):
        if leaf:
            seen += 1
            if seen == i:
                return cnt
        else:
            cnt += 1
    raise IndexError(i)


def free_operad(v: Sequence, n_max: int, w_max: int | None = None) -> FreeOperad:
    return FreeOperad(v, n_max, w_max)


def free_unit(f: FreeOperad) -> SeqMap:
    """``V → F(V)``: inclusion of the corolla summands."""
    comps = {}
    for n in f.gens.arities():
        if n > f.max_arity:
            continue
        c = tr.corolla(n)
        if f.has_tree(c):
            comps[n] = LinMap(f.gens[n], f.seq[n], f.inclusion(c).cols)
    return SeqMap(f.gens, f.seq, comps)


def free_extension(f: FreeOperad, o: Operad, phi: SeqMap) -> OperadMap:
    """The operad map ``F(V) → O`` extending ``phi: V → O``.

    On the summand of ``T`` it is ``O(p_T) ∘ ⊗ phi(val v)``, evaluated one
    decoration at a time rather than as a matrix on all of ``L(O)(T)``.
    """
    comps = {}
    for n in range(f.max_arity + 1):
        cols: list = []
        for s in f.summands[n]:
            arities = [a for _, a, _ in tr.inner_vertices(s.tree)]
            plan = _tree_plan(o, s.tree)
            unit = o.unit.cols[0]
            for ks in itertools.product(*(range(d) for d in s.dims)):
                vecs = [phi[a].cols[k] for a, k in zip(arities, ks)]
                cols.append(_run_plan(unit, plan, vecs))
        comps[n] = LinMap(f.seq[n], o.seq[n], tuple(cols))
    return OperadMap(f, o, comps)


def free_counit(o: Operad, n_max: int, w_max: int | None) -> OperadMap:
    """``F(O) → O``: each tree summand goes through the full contraction."""
    f = free_operad(o.seq, n_max, w_max)
    ident = SeqMap(o.seq, o.seq, {n: LinMap.identity(o.seq[n]) for n in o.seq.arities()})
    return free_extension(f, o, ident)


def free_map(phi: SeqMap, fs: FreeOperad, ft: FreeOperad) -> OperadMap:
    """``F(phi): F(V) → F(W)`` on each tree summand, ``⊗ phi(val v)``."""
    comps = {}
    for n in range(min(fs.max_arity, ft.max_arity) + 1):
        cols: list = []
        for s in fs.summands[n]:
            parts = [phi[a] for _, a, _ in tr.inner_vertices(s.tree)]
            dec = tensor_maps(parts) if parts else LinMap.identity(UNIT)
            if ft.has_tree(s.tree):
                inc = ft.inclusion(s.tree)
                m = compose(inc, LinMap(dec.source, inc.source, dec.cols))
                cols.extend(m.cols)
            else:
                cols.extend({} for _ in range(s.dim))
        comps[n] = LinMap(fs.seq[n], ft.seq[n], tuple(cols))
    return OperadMap(fs, ft, comps)


def identity_map(o: Operad) -> OperadMap:
    return OperadMap(o, o, {n: LinMap.identity(o.seq[n]) for n in range(o.max_arity + 1)})


def compose_operad_maps(g: OperadMap, f: OperadMap) -> OperadMap:
    ar = range(min(f.source.max_arity, g.target.max_arity) + 1)
    return OperadMap(f.source, g.target, {n: compose(g[n], f[n]) for n in ar})


def operad_maps_equal(f: OperadMap, g: OperadMap, upto: int) -> bool:
    return all(f[n] == g[n] for n in range(upto + 1))


def adjunction_report(o: Operad, n_max: int, w_max: int | None) -> Report:
    """Both triangle identities of ``F ⊣ forget`` and the counit's morphism check.

    With ``V`` the underlying sequence of ``o`` this verifies ``ε_O ∘ η_O = id``,
    ``ε_{F V} ∘ F(η_V) = id`` on ``F(V)`` and that ``ε_O`` is an operad map,
    all within the bounds ``(n_max, w_max)``.
    """
    rep = Report()
    eps = free_counit(o, n_max, w_max)
    fo = eps.source
    eta = free_unit(fo)
    for n in range(n_max + 1):
        rep.checked += 1
        if o.seq[n].dim and compose(eps[n], eta[n]) != LinMap.identity(o.seq[n]):
            rep.fail(identity="counit . unit = id", arity=n)
    ffo = free_operad(fo.seq, n_max, w_max)
    f_eta = free_map(free_unit(fo), fo, ffo)
    eps_f = free_extension(ffo, fo, SeqMap(fo.seq, fo.seq, {
        n: LinMap.identity(fo.seq[n]) for n in fo.seq.arities()}))
    for n in range(n_max + 1):
        rep.checked += 1
        if compose(eps_f[n], f_eta[n]) != LinMap.identity(fo.seq[n]):
            rep.fail(identity="counit . F(unit) = id", arity=n)
    rep.merge(check_operad_map(eps))
    rep.tables["dims F(O)"] = {n: fo.seq[n].dim for n in range(n_max + 1)}
    return rep
