"""Push-outs of operads along free maps, built by attaching tree cells.

Given sequence maps ``f: U → V`` and ``ḡ: U → O`` the push-out ``P`` of
``F(V) ← F(U) → O`` is the colimit of a filtration ``O = P₀ → P₁ → …``.  The
map ``P_{t−1}(n) → P_t(n)`` attaches one cell per planted tree ``T`` with
``n`` leaves at even levels and ``t`` even inner vertices.  Even vertices are
decorated by ``V`` (the cell target) or by the punctured-cube colimit of the
``f``'s (the cell source), odd vertices by ``O``.

Conventions used throughout this module:

* tensor factors of a cell are ordered as the even inner vertices in path
  order followed by the odd inner vertices in path order;
* contracting a connected set of vertices puts the merged vertex at the path
  position of its lowest member and keeps the relative order of the rest.

Every reordering is an explicit permutation computed from these two rules.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from . import trees as tr
from .exactcat import (
    ONE,
    UNIT,
    IncompatibleLegs,
    LinMap,
    PPSource,
    Space,
    compose,
    copair,
    pp_source,
    permute_factors,
    quotient_colimit,
    tensor_maps,
    tensor_objs,
)
from .linalg import axpy, independent_subset, solve_columns
from .operad import (
    Operad,
    OperadMap,
    SeqMap,
    Sequence,
    _apply2,
    check_operad_map,
    eval_full_contraction,
)
from .report import Report
from .trees import Tree, TruncationRequired


class NonCompatibleCube(RuntimeError):
    """The family ψ_{t,u} does not descend to the cube colimit (a bug)."""


class IncompatibleCocone(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class PushoutProblem:
    f: SeqMap       # U → V
    gbar: SeqMap    # U → O
    o: Operad

    @property
    def u(self) -> Sequence:
        return self.f.source

    @property
    def v(self) -> Sequence:
        return self.f.target


@dataclass(eq=False)
class Cell:
    tree: Tree
    arity: int
    stage: int
    evens: list
    odds: list
    dims: list                     # factor dims: V at evens, then O at odds
    tgt: Space
    src: Space                     # s(⊙ f) ⊗ X
    x_dim: int                     # dim of ⊗ O(odd)
    cube: PPSource | None = field(default=None, repr=False)
    psi: LinMap | None = field(default=None, repr=False)       # src → P_{t−1}
    psi_bar: LinMap | None = field(default=None, repr=False)   # tgt → P_t
    to_final: LinMap | None = field(default=None, repr=False)  # tgt → P


@dataclass(eq=False)
class Stage:
    t: int
    dim: int
    phi: LinMap | None            # P_{t−1} → P_t (None for t = 0)
    cells: list
    colim: object = field(default=None, repr=False)


@dataclass(eq=False)
class PushoutState:
    """Per arity: the stages ``P₀ → P₁ → …`` with their cells."""

    stages: dict = field(default_factory=dict)       # n → list[Stage]
    cells: dict = field(default_factory=dict)        # (n, tree) → Cell
    to_final: dict = field(default_factory=dict)     # n → list of P_t → P maps
    dropped: list = field(default_factory=list)      # inadmissible trees

    def dim_table(self) -> dict:
        return {n: [s.dim for s in st] for n, st in sorted(self.stages.items())}


@dataclass(eq=False)
class PushoutResult:
    problem: PushoutProblem
    p: Operad
    f_prime: OperadMap
    gbar_prime: SeqMap
    state: PushoutState
    exact: bool
    n_max: int
    t_max: int | None
    certificates: dict
    truncated: bool
    gens: dict = field(default_factory=dict, repr=False)

    def dims(self) -> list[int]:
        return self.p.dims()


# ---------------------------------------------------------------------------
# Helpers


def max_merge_arity(t: Tree) -> int:
    """Largest arity of a vertex obtained by contracting a connected subtree."""
    best_all = 0

    def best(s: Tree) -> int:
        nonlocal best_all
        tot = 0
        for c in s.children:
            tot += 1 if c.is_leaf else max(1, best(c))
        best_all = max(best_all, tot)
        return tot

    if not t.is_leaf:
        best(t)
    return best_all


def _merge_into(src_addrs: list, src_dims: list, vmap: dict, quotient: Tree,
                merged_src: list, merge_map: LinMap) -> LinMap:
    """Reorder source factors into the cell order of ``quotient`` and merge.

    ``src_addrs[k]`` is the address (in the uncontracted tree) of source factor
    k, ``vmap`` sends those addresses to vertices of ``quotient``.  The factors
    listed in ``merged_src`` (in that order) are fed to ``merge_map``, whose
    output becomes the factor of the merged vertex.
    """
    evens, odds = tr.parity_split(quotient)
    merged_addr = vmap[src_addrs[merged_src[0]]]
    merged_set = set(merged_src)
    where = {}
    for k, a in enumerate(src_addrs):
        if k not in merged_set:
            where[vmap[a]] = k
    perm, parts = [], []
    for a in evens + odds:
        if a == merged_addr:
            perm.extend(merged_src)
            parts.append(merge_map)
        else:
            k = where[a]
            perm.append(k)
            parts.append(LinMap.identity(Space(src_dims[k])))
    pm = permute_factors(src_dims, perm)
    step = tensor_maps(parts)
    return compose(step, LinMap(pm.source, step.source, pm.cols))


def cell_factor_addrs(t: Tree) -> tuple[list, list]:
    return tr.parity_split(t)


# ---------------------------------------------------------------------------
# The construction


class _Builder:
    def __init__(self, prob: PushoutProblem, n_max: int, t_max: int | None, exact: bool):
        self.prob = prob
        o = prob.o
        self.o = o
        self.N = min(n_max, o.max_arity)
        self.exact = exact
        U, V = prob.u, prob.v
        self.even_support = sorted(k for k in set(U.arities()) | set(V.arities()) if k <= self.N)
        self.odd_support = sorted(k for k in o.seq.arities() if k <= self.N)
        if exact:
            if any(k < 2 for k in self.even_support):
                raise TruncationRequired("exact mode needs U and V supported in arities >= 2")
            if o.seq[0].dim:
                raise TruncationRequired("exact mode needs O(0) = 0; pass t_max instead")
            self.t_max = max(self.N - 1, 0)
        else:
            if t_max is None:
                raise TruncationRequired("pass t_max or use exact mode")
            self.t_max = t_max
        self.state = PushoutState()
        self.truncated = not exact
        self._star_cache: dict = {}
        self.empty_after: dict = {}

    # -- cells -----------------------------------------------------------
    def make_cell(self, t: Tree, n: int, stage: int) -> Cell | None:
        o, U, V = self.o, self.prob.u, self.prob.v
        evens, odds = tr.parity_split(t)
        ar = lambda a: tr.subtree(t, a).arity  # noqa: E731
        dims = [V[ar(a)].dim for a in evens] + [o.seq[ar(a)].dim for a in odds]
        x_dim = math.prod(o.seq[ar(a)].dim for a in odds)
        if x_dim == 0:
            return None
        cube = pp_source([self.prob.f[ar(a)] for a in evens])
        src_dim = cube.object.dim * x_dim
        tgt_dim = math.prod(dims)
        if src_dim == 0 and tgt_dim == 0:
            return None
        return Cell(t, n, stage, evens, odds, dims, Space(tgt_dim), Space(src_dim), x_dim, cube)

    def psi_bar_lookup(self, n: int, t: Tree, stage: int) -> LinMap:
        """ψ̄_stage^t into P_stage(n); zero when the cell was pruned as empty."""
        if stage == 0:
            if t != tr.corolla(n):
                raise AssertionError("stage-0 tree must be a corolla")
            return LinMap.identity(self.o.seq[n])
        c = self.state.cells.get((n, t))
        P = Space(self.state.stages[n][stage].dim)
        if c is None:
            evens, odds = tr.parity_split(t)
            ar = lambda a: tr.subtree(t, a).arity  # noqa: E731
            dim = math.prod([self.prob.v[ar(a)].dim for a in evens] +
                            [self.o.seq[ar(a)].dim for a in odds])
            if dim and max_merge_arity(t) <= self.N:
                raise AssertionError(f"missing cell for {t}")
            return LinMap.zero(Space(dim), P)
        return c.psi_bar

    def star_contraction(self, ext: Tree) -> LinMap:
        key = ext
        m = self._star_cache.get(key)
        if m is None:
            m = eval_full_contraction(self.o, ext)
            self._star_cache[key] = m
        return m

    def psi_t_u(self, c: Cell, u_idx: int) -> LinMap:
        """ψ_{t,u}: D_u ⊗ X → P_{t−1}(n) for the u_idx-th even vertex."""
        t, n, o = c.tree, c.arity, self.o
        u = c.evens[u_idx]
        val_u = tr.subtree(t, u).arity
        # 1. ḡ at the slot of u
        U, V = self.prob.u, self.prob.v
        src_dims = [V[tr.subtree(t, a).arity].dim for a in c.evens] + \
            [o.seq[tr.subtree(t, a).arity].dim for a in c.odds]
        parts = []
        for k, a in enumerate(c.evens):
            if k == u_idx:
                parts.append(self.prob.gbar[val_u])
            else:
                parts.append(LinMap.identity(Space(src_dims[k])))
        for k in range(len(c.odds)):
            parts.append(LinMap.identity(Space(src_dims[len(c.evens) + k])))
        g_step = tensor_maps(parts)
        mid_dims = list(src_dims)
        mid_dims[u_idx] = o.seq[val_u].dim
        # 2. contract the extended star of u
        quotient, vmap = tr.contract_star(t, u)
        parent = u[:-1]
        kids = [u + (j,) for j in range(1, val_u + 1)]
        addrs = list(c.evens) + list(c.odds)
        idx = {a: k for k, a in enumerate(addrs)}
        merged = [idx[parent], idx[u]] + [idx[w] for w in kids]
        star_map = self.star_contraction(tr.extended_star(t, u))
        merge = _merge_into(addrs, mid_dims, vmap, quotient, merged, star_map)
        # 3. the previous stage's cell map
        prev = self.psi_bar_lookup(n, quotient, c.stage - 1)
        m1 = compose(merge, LinMap(g_step.source, merge.source, g_step.cols))
        return compose(prev, LinMap(m1.source, prev.source, m1.cols))

    def build_psi(self, c: Cell) -> LinMap:
        """Glue the ψ_{t,u} along the cube colimit; raises if they disagree."""
        P = Space(self.state.stages[c.arity][c.stage - 1].dim)
        cube = c.cube
        X = c.x_dim
        legs = [self.psi_t_u(c, k) for k in range(len(c.evens))]
        colim = cube.colim
        # legs live on D_u ⊗ X; the relations on ⊕ D_u are tensored with X
        offs = colim.offsets
        for r in colim.relations:
            for x in range(X):
                acc: dict = {}
                for key, val in r.items():
                    b = _block_of(offs, colim.blocks, key)
                    loc = key - offs[b]
                    axpy(acc, val, legs[b].cols[loc * X + x])
                if acc:
                    raise NonCompatibleCube(
                        f"cell {c.tree}: the maps ψ_(t,u) disagree on the cube overlaps")
        cols = []
        for j in colim.quotient.kept:
            b = _block_of(offs, colim.blocks, j)
            loc = j - offs[b]
            for x in range(X):
                cols.append(legs[b].cols[loc * X + x])
        return LinMap(c.src, P, tuple(cols))

    def cell_boundary(self, c: Cell) -> LinMap:
        """``(⊙ f) ⊗ id_X: src → tgt``."""
        m = c.cube.product
        X = c.x_dim
        cols = []
        for col in m.cols:
            for x in range(X):
                cols.append({k * X + x: v for k, v in col.items()})
        return LinMap(c.src, c.tgt, tuple(cols))

    # -- stages ----------------------------------------------------------
    def run(self):
        o = self.o
        st = self.state
        for n in range(self.N + 1):
            st.stages[n] = [Stage(0, o.seq[n].dim, None, [])]
            for t in range(1, self.t_max + 1):
                self.attach(n, t)
            if self.exact:
                # certificate: no cell trees exist beyond the last stage built
                extra = tr.enumerate_even_level_trees(n, self.t_max + 1, self.even_support,
                                                      self.odd_support)
                self.empty_after[n] = not extra
            self.finalize(n)

    def attach(self, n: int, t: int) -> None:
        st = self.state
        prev = st.stages[n][t - 1]
        cells = []
        for tree in tr.enumerate_even_level_trees(n, t, self.even_support, self.odd_support):
            if max_merge_arity(tree) > self.N:
                st.dropped.append((n, t, tr.to_str(tree)))
                self.truncated = True
                continue
            c = self.make_cell(tree, n, t)
            if c is None:
                continue
            c.psi = self.build_psi(c)
            cells.append(c)
        blocks = [c.tgt for c in cells] + [Space(prev.dim)]
        offs = [0]
        for b in blocks:
            offs.append(offs[-1] + b.dim)
        P_off = offs[len(cells)]
        rels = []
        for k, c in enumerate(cells):
            bd = self.cell_boundary(c)
            for s in range(c.src.dim):
                r = {P_off + a: v for a, v in c.psi.cols[s].items()}
                axpy(r, -ONE, {offs[k] + a: v for a, v in bd.cols[s].items()})
                rels.append(r)
        colim = quotient_colimit(blocks, rels)
        for k, c in enumerate(cells):
            c.psi_bar = colim.injections[k]
            st.cells[(n, c.tree)] = c
        phi = colim.injections[len(cells)]
        st.stages[n].append(Stage(t, colim.apex.dim, phi, cells, colim))

    def finalize(self, n: int) -> None:
        st = self.state
        stages = st.stages[n]
        final = Space(stages[-1].dim)
        maps = [None] * len(stages)
        maps[-1] = LinMap.identity(final)
        for t in range(len(stages) - 1, 0, -1):
            maps[t - 1] = compose(maps[t], stages[t].phi)
        st.to_final[n] = maps
        for s in stages[1:]:
            for c in s.cells:
                c.to_final = compose(maps[s.t], c.psi_bar)


def _block_of(offs, blocks, key: int) -> int:
    for b in range(len(blocks)):
        if offs[b] <= key < offs[b] + blocks[b].dim:
            return b
    raise IndexError(key)


# ---------------------------------------------------------------------------
# Generators and compositions


@dataclass(eq=False)
class _Gens:
    """All cell generators of P(n): O(n) first, then every cell target."""

    n: int
    items: list            # (stage, tree or None, dim, offset)
    total: int
    image: LinMap          # generators → P(n)
    chosen: list           # generator indices forming a basis of P(n)
    basis_inv: LinMap      # P(n) → generators (a section picking chosen)


def _generators(b: _Builder, n: int) -> _Gens:
    st = b.state
    to_final = st.to_final[n]
    items, maps, off = [], [], 0
    on = b.o.seq[n]
    items.append((0, tr.corolla(n), on.dim, 0))
    maps.append(to_final[0])
    off += on.dim
    for s in st.stages[n][1:]:
        for c in s.cells:
            items.append((s.t, c.tree, c.tgt.dim, off))
            maps.append(c.to_final)
            off += c.tgt.dim
    P = Space(st.stages[n][-1].dim)
    image = copair(maps, P) if maps else LinMap.zero(Space(0), P)
    chosen = independent_subset(image.cols)
    if len(chosen) != P.dim:
        raise AssertionError("cell images do not span P(n)")
    B = LinMap(P, P, tuple(image.cols[j] for j in chosen))
    Binv = B.inverse()
    sec_cols = []
    for col in Binv.cols:
        sec_cols.append({chosen[k]: v for k, v in col.items()})
    return _Gens(n, items, off, image, chosen, LinMap(P, Space(off), tuple(sec_cols)))


class _Composer:
    def __init__(self, b: _Builder, gens: dict):
        self.b = b
        self.gens = gens

    def d_map(self, m: int, i: int, n: int, a_item, b_item) -> LinMap | None:
        """``d_i(T, T′)``: Tgt_T ⊗ Tgt_T′ → P(m+n−1) (None when truncated away)."""
        b = self.b
        o = b.o
        s, T, _, _ = a_item
        t, T2, _, _ = b_item
        if s + t > b.t_max:
            return None
        leaf = tr.leaf_addrs(T)[i - 1]
        u = leaf[:-1]
        k = leaf[-1]
        big = tr.circ_i_tree(T, i, T2)
        R, vmap = tr.contract_map(big, [tr.EdgeRef(leaf)])
        if max_merge_arity(R) > b.N:
            return None
        ev1, od1 = tr.parity_split(T)
        ev2, od2 = tr.parity_split(T2)
        addrs = list(ev1) + list(od1) + [leaf + a for a in ev2] + [leaf + a for a in od2]
        ar = lambda tree, a: tr.subtree(tree, a).arity  # noqa: E731
        dims = [b.prob.v[ar(T, a)].dim for a in ev1] + [o.seq[ar(T, a)].dim for a in od1] + \
            [b.prob.v[ar(T2, a)].dim for a in ev2] + [o.seq[ar(T2, a)].dim for a in od2]
        iu = len(ev1) + od1.index(u)
        iu2 = len(ev1) + len(od1) + len(ev2)  # top of T′ is its first odd vertex
        merge = o.circ_i(ar(T, u), k, ar(T2, ()))
        step = _merge_into(addrs, dims, vmap, R, [iu, iu2], merge)
        r_arity = m + n - 1
        stage = s + t
        if stage == 0:
            target = b.state.to_final[r_arity][0]
        else:
            c = b.state.cells.get((r_arity, R))
            if c is None:
                if max_merge_arity(R) > b.N or stage > b.t_max:
                    return None
                return LinMap.zero(step.source, Space(b.state.stages[r_arity][-1].dim))
            target = c.to_final
        return compose(target, LinMap(step.source, target.source, step.cols))

    def circ(self, m: int, i: int, n: int, verify: bool = False) -> tuple[LinMap, bool, list]:
        ga, gb = self.gens[m], self.gens[n]
        Pm, Pn = ga.image.target, gb.image.target
        Pr = Space(self.b.state.stages[m + n - 1][-1].dim)
        truncated = False
        issues: list = []
        # D restricted to pairs of chosen generators
        chosen_a, chosen_b = set(ga.chosen), set(gb.chosen)
        cache: dict = {}

        def dblock(ia, ib):
            key = (ia, ib)
            if key not in cache:
                cache[key] = self.d_map(m, i, n, ga.items[ia], gb.items[ib])
            return cache[key]

        def item_of(g, j):
            for idx, (_, _, dim, off) in enumerate(g.items):
                if off <= j < off + dim:
                    return idx, j - off
            raise IndexError(j)

        def d_col(ja, jb):
            ia, la = item_of(ga, ja)
            ib, lb = item_of(gb, jb)
            d = dblock(ia, ib)
            if d is None:
                return None
            return d.cols[la * gb.items[ib][2] + lb]

        # c = D ∘ (section_m ⊗ section_n)
        cols = []
        for x in range(Pm.dim):
            sx = ga.basis_inv.cols[x]
            for y in range(Pn.dim):
                sy = gb.basis_inv.cols[y]
                acc: dict = {}
                for ja, va in sx.items():
                    for jb, vb in sy.items():
                        col = d_col(ja, jb)
                        if col is None:
                            truncated = True
                            continue
                        axpy(acc, va * vb, col)
                cols.append(acc)
        c = LinMap(tensor_objs([Pm, Pn]), Pr, tuple(cols))
        if verify:
            for ja in range(ga.total):
                pa = ga.image.cols[ja]
                for jb in range(gb.total):
                    col = d_col(ja, jb)
                    if col is None:
                        continue
                    pb = gb.image.cols[jb]
                    if _apply2(c, Pn.dim, pa, pb) != col:
                        issues.append((m, i, n, ja, jb))
        return c, truncated, issues


# ---------------------------------------------------------------------------
# Public API


def build_pushout(prob: PushoutProblem, n_max: int, t_max: int | None = None,
                  exact: bool = False, verify: bool = False) -> PushoutResult:
    """Construct the push-out operad stage by stage.

    ``exact`` requires U, V concentrated in arities ≥ 2 and ``O(0) = 0``; then
    every arity stabilises at stage ``n − 1`` and the result is the genuine
    push-out up to ``n_max``.  Otherwise ``t_max`` bounds the number of stages
    and the result is flagged as truncated.  With ``verify`` every composition
    is also checked against all generator pairs, which is what makes the
    compositions well defined on the quotient.
    """
    b = _Builder(prob, n_max, t_max, exact)
    b.run()
    N = b.N
    gens = {n: _generators(b, n) for n in range(N + 1)}
    comp = _Composer(b, gens)
    st = b.state
    seq = Sequence({n: Space(st.stages[n][-1].dim) for n in range(N + 1)
                    if st.stages[n][-1].dim})
    flags = {"truncated": b.truncated, "issues": []}

    def circ_fn(m, i, n):
        c, trunc, issues = comp.circ(m, i, n, verify)
        if trunc:
            flags["truncated"] = True
        if issues:
            flags["issues"].extend(issues)
            raise NonCompatibleCube(f"composition ∘{i} on ({m},{n}) is not well defined: "
                                    f"{len(issues)} generator pairs disagree")
        return LinMap(tensor_objs([seq[m], seq[n]]), seq[m + n - 1], c.cols)

    o = prob.o
    unit = compose(st.to_final[1][0], o.unit) if N >= 1 else LinMap.zero(UNIT, Space(0))
    unit = LinMap(UNIT, seq[1], unit.cols)
    p = Operad(seq, unit, circ_fn, N, name="P", meta={"flags": flags})
    f_prime = OperadMap(o, p, {n: LinMap(o.seq[n], seq[n], st.to_final[n][0].cols)
                               for n in range(N + 1)})
    gp = {}
    for n in prob.v.arities():
        if n > N:
            continue
        gp[n] = _gbar_prime(b, n, seq)
    gbar_prime = SeqMap(prob.v, seq, gp)
    certs = {}
    for n in range(N + 1):
        dims = [s.dim for s in st.stages[n]]
        isos = [s.phi.is_iso() for s in st.stages[n][1:]]
        stable_from = len(dims) - 1
        while stable_from > 0 and isos[stable_from - 1]:
            stable_from -= 1
        certs[n] = {"dims": dims, "stable_from": stable_from,
                    "exact": b.exact and b.empty_after.get(n, False)}
    return PushoutResult(prob, p, f_prime, gbar_prime, st, b.exact, N,
                         None if b.exact else b.t_max, certs, b.truncated, gens)


def _gbar_prime(b: _Builder, n: int, seq: Sequence) -> LinMap:
    """``ḡ′(n) = ψ̄₁ of C₁(Cₙ(C₁,…,C₁))`` precomposed with ``id ⊗ u^{⊗(n+1)}``."""
    o = b.o
    T = tr.node(tr.Tree(tuple(tr.corolla(1) for _ in range(n))))
    c = b.state.cells.get((n, T))
    Vn = b.prob.v[n]
    if c is None:
        return LinMap.zero(Vn, seq[n])
    ins = tensor_maps([LinMap.identity(Vn)] + [o.unit] * (n + 1))
    m = compose(c.to_final, LinMap(ins.source, c.tgt, ins.cols))
    return LinMap(Vn, seq[n], m.cols)


# ---------------------------------------------------------------------------
# Universal property


def _cell_leg(res: PushoutResult, c: Cell, f2: OperadMap, g2: SeqMap) -> LinMap:
    """``P′(p_T) ∘ (⊗ ḡ″ ⊗ ⊗ f″)`` with factors permuted into path order."""
    t = c.tree
    p2 = f2.target
    ar = lambda a: tr.subtree(t, a).arity  # noqa: E731
    parts = [g2[ar(a)] for a in c.evens] + [f2[ar(a)] for a in c.odds]
    dec = tensor_maps(parts)
    order = list(c.evens) + list(c.odds)
    path = [a for a, _, _ in tr.inner_vertices(t)]
    pos = {a: k for k, a in enumerate(order)}
    perm = [pos[a] for a in path]
    tdims = [m.target.dim for m in parts]
    pm = permute_factors(tdims, perm)
    full = eval_full_contraction(p2, t)
    m1 = compose(pm, LinMap(dec.source, pm.source, dec.cols))
    m = compose(full, LinMap(m1.source, full.source, m1.cols))
    return LinMap(c.tgt, p2.seq[c.arity], m.cols)


def induced_morphism(res: PushoutResult, f2: OperadMap, g2: SeqMap,
                     check: bool = True) -> OperadMap:
    """The operad map ``h: P → P′`` with ``h f′ = f″`` and ``h ḡ′ = ḡ″``.

    Built stage by stage: ``h₀ = f″`` and ``h_t ψ̄_t^T = P′(p_T)(⊗ḡ″ ⊗ ⊗f″)``.
    """
    prob = res.problem
    p2 = f2.target
    for n in range(res.n_max + 1):
        lhs = compose(f2[n], prob.gbar[n])
        rhs = compose(g2[n], prob.f[n])
        if lhs != rhs:
            raise IncompatibleCocone(f"f''ḡ != ḡ''f in arity {n}")
    comps = {}
    st = res.state
    for n in range(res.n_max + 1):
        h = f2[n]
        for s in st.stages[n][1:]:
            legs = [_cell_leg(res, c, f2, g2) for c in s.cells] + [h]
            try:
                h = s.colim.induce(legs, p2.seq[n])
            except IncompatibleLegs as exc:
                raise IncompatibleCocone(str(exc)) from exc
        comps[n] = LinMap(res.p.seq[n], p2.seq[n], h.cols)
    return OperadMap(res.p, p2, comps)


def verify_universal(res: PushoutResult, samples) -> Report:
    """Check the induced maps of sample cocones and the spanning property."""
    rep = Report()
    for k, (f2, g2) in enumerate(samples):
        h = induced_morphism(res, f2, g2)
        for n in range(res.n_max + 1):
            rep.checked += 1
            if compose(h[n], res.f_prime[n]) != f2[n]:
                rep.fail(sample=k, identity="h f' = f''", arity=n)
            if compose(h[n], res.gbar_prime[n]) != g2[n]:
                rep.fail(sample=k, identity="h g' = g''", arity=n)
        r = check_operad_map(h)
        if not r.ok:
            rep.fail(sample=k, identity="h is an operad map", info=r.details[:3])
    rep.merge(spanning_report(res))
    return rep


def spanning_report(res: PushoutResult) -> Report:
    """The O-image and all ψ̄-images span each P(n), so cocone maps are unique."""
    rep = Report()
    for n, g in res.gens.items():
        rep.checked += 1
        if g.image.rank() != g.image.target.dim:
            rep.fail(arity=n, reason="cell images do not span")
    return rep


def psi_bar_via_operadic_functor(res: PushoutResult, c: Cell) -> LinMap:
    """``P(p_T)(⊗ḡ′ ⊗ ⊗f′)``, which must equal the final image of ψ̄_T."""
    return _cell_leg(res, c, res.f_prime, res.gbar_prime)


def coproduct_problem(v: Sequence, o: Operad) -> PushoutProblem:
    """U = 0: the push-out is the coproduct ``O ⊔ F(V)``."""
    zero = Sequence({})
    return PushoutProblem(SeqMap(zero, v, {}), SeqMap(zero, o.seq, {}), o)
