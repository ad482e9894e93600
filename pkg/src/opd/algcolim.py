"""Push-outs of algebras along free maps, and change of operad on cell complexes.

For an O-algebra ``A`` and S-graph maps ``f: Y → Z``, ``ḡ: Y → A`` the
push-out ``B`` of ``F_O(Z) ← F_O(Y) → A`` is built as a filtration
``A = B₀ → B₁ → …``.  Stage ``t`` attaches, for every arity ``n`` and every
``t``-element set ``S`` of slots, the cell

    z(O(n)) ⊗ X₁ ⊗ … ⊗ Xₙ,   Xᵢ = Z for i ∈ S and Xᵢ = A otherwise,

glued along ``s(k₁⊙…⊙kₙ)`` through ``ψ``, whose restriction to the i-th
punctured face feeds ``ḡ`` into slot i and uses the cell of stage ``t−1``.

Cells are not independent: an operation of ``O`` applied to an element of
``A`` produced by ``ν^A`` is the same element of ``B`` as the composite
operation applied to the inputs.  Each stage therefore also imposes

    ψ̄^{n,S}(o; …, ν^A_p(o′; a₁…a_p), …) = ψ̄^{n+p−1,S′}(o ∘ⱼ o′; …, a₁…a_p, …)

for every non-``S`` slot ``j``.  Without these identifications the stages are
too large (a sum over all operations rather than over the enveloping operad
of ``A``).

Everything is computed one pair ``(x, y)`` of objects at a time: all maps
involved preserve the pair.  Within a stage, blocks are ordered by decreasing
arity and the previous stage comes last, so the canonical quotient keeps
coordinates of the previous stage and of low-arity cells.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .algebra import (
    Algebra,
    Layout,
    MissingPresentation,
    SGraph,
    SGraphMap,
    _gap_object,
    act_on_vectors,
    check_algebra_map,
    graph_compose,
    initial_algebra,
    layout_of,
    nu_from_columns,
    restrict,
    same_objects,
    z_map,
)
from .exactcat import (
    ONE,
    ZERO_SPACE,
    IncompatibleLegs,
    LinMap,
    Space,
    compose,
    pp_source,
    quotient_colimit,
)
from .linalg import axpy
from .operad import Operad, OperadMap, mu_from_circ
from .report import Report
from .trees import TruncationRequired


class IncompatibleCocone(ValueError):
    pass


class NonCompatibleCell(RuntimeError):
    """ψ does not descend to the cube colimit; signals an implementation bug."""


@dataclass
class AlgCell:
    stage: int
    n: int
    S: tuple
    layout: Layout
    offset: dict = field(default_factory=dict)  # xy -> offset in the stage sum

    def dim(self, o: Operad, xy) -> int:
        return o.seq[self.n].dim * self.layout.dim(xy)


@dataclass
class AlgStage:
    t: int
    cells: dict                      # (n, S) -> AlgCell
    colim: dict                      # xy -> QuotientColimit
    prev_offset: dict                # xy -> offset of the previous stage block
    carrier: SGraph
    phi: SGraphMap                   # B_{t−1} → B_t
    counts: dict = field(default_factory=dict)


@dataclass
class AlgebraPushout:
    a: Algebra
    f: SGraphMap
    gbar: SGraphMap
    algebra: Algebra
    f_prime: SGraphMap
    gbar_prime: SGraphMap
    stages: list
    to_final: list                   # per stage, SGraphMap B_t → B
    n_max: int
    t_max: int
    report: Report
    certificate: str

    def dim_table(self) -> dict:
        out = {}
        for st in [None] + self.stages:
            g = self.a.carrier if st is None else st.carrier
            t = 0 if st is None else st.t
            out[t] = {f"{x},{y}": g[(x, y)].dim for (x, y) in g.pairs()}
        return out


# ---------------------------------------------------------------------------
# construction


class _Build:
    def __init__(self, a: Algebra, f: SGraphMap, gbar: SGraphMap, n_max: int, t_max: int):
        self.a, self.f, self.gbar = a, f, gbar
        self.o = a.operad
        self.N, self.T = n_max, t_max
        self.objs = same_objects(a.carrier, f.source, f.target, gbar.source)
        if gbar.target.dims() != a.carrier.dims():
            raise ValueError("ḡ must land in the carrier of A")
        self.Y, self.Z = f.source, f.target
        self.stages: list[AlgStage] = []
        self.report = Report()
        self.skipped_env = 0

    # ψ̄ of the previous stage, on a basis string of the cell (n, S)
    def psibar(self, t: int, n: int, S: tuple, xy, o: dict, string: tuple) -> dict:
        if t == 0:
            v = self.a.act(n, o, string, xy)
            if v is None:
                raise TruncationRequired(f"ν^A_{n} is not available at {xy}")
            return v
        st = self.stages[t - 1]
        cell = st.cells[(n, S)]
        d = cell.layout.dim(xy)
        idx = cell.layout.index[xy][string]
        proj = st.colim[xy].projection
        out: dict = {}
        for k, v in o.items():
            axpy(out, v, proj.cols[cell.offset[xy] + k * d + idx])
        return out

    def prev_carrier(self, t: int) -> SGraph:
        return self.a.carrier if t == 1 else self.stages[t - 2].carrier

    def cell_list(self, t: int) -> list:
        out = []
        for n in range(self.N, max(t, 1) - 1, -1):
            if not self.o.seq[n].dim:
                continue
            for S in itertools.combinations(range(1, n + 1), t):
                out.append((n, S))
        return out

    def run(self) -> None:
        for t in range(1, self.T + 1):
            self.stage(t)

    def stage(self, t: int) -> None:
        o, A = self.o, self.a.carrier
        prev = self.prev_carrier(t)
        cells = {}
        for n, S in self.cell_list(t):
            factors = [self.Z if i in S else A for i in range(1, n + 1)]
            cells[(n, S)] = AlgCell(t, n, S, layout_of(factors))
        colims, prev_off, hom, phis = {}, {}, {}, {}
        counts = {"pushout_relations": 0, "envelope_relations": 0}
        for xy in A.pairs():
            blocks, off = [], 0
            for cell in cells.values():
                cell.offset[xy] = off
                d = cell.dim(o, xy)
                blocks.append(Space(d))
                off += d
            prev_off[xy] = off
            blocks.append(prev[xy])
            rels = self.pushout_relations(t, cells, xy, off)
            counts["pushout_relations"] += len(rels)
            env = self.envelope_relations(t, cells, xy)
            counts["envelope_relations"] += len(env)
            colim = quotient_colimit(blocks, rels + env)
            colims[xy] = colim
            if colim.apex.dim:
                hom[xy] = colim.apex
        carrier = SGraph(self.objs, hom)
        for xy, colim in colims.items():
            if prev[xy].dim and carrier[xy].dim:
                phis[xy] = LinMap(prev[xy], carrier[xy], colim.injections[-1].cols)
        self.stages.append(AlgStage(t, cells, colims, prev_off, carrier,
                                    SGraphMap(prev, carrier, phis), counts))

    def pushout_relations(self, t: int, cells: dict, xy, prev_off: int) -> list:
        o, A, f, gbar = self.o, self.a.carrier, self.f, self.gbar
        x, y = xy
        rels = []
        for (n, S), cell in cells.items():
            lay = cell.layout
            d_cell = lay.dim(xy)
            tblocks = {c: off for c, off, _ in lay.blocks.get(xy, [])}
            # chains are enumerated directly: a cell with zero target can
            # still have a nonzero source, which then dies in the push-out
            for chain in itertools.product(self.objs, repeat=n - 1):
                boff = tblocks.get(chain, 0)
                w = (y,) + chain + (x,)
                maps = []
                for i in range(1, n + 1):
                    pr = (w[i], w[i - 1])
                    maps.append(f[pr] if i in S else LinMap.zero(ZERO_SPACE, A[pr]))
                if all(maps[i - 1].source.dim == 0 for i in S):
                    continue
                pp = pp_source(maps)
                if not pp.object.dim:
                    continue
                for k in range(o.seq[n].dim):
                    legs = []
                    for i in range(n):
                        blk = pp.colim.blocks[i]
                        if (i + 1) not in S or not blk.dim:
                            legs.append(LinMap.zero(blk, self.prev_carrier(t)[xy]))
                            continue
                        legs.append(self.face_leg(t, n, S, xy, w, maps, i, k, blk))
                    try:
                        psi = pp.induce(legs, self.prev_carrier(t)[xy])
                    except IncompatibleLegs as exc:
                        raise NonCompatibleCell(f"cell {(n, S)} at {xy}: {exc}") from exc
                    for i, (kap, leg) in enumerate(zip(pp.kappas, legs)):
                        self.report.checked += 1
                        if compose(psi, kap) != leg:
                            self.report.fail(identity="psi_face", stage=t, n=n, S=S, pair=xy, slot=i + 1)
                    for s in range(pp.object.dim):
                        r = {prev_off + kk: v for kk, v in psi.cols[s].items()}
                        base = cell.offset[xy] + k * d_cell + boff
                        for kk, v in pp.product.cols[s].items():
                            r[base + kk] = r.get(base + kk, 0) - v
                        rels.append({kk: v for kk, v in r.items() if v})
        return rels

    def face_leg(self, t, n, S, xy, w, maps, i, k, blk) -> LinMap:
        """``ψ̄_{t−1}^{n,S∖{i}} ∘ (id ⊗ … ḡ at slot i … ⊗ id)`` on one face."""
        dims = [maps[j].source.dim if j == i else maps[j].target.dim for j in range(n)]
        S_rest = tuple(s for s in S if s != i + 1)
        gpair = (w[i + 1], w[i])
        g = self.gbar[gpair]
        cols = []
        for ks in itertools.product(*[range(dd) for dd in dims]):
            col: dict = {}
            for r, v in g.cols[ks[i]].items():
                string = tuple((w[j + 1], w[j], r if j == i else ks[j]) for j in range(n))
                axpy(col, v, self.psibar(t - 1, n, S_rest, xy, {k: ONE}, string))
            cols.append(col)
        return LinMap(blk, self.prev_carrier(t)[xy], tuple(cols))

    def envelope_relations(self, t: int, cells: dict, xy) -> list:
        o, a = self.o, self.a
        rels = []
        for (n, S), cell in cells.items():
            for j in range(1, n + 1):
                if j in S:
                    continue
                for p in range(0, self.N - n + 2):
                    if not o.seq[p].dim or p > a.max_arity:
                        continue
                    S2 = tuple(s if s < j else s + p - 1 for s in S)
                    key2 = (n + p - 1, S2)
                    if key2 not in cells:
                        continue
                    cell2 = cells[key2]
                    if xy not in cell2.layout.strings:
                        continue
                    circ = o.circ_i(n, j, p)
                    dp = o.seq[p].dim
                    d1, d2 = cell.layout.dim(xy), cell2.layout.dim(xy)
                    idx1 = cell.layout.index.get(xy, {})
                    for idx2, s2 in enumerate(cell2.layout.strings[xy]):
                        pre, mid, post = s2[:j - 1], s2[j - 1:j - 1 + p], s2[j - 1 + p:]
                        if p:
                            mxy = (mid[-1][0], mid[0][1])
                        else:
                            g = _gap_object(xy, s2, j - 1)
                            mxy = (g, g)
                        for q in range(dp):
                            inner = a.act(p, {q: ONE}, mid, mxy)
                            if inner is None:
                                self.skipped_env += 1
                                continue
                            for k in range(o.seq[n].dim):
                                r: dict = {}
                                for rr, v in inner.items():
                                    s1 = pre + ((mxy[0], mxy[1], rr),) + post
                                    pos = cell.offset[xy] + k * d1 + idx1[s1]
                                    r[pos] = r.get(pos, 0) + v
                                for kk, v in circ.cols[k * dp + q].items():
                                    pos = cell2.offset[xy] + kk * d2 + idx2
                                    r[pos] = r.get(pos, 0) - v
                                r = {kk: v for kk, v in r.items() if v}
                                if r:
                                    rels.append(r)
        return rels


def _chain_maps(stages: list, a_carrier: SGraph) -> list:
    """``B_t → B_T`` for every t, as S-graph maps."""
    if not stages:
        return [SGraphMap.identity(a_carrier)]
    final = stages[-1].carrier
    out = [SGraphMap.identity(final)]
    for st in reversed(stages):
        out.append(graph_compose(out[-1], st.phi))
    out.reverse()
    return out


def algebra_pushout(a: Algebra, f: SGraphMap, gbar: SGraphMap, n_max: int | None = None,
                    t_max: int | None = None, nu_arity: int | None = None) -> AlgebraPushout:
    """The push-out of ``F_O(Z) ← F_O(Y) → A`` by cell attachment.

    Cells use operad arities ``n ≤ n_max`` and stages ``t ≤ t_max``; the
    result carries a certificate saying which truncations were in force.
    ``ν^B_n`` is assembled for ``n ≤ nu_arity`` (default ``n_max``) and marks
    as partial every product that would need a cell beyond the truncation.
    """
    o = a.operad
    if n_max is None:
        bound = o.meta.get("support_bound")
        if bound is None:
            raise TruncationRequired("the operad may have unbounded support; pass n_max")
        n_max = bound
    n_max = min(n_max, o.max_arity, a.max_arity)
    t_max = n_max if t_max is None else min(t_max, n_max)
    if t_max < 1:
        raise ValueError("t_max must be at least 1")
    b = _Build(a, f, gbar, n_max, t_max)
    b.run()
    to_final = _chain_maps(b.stages, a.carrier)
    final = b.stages[-1].carrier
    f_prime = to_final[0]
    gbar_prime = _gbar_prime(b, to_final)
    nu_arity = n_max if nu_arity is None else min(nu_arity, n_max)
    algebra = _assemble_nu(b, to_final, nu_arity)
    support_ends = o.meta.get("support_bound")
    exact = t_max == n_max and support_ends is not None and support_ends <= n_max
    cert = "exact" if exact else f"truncated: cell arities <= {n_max}, stages <= {t_max}"
    if b.skipped_env:
        cert += f"; {b.skipped_env} identifications skipped (ν^A truncated)"
    algebra.meta["certificate"] = cert
    b.report.tables["dims"] = {t: {f"{x},{y}": k for (x, y), k in d.items()} for t, d in
                               enumerate([a.carrier.dims()] + [s.carrier.dims() for s in b.stages])}
    if b.report.status == "pass" and not exact:
        b.report.status = "truncated"
    return AlgebraPushout(a, f, gbar, algebra, f_prime, gbar_prime, b.stages, to_final,
                          n_max, t_max, b.report, cert)


def _gbar_prime(b: _Build, to_final: list) -> SGraphMap:
    """``Z → B``: ``z ↦ ψ̄₁^{1,{1}}(u ⊗ z)`` pushed to the colimit."""
    o = b.o
    u = o.unit.cols[0]
    st = b.stages[0]
    cell = st.cells.get((1, (1,)))
    comps = {}
    for xy, sp in b.Z.hom.items():
        cols = []
        for k in range(sp.dim):
            v: dict = {}
            if cell is not None:
                d = cell.layout.dim(xy)
                idx = cell.layout.index[xy][((xy[0], xy[1], k),)]
                for kk, c in u.items():
                    axpy(v, c, st.colim[xy].projection.cols[cell.offset[xy] + kk * d + idx])
            cols.append(to_final[1][xy].apply(v) if v else {})
        comps[xy] = LinMap(sp, to_final[-1].target[xy], tuple(cols))
    return SGraphMap(b.Z, to_final[-1].target, comps)


def _representative(b: _Build, t: int, xy, k: int):
    """The cell coordinate chosen for basis vector k of ``B_t(x, y)``."""
    while t > 0:
        st = b.stages[t - 1]
        (j,) = st.colim[xy].section.cols[k].keys()
        if j >= st.prev_offset[xy]:
            k = j - st.prev_offset[xy]
            t -= 1
            continue
        for (n, S), cell in st.cells.items():
            off = cell.offset[xy]
            size = cell.dim(b.o, xy)
            if off <= j < off + size:
                oi, idx = divmod(j - off, cell.layout.dim(xy))
                return ("cell", t, n, S, oi, cell.layout.strings[xy][idx])
        raise AssertionError("section coordinate outside every block")
    return ("A", (xy[0], xy[1], k))


def _tensor_vector(vectors: list, dims: list) -> dict:
    out: dict = {}
    for combo in itertools.product(*[list(v.items()) for v in vectors]):
        idx, c = 0, ONE
        for (k, v), d in zip(combo, dims):
            idx = idx * d + k
            c = c * v
        out[idx] = out.get(idx, 0) + c
    return {k: v for k, v in out.items() if v}


def _assemble_nu(b: _Build, to_final: list, nu_arity: int) -> Algebra:
    """``ν^B_n`` through ``c_n``: multiply the operations, concatenate the inputs."""
    o, a = b.o, b.a
    final = b.stages[-1].carrier
    u = o.unit.cols[0]
    reps: dict = {}

    def rep(e):
        if e not in reps:
            r = _representative(b, len(b.stages), (e[0], e[1]), e[2])
            if r[0] == "A":
                reps[e] = (1, (), 0, dict(u), (r[1],))
            else:
                _, t, n, S, oi, s = r
                reps[e] = (n, S, t, {oi: ONE}, s)
        return reps[e]

    mu_cache: dict = {}

    def mu(n, ps):
        if (n, ps) not in mu_cache:
            mu_cache[(n, ps)] = mu_from_circ(o, n, list(ps))
        return mu_cache[(n, ps)]

    def value(xy, total, S, t, vec, letters):
        if t == 0:
            v = a.act(total, vec, letters, xy)
            return None if v is None else to_final[0][xy].apply(v)
        if t > b.T or total > b.N:
            return None
        st = b.stages[t - 1]
        cell = st.cells.get((total, S))
        if cell is None:
            return None
        d = cell.layout.dim(xy)
        idx = cell.layout.index[xy][letters]
        out: dict = {}
        for k, c in vec.items():
            axpy(out, c, st.colim[xy].projection.cols[cell.offset[xy] + k * d + idx])
        return to_final[t][xy].apply(out)

    nu, partial = {}, {}
    for n in range(nu_arity + 1):
        def col(xy, k, s, n=n):
            parts = [rep(e) for e in s]
            ps = tuple(pt[0] for pt in parts)
            total = sum(ps)
            if total > b.N:
                return None
            S, shift, t = [], 0, 0
            for pt in parts:
                S.extend(x + shift for x in pt[1])
                shift += pt[0]
                t += pt[2]
            letters = tuple(e for pt in parts for e in pt[4])
            if n == 0:
                vec = {k: ONE}
            else:
                m = mu(n, ps)
                vin = _tensor_vector([{k: ONE}] + [pt[3] for pt in parts],
                                     [o.seq[n].dim] + [o.seq[p].dim for p in ps])
                vec = {}
                for idx, c in vin.items():
                    axpy(vec, c, m.cols[idx])
            if not vec:
                return {}
            return value(xy, total, tuple(S), t, vec, letters)

        comps, part = nu_from_columns(o, final, n, col)
        nu[n] = comps
        if part:
            partial[n] = part
    return Algebra(o, final, nu, nu_arity, meta={}, partial=partial)


# ---------------------------------------------------------------------------
# universal property


def algebra_induced_morphism(res: AlgebraPushout, b2: Algebra, f2: SGraphMap,
                             g2: SGraphMap) -> SGraphMap:
    """The unique algebra map ``h: B → B′`` with ``h f′ = f″`` and ``h ḡ′ = ḡ″``.

    Stage by stage, a cell element ``(o; letters)`` goes to ``ν^{B′}_n(o; …)``
    with ``f″`` on A-letters and ``ḡ″`` on Z-letters, and the previous stage
    goes through ``h_{t−1}``; the legs must kill every relation of the stage.
    """
    f, gbar = res.f, res.gbar
    if graph_compose(f2, gbar) != graph_compose(g2, f):
        raise IncompatibleCocone("f″ḡ differs from ḡ″f")
    o = res.a.operad
    h = f2
    a_pairs = set(res.a.carrier.pairs())
    for st in res.stages:
        comps = {}
        for xy in st.carrier.pairs():
            colim = st.colim[xy]
            legs = []
            for (n, S), cell in st.cells.items():
                cols = []
                for k in range(o.seq[n].dim):
                    for s in cell.layout.strings.get(xy, ()):
                        imgs = [(g2 if (i + 1) in S else f2).apply(e) for i, e in enumerate(s)]
                        v = act_on_vectors(b2, n, {k: ONE}, imgs, s, xy)
                        if v is None:
                            raise TruncationRequired(f"ν^B′_{n} is truncated at {xy}")
                        cols.append(v)
                legs.append(LinMap(colim.blocks[len(legs)], b2.carrier[xy], tuple(cols)))
            legs.append(LinMap(colim.blocks[-1], b2.carrier[xy], h[xy].cols))
            try:
                hx = colim.induce(legs, b2.carrier[xy])
            except IncompatibleLegs as exc:
                raise IncompatibleCocone(f"stage {st.t} at {xy}: {exc}") from exc
            if hx.source.dim:
                comps[xy] = LinMap(st.carrier[xy], b2.carrier[xy], hx.cols)
        h = SGraphMap(st.carrier, b2.carrier, comps)
    assert a_pairs
    return h


def verify_algebra_universal(res: AlgebraPushout, samples: list) -> Report:
    """For each cocone ``(B′, f″, ḡ″)`` build ``h`` and check both triangles and
    the algebra-map squares; uniqueness holds because each stage is spanned by
    the cell images and the previous stage (checked by rank)."""
    rep = Report()
    for st in res.stages:
        for xy, colim in st.colim.items():
            rank = sum(len(i.cols) for i in colim.injections)  # columns available
            rep.checked += 1
            if colim.projection.rank() != colim.apex.dim or rank < colim.apex.dim:
                rep.fail(check="spanning", stage=st.t, pair=xy)
    for idx, (b2, f2, g2) in enumerate(samples):
        h = algebra_induced_morphism(res, b2, f2, g2)
        rep.checked += 2
        if graph_compose(h, res.f_prime) != f2:
            rep.fail(sample=idx, triangle="h f' = f''")
        if graph_compose(h, res.gbar_prime) != g2:
            rep.fail(sample=idx, triangle="h g' = g''")
        sub = check_algebra_map(h, res.algebra, b2)
        if sub.status == "fail":
            rep.fail(sample=idx, check="algebra map", details=sub.details[:3])
        rep.checked += sub.checked
    return rep


# ---------------------------------------------------------------------------
# change of operad on cell-presented algebras


@dataclass
class AlgebraCellPresentation:
    """An algebra presented as ``z(O(0))`` followed by free-map push-outs.

    Each cell is ``(gbar, f)`` with ``f: Y → Z`` and ``gbar: Y → (current
    carrier)``; the carrier is the one produced by replaying the earlier cells
    with the same truncation bounds.
    """

    operad: Operad
    objects: tuple
    cells: list
    n_max: int
    t_max: int | None = None

    def replay(self, operad: Operad | None = None, gbar_fix=None):
        o = self.operad if operad is None else operad
        a = initial_algebra(o, self.objects)
        steps = []
        for gbar, f in self.cells:
            g = gbar if gbar_fix is None else gbar_fix(len(steps), gbar)
            res = algebra_pushout(a, f, g, self.n_max, self.t_max)
            steps.append(res)
            a = res.algebra
        return a, steps


def present(pres: AlgebraCellPresentation) -> Algebra:
    return pres.replay()[0]


@dataclass
class Extension:
    """``φ₊`` of a presented algebra together with the unit ``A → φ*φ₊A``."""

    source_algebra: Algebra
    algebra: Algebra
    unit: SGraphMap
    source_steps: list
    steps: list


def extend_cells(phi: OperadMap, pres: AlgebraCellPresentation) -> Extension:
    """Replay the presentation over the target operad of ``φ``.

    The base ``z(O(0))`` goes to ``z(P(0))`` along ``z(φ(0))``.  Each cell is
    attached along ``η ∘ ḡ`` and the unit ``η`` is extended through the
    universal property of the source push-out, with ``φ₊A′`` viewed as an
    O-algebra by restriction.
    """
    if pres is None:
        raise MissingPresentation("φ₊ is only available on cell-presented algebras")
    o, p = phi.source, phi.target
    if pres.operad is not o:
        raise ValueError("presentation is over a different operad")
    a_o = initial_algebra(o, pres.objects)
    a_p = initial_algebra(p, pres.objects)
    eta = SGraphMap(a_o.carrier, a_p.carrier,
                    z_map(phi[0], pres.objects).components if o.seq[0].dim and p.seq[0].dim else {})
    steps_o, steps_p = [], []
    for gbar, f in pres.cells:
        res_o = algebra_pushout(a_o, f, gbar, pres.n_max, pres.t_max)
        res_p = algebra_pushout(a_p, f, graph_compose(eta, gbar), pres.n_max, pres.t_max)
        back = restrict(phi, res_p.algebra)
        eta = algebra_induced_morphism(res_o, back, graph_compose(res_p.f_prime, eta),
                                       res_p.gbar_prime)
        steps_o.append(res_o)
        steps_p.append(res_p)
        a_o, a_p = res_o.algebra, res_p.algebra
    return Extension(a_o, a_p, eta, steps_o, steps_p)


def adjunction_unit(phi: OperadMap, pres: AlgebraCellPresentation) -> SGraphMap:
    return extend_cells(phi, pres).unit
