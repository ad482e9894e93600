"""S-graphs, endomorphism operads and algebras over an operad.

An S-graph ``M`` assigns a space ``M(x, y)`` to each ordered pair of objects;
we read ``M(x, y)`` as arrows from ``x`` to ``y``.  The tensor

    (M ⊗_S N)(x, y) = ⊕_z M(z, y) ⊗ N(x, z)

composes an arrow of ``N`` followed by an arrow of ``M``.  Iterated tensors are
flattened: a basis vector of ``F₁ ⊗ … ⊗ Fₙ`` at ``(x, y)`` is a *string*
``(e₁, …, eₙ)`` of basis arrows with ``e₁`` ending at ``y``, ``eₙ`` starting
at ``x`` and each ``eᵢ`` starting where ``eᵢ₊₁`` ends.  Strings are ordered by
their chain of intermediate objects (lexicographically, in the order of the
object list) and then left-factor-major.  A basis arrow is the triple
``(source, target, k)``.

``z(A)`` puts ``A`` on the diagonal, so ``(z(A) ⊗ M)(x, y) = A ⊗ M(x, y)``.
Structure maps of an algebra are stored per pair as

    ν_n(x, y): O(n) ⊗ Y^{⊗n}(x, y) → Y(x, y)

with the operad factor first.
"""

from __future__ import annotations

import functools
import itertools
from collections.abc import Iterable
from collections.abc import Sequence as Seq
from dataclasses import dataclass, field

from .exactcat import (
    ONE,
    UNIT,
    ZERO_SPACE,
    LinMap,
    Space,
    compose,
    symmetry,
    tensor_map,
    tensor_maps,
    tensor_objs,
)
from .linalg import axpy
from .operad import Operad, OperadMap, mu_from_circ
from .report import Report


class ObjectSetMismatch(ValueError):
    pass


class MissingPresentation(ValueError):
    pass


# ---------------------------------------------------------------------------
# S-graphs


@dataclass(frozen=True, eq=False)
class SGraph:
    objects: tuple
    hom: dict = field(default_factory=dict)

    def __post_init__(self):
        objs = tuple(self.objects)
        object.__setattr__(self, "objects", objs)
        if len(set(objs)) != len(objs):
            raise ValueError("object names must be distinct")
        clean = {}
        for (x, y), sp in self.hom.items():
            if x not in objs or y not in objs:
                raise ObjectSetMismatch(f"hom entry ({x},{y}) uses an unknown object")
            if isinstance(sp, int):
                sp = Space(sp)
            if sp.dim:
                clean[(x, y)] = sp
        object.__setattr__(self, "hom", clean)

    def __getitem__(self, xy) -> Space:
        return self.hom.get(xy, ZERO_SPACE)

    def pairs(self) -> list:
        return [(x, y) for x in self.objects for y in self.objects]

    def dims(self) -> dict:
        return {p: self[p].dim for p in self.pairs()}

    @property
    def total_dim(self) -> int:
        return sum(s.dim for s in self.hom.values())

    def basis(self) -> list:
        return [(x, y, k) for (x, y) in self.pairs() for k in range(self[(x, y)].dim)]

    def __repr__(self) -> str:
        nz = {f"{x},{y}": s.dim for (x, y), s in self.hom.items()}
        return f"SGraph({list(self.objects)}, {nz})"


def sgraph(objects: Iterable[str], dims: dict) -> SGraph:
    """Convenience constructor from integer dimensions."""
    return SGraph(tuple(objects), {k: Space(v) for k, v in dims.items() if v})


def zero_graph(objects: Iterable[str]) -> SGraph:
    return SGraph(tuple(objects), {})


def unit_graph(objects: Iterable[str]) -> SGraph:
    objs = tuple(objects)
    return SGraph(objs, {(x, x): UNIT for x in objs})


def same_objects(*graphs: SGraph) -> tuple:
    objs = graphs[0].objects
    for g in graphs[1:]:
        if g.objects != objs:
            raise ObjectSetMismatch(f"{g.objects} != {objs}")
    return objs


@dataclass(frozen=True, eq=False)
class SGraphMap:
    source: SGraph
    target: SGraph
    components: dict = field(default_factory=dict)

    def __post_init__(self):
        same_objects(self.source, self.target)
        for p, c in self.components.items():
            if c.source.dim != self.source[p].dim or c.target.dim != self.target[p].dim:
                raise ValueError(f"component {p} has the wrong shape")

    def __getitem__(self, xy) -> LinMap:
        c = self.components.get(xy)
        if c is None:
            return LinMap.zero(self.source[xy], self.target[xy])
        return c

    @staticmethod
    def identity(g: SGraph) -> "SGraphMap":
        return SGraphMap(g, g, {p: LinMap.identity(s) for p, s in g.hom.items()})

    @staticmethod
    def zero(a: SGraph, b: SGraph) -> "SGraphMap":
        return SGraphMap(a, b, {})

    def apply(self, elem: tuple) -> dict:
        """Image of a basis arrow ``(x, y, k)`` as a sparse vector in target(x, y)."""
        x, y, k = elem
        return dict(self[(x, y)].cols[k])

    def __eq__(self, other) -> bool:
        if not isinstance(other, SGraphMap):
            return NotImplemented
        return all(self[p] == other[p] for p in self.source.pairs())

    __hash__ = None


def graph_compose(g: SGraphMap, f: SGraphMap) -> SGraphMap:
    return SGraphMap(f.source, g.target,
                     {p: compose(g[p], f[p]) for p in f.source.pairs()
                      if f.source[p].dim and g.target[p].dim})


def graph_add(f: SGraphMap, g: SGraphMap) -> SGraphMap:
    return SGraphMap(f.source, f.target,
                     {p: f[p] + g[p] for p in f.source.pairs()
                      if f.source[p].dim and f.target[p].dim})


# ---------------------------------------------------------------------------
# Flattened tensors


class Layout:
    """Basis strings of ``F₁ ⊗_S … ⊗_S Fₙ`` with index lookup per pair."""

    def __init__(self, factors: tuple):
        self.factors = factors
        n = len(factors)
        if n:
            objs = same_objects(*factors)
        else:
            raise ValueError("use power_layout for the empty tensor")
        self.objects = objs
        self.n = n
        self.strings: dict = {}
        self.index: dict = {}
        self.blocks: dict = {}
        hom = {}
        for x in objs:
            for y in objs:
                strs: list = []
                blocks = []
                for chain in itertools.product(objs, repeat=n - 1):
                    w = (y,) + chain + (x,)
                    # factor i (0-based) is an arrow w[i+1] -> w[i]
                    dims = [factors[i][(w[i + 1], w[i])].dim for i in range(n)]
                    if 0 in dims:
                        continue
                    blocks.append((chain, len(strs), dims))
                    for ks in itertools.product(*[range(d) for d in dims]):
                        strs.append(tuple((w[i + 1], w[i], ks[i]) for i in range(n)))
                if strs:
                    self.strings[(x, y)] = strs
                    self.index[(x, y)] = {s: j for j, s in enumerate(strs)}
                    self.blocks[(x, y)] = blocks
                    hom[(x, y)] = Space(len(strs))
        self.graph = SGraph(objs, hom)

    def dim(self, xy) -> int:
        return len(self.strings.get(xy, ()))


class UnitLayout(Layout):
    """The empty tensor: one empty string on each diagonal pair."""

    def __init__(self, objects: tuple):
        self.factors = ()
        self.objects = objects
        self.n = 0
        self.strings = {(x, x): [()] for x in objects}
        self.index = {(x, x): {(): 0} for x in objects}
        self.blocks = {(x, x): [((), 0, [])] for x in objects}
        self.graph = unit_graph(objects)


@functools.lru_cache(maxsize=4096)
def tensor_layout(factors: tuple) -> Layout:
    return Layout(factors)


@functools.lru_cache(maxsize=512)
def _unit_layout(objects: tuple) -> UnitLayout:
    return UnitLayout(objects)


def power_layout(y: SGraph, n: int) -> Layout:
    if n == 0:
        return _unit_layout(y.objects)
    return tensor_layout((y,) * n)


def layout_of(factors: Seq[SGraph], objects: tuple | None = None) -> Layout:
    factors = tuple(factors)
    if not factors:
        if objects is None:
            raise ValueError("the empty tensor needs an object set")
        return _unit_layout(tuple(objects))
    return tensor_layout(factors)


def tensor_S(m: SGraph, n: SGraph) -> SGraph:
    """``(M ⊗_S N)(x, y) = ⊕_z M(z, y) ⊗ N(x, z)``."""
    return tensor_layout((m, n)).graph


def tensor_S_many(graphs: Seq[SGraph], objects: tuple | None = None) -> SGraph:
    return layout_of(graphs, objects).graph


def tensor_S_maps(maps: Seq[SGraphMap], objects: tuple | None = None) -> SGraphMap:
    """``f₁ ⊗ … ⊗ fₙ`` between flattened tensors, block-diagonal over chains."""
    maps = list(maps)
    if not maps:
        lay = layout_of([], objects)
        return SGraphMap.identity(lay.graph)
    ls = tensor_layout(tuple(m.source for m in maps))
    lt = tensor_layout(tuple(m.target for m in maps))
    comps = {}
    for xy, sblocks in ls.blocks.items():
        tblocks = {c: (off, dims) for c, off, dims in lt.blocks.get(xy, [])}
        cols: list = [{} for _ in range(ls.dim(xy))]
        y, x = xy[1], xy[0]
        for chain, off, dims in sblocks:
            if chain not in tblocks:
                continue
            toff, _ = tblocks[chain]
            w = (y,) + chain + (x,)
            t = tensor_maps([maps[i][(w[i + 1], w[i])] for i in range(len(maps))])
            for j, c in enumerate(t.cols):
                cols[off + j] = {toff + r: v for r, v in c.items()}
        comps[xy] = LinMap(ls.graph[xy], lt.graph[xy], tuple(cols))
    return SGraphMap(ls.graph, lt.graph, comps)


def left_unitor(m: SGraph) -> SGraphMap:
    """``1_S ⊗ M → M``; the tensor has the same strings up to the unit arrow."""
    lay = tensor_layout((unit_graph(m.objects), m))
    comps = {}
    for xy, strs in lay.strings.items():
        cols = [{s[1][2]: ONE} for s in strs]
        comps[xy] = LinMap(lay.graph[xy], m[xy], tuple(cols))
    return SGraphMap(lay.graph, m, comps)


def right_unitor(m: SGraph) -> SGraphMap:
    lay = tensor_layout((m, unit_graph(m.objects)))
    comps = {}
    for xy, strs in lay.strings.items():
        cols = [{s[0][2]: ONE} for s in strs]
        comps[xy] = LinMap(lay.graph[xy], m[xy], tuple(cols))
    return SGraphMap(lay.graph, m, comps)


def associator(a: SGraph, b: SGraph, c: SGraph) -> SGraphMap:
    """``(A ⊗ B) ⊗ C → A ⊗ (B ⊗ C)`` between the bracketed tensors.

    Both sides are re-expressed as strings of the flat triple tensor, so this
    is a permutation; it exists to make the flattening convention testable.
    """
    ab = tensor_layout((a, b))
    bc = tensor_layout((b, c))
    left = tensor_layout((ab.graph, c))
    right = tensor_layout((a, bc.graph))
    comps = {}
    for xy, strs in left.strings.items():
        cols = []
        for s in strs:
            (u1, v1, k1), (u2, v2, k2) = s
            s_ab = ab.strings[(u1, v1)][k1]
            flat = s_ab + ((u2, v2, k2),)
            # regroup as a ⊗ (b ⊗ c)
            bc_str = flat[1:]
            bxy = (bc_str[-1][0], bc_str[0][1])
            kb = bc.index[bxy][bc_str]
            tgt = (flat[0], (bxy[0], bxy[1], kb))
            cols.append({right.index[xy][tgt]: ONE})
        comps[xy] = LinMap(left.graph[xy], right.graph[xy], tuple(cols))
    return SGraphMap(left.graph, right.graph, comps)


# ---------------------------------------------------------------------------
# z, ζ and the enriched hom


def z_of(a: Space, objects: Iterable[str]) -> SGraph:
    objs = tuple(objects)
    return SGraph(objs, {(x, x): a for x in objs} if a.dim else {})


def z_map(f: LinMap, objects: Iterable[str]) -> SGraphMap:
    objs = tuple(objects)
    return SGraphMap(z_of(f.source, objs), z_of(f.target, objs),
                     {(x, x): f for x in objs if f.source.dim and f.target.dim})


def zeta(a: Space, m: SGraph) -> SGraphMap:
    """``ζ(A, M): z(A) ⊗ M → M ⊗ z(A)``, the symmetry of V on each pair."""
    za = z_of(a, m.objects)
    src = tensor_layout((za, m)).graph if a.dim else zero_graph(m.objects)
    tgt = tensor_layout((m, za)).graph if a.dim else zero_graph(m.objects)
    comps = {}
    for xy, sp in m.hom.items():
        if a.dim:
            comps[xy] = LinMap(src[xy], tgt[xy], symmetry(a, sp).cols)
    return SGraphMap(src, tgt, comps)


def _hom_offsets(y: SGraph, z: SGraph) -> tuple[dict, int]:
    offs, off = {}, 0
    for p in y.pairs():
        offs[p] = off
        off += y[p].dim * z[p].dim
    return offs, off


def hom_C(y: SGraph, z: SGraph) -> Space:
    """``Hom_C(Y, Z) = ⊕_{x,y} Hom(Y(x,y), Z(x,y))``; matrix units row-major."""
    same_objects(y, z)
    return Space(_hom_offsets(y, z)[1])


def evaluation(y: SGraph, z: SGraph) -> SGraphMap:
    """``z(Hom_C(Y, Z)) ⊗ Y → Z``, the counit of ``z(−)⊗Y ⊣ Hom_C(Y, −)``."""
    offs, total = _hom_offsets(y, z)
    h = Space(total)
    src = tensor_layout((z_of(h, y.objects), y)).graph if total else zero_graph(y.objects)
    comps = {}
    for p in y.pairs():
        dy, dz = y[p].dim, z[p].dim
        if not dy or not total:
            continue
        cols: list = [{} for _ in range(total * dy)]
        for r in range(dz):
            for c in range(dy):
                cols[(offs[p] + r * dy + c) * dy + c] = {r: ONE}
        comps[p] = LinMap(src[p], z[p], tuple(cols))
    return SGraphMap(src, z, comps)


def curry(phi: dict, a: Space, y: SGraph, z: SGraph) -> LinMap:
    """A family ``A ⊗ Y(x,y) → Z(x,y)`` as a single map ``A → Hom_C(Y, Z)``."""
    offs, total = _hom_offsets(y, z)
    cols: list = [{} for _ in range(a.dim)]
    for p, f in phi.items():
        dy = y[p].dim
        for k in range(a.dim):
            for c in range(dy):
                for r, v in f.cols[k * dy + c].items():
                    cols[k][offs[p] + r * dy + c] = v
    return LinMap(a, Space(total), tuple(cols))


def uncurry(f: LinMap, y: SGraph, z: SGraph) -> dict:
    offs, total = _hom_offsets(y, z)
    if f.target.dim != total:
        raise ValueError("target is not Hom_C(Y, Z)")
    a = f.source
    out = {}
    for p in y.pairs():
        dy, dz = y[p].dim, z[p].dim
        if not dy or not dz:
            continue
        cols: list = [{} for _ in range(a.dim * dy)]
        for k in range(a.dim):
            for i, v in f.cols[k].items():
                q = i - offs[p]
                if 0 <= q < dy * dz:
                    r, c = divmod(q, dy)
                    cols[k * dy + c][r] = v
        out[p] = LinMap(tensor_objs([a, y[p]]), z[p], tuple(cols))
    return out


def hom_l(m: SGraph, p: SGraph) -> SGraph:
    """Right adjoint of ``M ⊗ −``: ``(x, y) ↦ ∏_z Hom(M(y, z), P(x, z))``."""
    objs = same_objects(m, p)
    return SGraph(objs, {(x, y): Space(sum(m[(y, w)].dim * p[(x, w)].dim for w in objs))
                         for x in objs for y in objs})


def hom_r(n: SGraph, p: SGraph) -> SGraph:
    """Right adjoint of ``− ⊗ N``: ``(x, y) ↦ ∏_z Hom(N(z, x), P(z, y))``."""
    objs = same_objects(n, p)
    return SGraph(objs, {(x, y): Space(sum(n[(w, x)].dim * p[(w, y)].dim for w in objs))
                         for x in objs for y in objs})


def _hom_l_offsets(m: SGraph, p: SGraph, x, y) -> dict:
    offs, off = {}, 0
    for w in m.objects:
        offs[w] = off
        off += m[(y, w)].dim * p[(x, w)].dim
    return offs


def curry_l(phi: SGraphMap, m: SGraph, n: SGraph) -> SGraphMap:
    """``M ⊗ N → P`` to its adjoint ``N → Hom_l(M, P)``."""
    p = phi.target
    lay = tensor_layout((m, n))
    hl = hom_l(m, p)
    comps = {}
    for (x, y), sp in n.hom.items():
        offs = _hom_l_offsets(m, p, x, y)
        cols: list = [{} for _ in range(sp.dim)]
        for k in range(sp.dim):
            for w in m.objects:
                dm = m[(y, w)].dim
                for c in range(dm):
                    s = ((y, w, c), (x, y, k))
                    idx = lay.index[(x, w)][s]
                    for r, v in phi[(x, w)].cols[idx].items():
                        cols[k][offs[w] + r * dm + c] = v
        comps[(x, y)] = LinMap(sp, hl[(x, y)], tuple(cols))
    return SGraphMap(n, hl, comps)


def uncurry_l(g: SGraphMap, m: SGraph, p: SGraph) -> SGraphMap:
    n = g.source
    lay = tensor_layout((m, n))
    comps = {}
    for xw, strs in lay.strings.items():
        x, w = xw
        cols = []
        for (ym, wm, c), (xn, yn, k) in strs:
            offs = _hom_l_offsets(m, p, xn, yn)
            dm = m[(yn, w)].dim
            col = {}
            for i, v in g[(xn, yn)].cols[k].items():
                q = i - offs[w]
                if 0 <= q < dm * p[(x, w)].dim and q % dm == c:
                    col[q // dm] = v
            cols.append(col)
        comps[xw] = LinMap(lay.graph[xw], p[xw], tuple(cols))
    return SGraphMap(lay.graph, p, comps)


# ---------------------------------------------------------------------------
# Endomorphism operads


class _EndIndex:
    """Basis bookkeeping for ``End(Y)(n) = ⊕_{pairs} Hom(Y^{⊗n}(x,y), Y(x,y))``."""

    def __init__(self, y: SGraph, max_arity: int):
        self.y = y
        self.lay = [power_layout(y, n) for n in range(max_arity + 1)]
        self.offs: list = []
        self.dims: list = []
        self.decode: list = []
        for n, lay in enumerate(self.lay):
            offs, off, dec = {}, 0, []
            for p in y.pairs():
                offs[p] = off
                dn, dy = lay.dim(p), y[p].dim
                for r in range(dy):
                    for c in range(dn):
                        dec.append((p, r, c))
                off += dn * dy
            self.offs.append(offs)
            self.dims.append(off)
            self.decode.append(dec)

    def index(self, n: int, p, r: int, c: int) -> int:
        return self.offs[n][p] + r * self.lay[n].dim(p) + c


def end_operad(y: SGraph, max_arity: int) -> Operad:
    """``End(Y)(n) = Hom_C(Y^{⊗n}, Y)`` with composition by substitution.

    A matrix unit composes with a matrix unit to a matrix unit or zero, which
    keeps every ``∘ᵢ`` a 0/1 matrix with at most one entry per column.
    """
    from .operad import Sequence

    ix = _EndIndex(y, max_arity)
    seq = Sequence({n: Space(d) for n, d in enumerate(ix.dims) if d})
    ucols: dict = {}
    for p in y.pairs():
        for r in range(y[p].dim):
            ucols[ix.index(1, p, r, ix.lay[1].index[p][((p[0], p[1], r),)])] = ONE
    unit = LinMap(UNIT, seq[1], (ucols,)) if max_arity >= 1 else None

    def circ(m: int, i: int, n: int) -> LinMap:
        dm, dn = ix.dims[m], ix.dims[n]
        lm, ln, lr = ix.lay[m], ix.lay[n], ix.lay[m + n - 1]
        cols: list = [{} for _ in range(dm * dn)]
        for a, (p, r, c) in enumerate(ix.decode[m]):
            s = lm.strings[p][c]
            src, tgt, k = s[i - 1]
            q = (src, tgt)
            inner = ln.strings.get(q, ())
            base = ix.offs[n][q] + k * len(inner)
            for c2, s2 in enumerate(inner):
                new = s[:i - 1] + s2 + s[i:]
                cols[a * dn + base + c2] = {ix.index(m + n - 1, p, r, lr.index[p][new]): ONE}
        return LinMap(tensor_objs([seq[m], seq[n]]), seq[m + n - 1], tuple(cols))

    return Operad(seq, unit, circ, max_arity, name="End", meta={"graph": y, "index": ix})


# ---------------------------------------------------------------------------
# Algebras


@dataclass(eq=False)
class Algebra:
    """An O-algebra on the S-graph ``carrier`` with ``ν_n`` for ``n ≤ max_arity``.

    ``partial[n][(x, y)]`` lists source columns of ``ν_n`` that could not be
    evaluated inside a truncation; they are stored as zero and skipped (and
    reported) by the checkers.
    """

    operad: Operad
    carrier: SGraph
    nu: dict
    max_arity: int
    meta: dict = field(default_factory=dict)
    partial: dict = field(default_factory=dict)

    @property
    def objects(self) -> tuple:
        return self.carrier.objects

    def nu_map(self, n: int, xy) -> LinMap:
        c = self.nu.get(n, {}).get(xy)
        if c is None:
            lay = power_layout(self.carrier, n)
            src = tensor_objs([self.operad.seq[n], lay.graph[xy]])
            return LinMap.zero(src, self.carrier[xy])
        return c

    def is_partial(self, n: int, xy, col: int) -> bool:
        return col in self.partial.get(n, {}).get(xy, ())

    @property
    def truncated(self) -> bool:
        return any(s for d in self.partial.values() for s in d.values())

    def act(self, n: int, o: dict, string: tuple, xy=None) -> dict | None:
        """``ν_n(o; e₁, …, eₙ)`` on a basis string; ``None`` inside the truncation."""
        if xy is None:
            xy = (string[-1][0], string[0][1])
        lay = power_layout(self.carrier, n)
        idx = lay.index[xy][string]
        d = lay.dim(xy)
        f = self.nu_map(n, xy)
        out: dict = {}
        for k, v in o.items():
            col = k * d + idx
            if self.is_partial(n, xy, col):
                return None
            axpy(out, v, f.cols[col])
        return out


def nu_from_columns(o: Operad, carrier: SGraph, n: int, fn) -> tuple[dict, dict]:
    """Assemble ``ν_n`` from ``fn(xy, o_index, string) -> dict | None``."""
    lay = power_layout(carrier, n)
    comps, partial = {}, {}
    do = o.seq[n].dim
    for xy, strs in lay.strings.items():
        if not carrier[xy].dim or not do:
            continue
        cols: list = []
        bad = set()
        for k in range(do):
            for s in strs:
                v = fn(xy, k, s)
                if v is None:
                    bad.add(len(cols))
                    v = {}
                cols.append(v)
        comps[xy] = LinMap(tensor_objs([o.seq[n], lay.graph[xy]]), carrier[xy], tuple(cols))
        if bad:
            partial[xy] = bad
    return comps, partial


def _gap_object(xy, string: tuple, j: int):
    """Object sitting at insertion slot j (0-based) of a string from x to y."""
    if j < len(string):
        return string[j][1]
    if string:
        return string[-1][0]
    return xy[0]


def check_algebra(a: Algebra, max_arity: int | None = None) -> Report:
    """The unit diagram and the ∘ᵢ/ζ diagram for ``ν``, on every basis string."""
    o = a.operad
    N = min(a.max_arity, o.max_arity) if max_arity is None else max_arity
    rep = Report()
    y = a.carrier
    u = o.unit.cols[0] if o.unit is not None and o.unit.source.dim else {}
    skipped = 0
    if N >= 1:
        for (x0, y0, k) in y.basis():
            rep.checked += 1
            got = a.act(1, u, ((x0, y0, k),))
            if got is None:
                skipped += 1
            elif got != {k: ONE}:
                rep.fail(diagram="unit", arrow=(x0, y0, k), got=str(got))
    for m in range(1, N + 1):
        for n in range(0, N + 1):
            tot = m + n - 1
            if tot > N or not o.seq[m].dim or not o.seq[n].dim:
                continue
            lay = power_layout(y, tot)
            for i in range(1, m + 1):
                c = o.circ_i(m, i, n)
                dn = o.seq[n].dim
                for xy, strs in lay.strings.items():
                    for s in strs:
                        pre, mid, post = s[:i - 1], s[i - 1:i - 1 + n], s[i - 1 + n:]
                        gap = (_gap_object(xy, s, i - 1 + n) if n == 0 else None)
                        mxy = (gap, gap) if n == 0 else (mid[-1][0], mid[0][1])
                        for p in range(o.seq[m].dim):
                            for q in range(dn):
                                rep.checked += 1
                                lhs = a.act(tot, c.cols[p * dn + q], s, xy)
                                inner = a.act(n, {q: ONE}, mid, mxy)
                                if lhs is None or inner is None:
                                    skipped += 1
                                    continue
                                rhs: dict = {}
                                ok = True
                                for r, v in inner.items():
                                    w = a.act(m, {p: ONE}, pre + ((mxy[0], mxy[1], r),) + post, xy)
                                    if w is None:
                                        ok = False
                                        break
                                    axpy(rhs, v, w)
                                if not ok:
                                    skipped += 1
                                    continue
                                if lhs != rhs:
                                    rep.fail(diagram="composition", m=m, i=i, n=n,
                                             pair=xy, basis=(p, q), string=str(s))
    if skipped and rep.status == "pass":
        rep.status = "truncated"
    if skipped:
        rep.note(skipped=skipped, reason="instances outside the truncation")
    return rep


def check_algebra_map(f: SGraphMap, a: Algebra, b: Algebra, max_arity: int | None = None) -> Report:
    """``f ∘ ν^A_n = ν^B_n ∘ (id ⊗ f^{⊗n})`` on every basis string."""
    N = min(a.max_arity, b.max_arity) if max_arity is None else max_arity
    o = a.operad
    rep = Report()
    skipped = 0
    for n in range(0, N + 1):
        do = o.seq[n].dim
        if not do:
            continue
        lay = power_layout(a.carrier, n)
        for xy, strs in lay.strings.items():
            for s in strs:
                images = [f.apply(e) for e in s]
                for k in range(do):
                    rep.checked += 1
                    av = a.act(n, {k: ONE}, s, xy)
                    if av is None:
                        skipped += 1
                        continue
                    lhs = f[xy].apply(av)
                    rhs = act_on_vectors(b, n, {k: ONE}, images, s, xy)
                    if rhs is None:
                        skipped += 1
                        continue
                    if lhs != rhs:
                        rep.fail(square="nu", n=n, pair=xy, basis=k, string=str(s))
    if skipped and rep.status == "pass":
        rep.status = "truncated"
    if skipped:
        rep.note(skipped=skipped, reason="instances outside the truncation")
    return rep


def act_on_vectors(b: Algebra, n: int, o: dict, vectors: list, shape: tuple, xy) -> dict | None:
    """``ν_n(o; v₁, …, vₙ)`` where ``vᵢ`` lives at the pair of ``shape[i]``."""
    out: dict = {}
    pairs = [(e[0], e[1]) for e in shape]
    terms = [list(v.items()) for v in vectors]
    for combo in itertools.product(*terms):
        coeff = ONE
        for _, c in combo:
            coeff = coeff * c
        string = tuple((p[0], p[1], k) for p, (k, _) in zip(pairs, combo))
        val = b.act(n, o, string, xy)
        if val is None:
            return None
        axpy(out, coeff, val)
    return out


def algebra_from_opmap(f: OperadMap, max_arity: int | None = None) -> Algebra:
    """ν_n obtained by evaluating the operad map into ``End(Y)``."""
    ix: _EndIndex = f.target.meta["index"]
    y = ix.y
    N = min(f.source.max_arity, f.target.max_arity) if max_arity is None else max_arity
    nu = {}
    for n in range(N + 1):
        fn = f[n]

        def col(xy, k, s, fn=fn, n=n):
            c = ix.lay[n].index[xy][s]
            out = {}
            for i, v in fn.cols[k].items():
                p, r, cc = ix.decode[n][i]
                if p == xy and cc == c:
                    out[r] = v
            return out

        comps, _ = nu_from_columns(f.source, y, n, col)
        nu[n] = comps
    return Algebra(f.source, y, nu, N)


def opmap_from_algebra(a: Algebra, end: Operad | None = None) -> OperadMap:
    """The operad map ``O → End(Y)`` adjoint to ``ν``."""
    if end is None:
        end = end_operad(a.carrier, a.max_arity)
    ix: _EndIndex = end.meta["index"]
    comps = {}
    for n in range(a.max_arity + 1):
        do = a.operad.seq[n].dim
        if not do:
            continue
        cols: list = [{} for _ in range(do)]
        for xy in a.carrier.pairs():
            d = ix.lay[n].dim(xy)
            f = a.nu.get(n, {}).get(xy)
            if f is None:
                continue
            for k in range(do):
                for c in range(d):
                    for r, v in f.cols[k * d + c].items():
                        cols[k][ix.index(n, xy, r, c)] = v
        comps[n] = LinMap(a.operad.seq[n], end.seq[n], tuple(cols))
    return OperadMap(a.operad, end, comps)


def algebras_equal(a: Algebra, b: Algebra) -> bool:
    if a.carrier.dims() != b.carrier.dims():
        return False
    N = min(a.max_arity, b.max_arity)
    for n in range(N + 1):
        for xy in a.carrier.pairs():
            if a.nu_map(n, xy) != b.nu_map(n, xy):
                return False
    return True


# ---------------------------------------------------------------------------
# Free and initial algebras


@dataclass(eq=False)
class FreeAlgebra(Algebra):
    """``F_O(Y) = ⊕_{p ≤ p_max} z(O(p)) ⊗ Y^{⊗p}`` with its grading.

    Products landing above ``p_max`` are marked partial rather than set to
    zero, so that maps out of the truncation are checked only where they are
    determined.  ``meta['certificate']`` records whether anything was cut.
    """

    generators: SGraph = None
    p_max: int = 0
    decode: dict = field(default_factory=dict)  # xy -> list of (p, o_index, string)
    encode: dict = field(default_factory=dict)  # xy -> {(p, o_index, string): index}

    def grade(self, xy, k: int) -> int:
        return self.decode[xy][k][0]


def _free_basis(o: Operad, y: SGraph, p_max: int) -> tuple[dict, dict, SGraph]:
    dec: dict = {xy: [] for xy in y.pairs()}
    for p in range(p_max + 1):
        lay = power_layout(y, p)
        for xy, strs in lay.strings.items():
            for k in range(o.seq[p].dim):
                for s in strs:
                    dec[xy].append((p, k, s))
    enc = {xy: {b: i for i, b in enumerate(lst)} for xy, lst in dec.items()}
    carrier = SGraph(y.objects, {xy: Space(len(v)) for xy, v in dec.items() if v})
    return dec, enc, carrier


def free_algebra(o: Operad, y: SGraph, p_max: int, max_arity: int | None = None) -> FreeAlgebra:
    """The free algebra, ``ν_n`` acting on the (p₁…pₙ) summand by ``μ_{n;p₁…pₙ}``."""
    if p_max > o.max_arity:
        raise ValueError("p_max exceeds the operad's max_arity")
    N = o.max_arity if max_arity is None else max_arity
    dec, enc, carrier = _free_basis(o, y, p_max)
    mu_cache: dict = {}

    def mu(n, ps):
        key = (n, ps)
        if key not in mu_cache:
            mu_cache[key] = mu_from_circ(o, n, list(ps))
        return mu_cache[key]

    nu, partial = {}, {}
    dropped = 0
    for n in range(N + 1):
        def col(xy, k, s, n=n):
            nonlocal dropped
            parts = [dec[(e[0], e[1])][e[2]] for e in s]
            ps = tuple(pt[0] for pt in parts)
            total = sum(ps)
            if total > p_max:
                dropped += 1
                return None
            m = mu(n, ps)
            # column of o ⊗ o₁ ⊗ … ⊗ oₙ, left-factor-major
            idx = k
            for pt in parts:
                idx = idx * o.seq[pt[0]].dim + pt[1]
            word = tuple(e for pt in parts for e in pt[2])
            return {enc[xy][(total, r, word)]: v for r, v in m.cols[idx].items()}

        comps, part = nu_from_columns(o, carrier, n, col)
        nu[n] = comps
        if part:
            partial[n] = part
    cert = "exact" if dropped == 0 else f"truncated at p_max={p_max}"
    return FreeAlgebra(o, carrier, nu, N, meta={"certificate": cert, "p_max": p_max},
                       partial=partial, generators=y, p_max=p_max, decode=dec, encode=enc)


def initial_algebra(o: Operad, objects: Iterable[str], max_arity: int | None = None) -> FreeAlgebra:
    """``z(O(0))`` with ``ν_n = z(μ_{n;0,…,0})``."""
    return free_algebra(o, zero_graph(tuple(objects)), 0, max_arity)


def free_algebra_unit(fa: FreeAlgebra) -> SGraphMap:
    """``Y → F_O(Y)``, ``y ↦ u ⊗ y`` in grade 1."""
    y = fa.generators
    u = fa.operad.unit.cols[0]
    comps = {}
    for xy, sp in y.hom.items():
        cols = []
        for k in range(sp.dim):
            s = ((xy[0], xy[1], k),)
            cols.append({fa.encode[xy][(1, r, s)]: v for r, v in u.items()})
        comps[xy] = LinMap(sp, fa.carrier[xy], tuple(cols))
    return SGraphMap(y, fa.carrier, comps)


def free_algebra_extension(fa: FreeAlgebra, b: Algebra, g: SGraphMap) -> SGraphMap:
    """The algebra map ``F_O(Y) → B`` adjoint to ``g: Y → B``."""
    comps = {}
    for xy, lst in fa.decode.items():
        if not lst:
            continue
        cols = []
        for p, k, s in lst:
            v = act_on_vectors(b, p, {k: ONE}, [g.apply(e) for e in s], s, xy)
            if v is None:
                raise ValueError(f"ν_{p} of the target is truncated at {xy}")
            cols.append(v)
        comps[xy] = LinMap(fa.carrier[xy], b.carrier[xy], tuple(cols))
    return SGraphMap(fa.carrier, b.carrier, comps)


def free_algebra_counit(a: Algebra, p_max: int) -> tuple[FreeAlgebra, SGraphMap]:
    """``F_O(A) → A`` given by ``(ν_p)_p``."""
    fa = free_algebra(a.operad, a.carrier, p_max, a.max_arity)
    return fa, free_algebra_extension(fa, a, SGraphMap.identity(a.carrier))


def free_algebra_map(f: SGraphMap, fs: FreeAlgebra, ft: FreeAlgebra) -> SGraphMap:
    """``F_O(f)``: applies ``f`` letter by letter, keeping grade and operation."""
    comps = {}
    for xy, lst in fs.decode.items():
        if not lst:
            continue
        cols = []
        for p, k, s in lst:
            col: dict = {}
            terms = [list(f.apply(e).items()) for e in s]
            for combo in itertools.product(*terms):
                coeff = ONE
                for _, c in combo:
                    coeff = coeff * c
                word = tuple((e[0], e[1], r) for e, (r, _) in zip(s, combo))
                key = (p, k, word)
                idx = ft.encode[xy][key]
                col[idx] = col.get(idx, 0) + coeff
            cols.append({i: v for i, v in col.items() if v})
        comps[xy] = LinMap(fs.carrier[xy], ft.carrier[xy], tuple(cols))
    return SGraphMap(fs.carrier, ft.carrier, comps)


def restrict(phi: OperadMap, b: Algebra) -> Algebra:
    """``φ*B``: the O-action ``ν^O_n = ν^P_n ∘ (φ(n) ⊗ id)``."""
    o = phi.source
    N = min(b.max_arity, o.max_arity, phi.target.max_arity)
    nu, partial = {}, {}
    for n in range(N + 1):
        fn = phi[n]
        lay = power_layout(b.carrier, n)
        comps, part = {}, {}
        for xy, strs in lay.strings.items():
            if not b.carrier[xy].dim or not o.seq[n].dim:
                continue
            d = len(strs)
            g = b.nu_map(n, xy)
            bad_p = b.partial.get(n, {}).get(xy, set())
            cols = []
            bad = set()
            for k in range(o.seq[n].dim):
                for c in range(d):
                    col: dict = {}
                    for r, v in fn.cols[k].items():
                        if r * d + c in bad_p:
                            bad.add(k * d + c)
                        axpy(col, v, g.cols[r * d + c])
                    cols.append(col)
            comps[xy] = LinMap(tensor_objs([o.seq[n], lay.graph[xy]]), b.carrier[xy], tuple(cols))
            if bad:
                part[xy] = bad
        nu[n] = comps
        if part:
            partial[n] = part
    return Algebra(o, b.carrier, nu, N, meta=dict(b.meta, restricted_along=phi), partial=partial)


def poset_algebra(objects: Iterable[str], arrows: Iterable[tuple], o: Operad,
                  max_arity: int | None = None) -> Algebra:
    """A thin category as an algebra over a one-dimensional-per-arity operad.

    ``arrows`` must be reflexive and transitive; every composable string is
    sent to the unique arrow between its ends, scaled by the operad basis
    vector's coefficient (1 for Ass).
    """
    objs = tuple(objects)
    arrows = set(arrows)
    for x in objs:
        if (x, x) not in arrows:
            raise ValueError(f"missing identity on {x}")
    for (a, b) in arrows:
        for (c, d) in arrows:
            if b == c and (a, d) not in arrows:
                raise ValueError("arrows are not transitive")
    carrier = SGraph(objs, {p: UNIT for p in arrows})
    N = o.max_arity if max_arity is None else max_arity
    nu = {}
    for n in range(N + 1):
        comps, _ = nu_from_columns(o, carrier, n, lambda xy, k, s: {0: ONE})
        nu[n] = comps
    return Algebra(o, carrier, nu, N, meta={"kind": "poset"})
