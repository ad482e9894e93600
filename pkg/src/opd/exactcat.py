"""Exact ambient categories: rational vector spaces and finite sets.

Vector spaces are finite-dimensional with a chosen basis; morphisms are exact
rational matrices stored column-sparse.  Tensor products use the
left-factor-major (Kronecker) basis ordering everywhere, and every symmetry or
reordering of tensor factors is an explicit permutation matrix.

The module also implements the push-out product calculus: binary push-outs,
``f ⊙ g``, the colimit ``s(f₁ ⊙ … ⊙ fₙ)`` of the punctured cube together with
its canonical maps κᵢ, and maps induced out of it.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

import gmpy2

from .linalg import Echelon, Quotient, axpy, independent_subset, solve_columns

Scalar = gmpy2.mpq
ONE = Scalar(1)
ZERO = Scalar(0)


class DomainMismatch(ValueError):
    """Raised when the objects of two morphisms do not line up."""


class IncompatibleLegs(ValueError):
    """Raised when a family of maps does not define a cocone."""


def scalar(x) -> Scalar:
    """Coerce ints, Fractions, strings ``"p/q"`` and mpq values to a Scalar."""
    if isinstance(x, str):
        return parse_scalar(x)
    if isinstance(x, float):
        raise TypeError("floats are not accepted as exact scalars")
    if isinstance(x, Fraction):
        return Scalar(x.numerator, x.denominator)
    return Scalar(x)


def parse_scalar(s: str) -> Scalar:
    s = s.strip()
    if "/" in s:
        p, q = s.split("/", 1)
        num, den = int(p), int(q)
        if den == 0:
            raise ValueError(f"zero denominator in rational {s!r}")
        return Scalar(num, den)
    return Scalar(int(s))


def format_scalar(x: Scalar) -> str:
    x = Scalar(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------------------
# Spaces and linear maps


@dataclass(frozen=True)
class Space:
    dim: int
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.dim < 0:
            raise ValueError("negative dimension")
        if self.labels is not None:
            object.__setattr__(self, "labels", tuple(self.labels))
            if len(self.labels) != self.dim:
                raise ValueError("label count differs from dimension")
            if len(set(self.labels)) != self.dim:
                raise ValueError("labels must be distinct")

    def __repr__(self) -> str:
        return f"Space({self.dim})"


UNIT = Space(1)
ZERO_SPACE = Space(0)


def _check(a: Space, b: Space, what: str) -> None:
    if a.dim != b.dim:
        raise DomainMismatch(f"{what}: dimension {a.dim} does not match {b.dim}")


def _clean(col: dict) -> dict:
    return {int(k): Scalar(v) for k, v in col.items() if v}


@dataclass(frozen=True, eq=False)
class LinMap:
    """A linear map ``source -> target`` stored as sparse columns.

    ``cols[j]`` is the image of the j-th source basis vector, as a dict from
    target index to nonzero Scalar.
    """

    source: Space
    target: Space
    cols: tuple = field(repr=False)

    def __post_init__(self):
        if len(self.cols) != self.source.dim:
            raise DomainMismatch("column count differs from source dimension")
        for c in self.cols:
            for k in c:
                if not 0 <= k < self.target.dim:
                    raise DomainMismatch(f"row index {k} outside target")

    # constructors -------------------------------------------------------
    @staticmethod
    def from_cols(source: Space, target: Space, cols: Iterable[dict]) -> "LinMap":
        return LinMap(source, target, tuple(_clean(c) for c in cols))

    @staticmethod
    def from_rows(rows: Sequence[Sequence], source: Space | None = None,
                  target: Space | None = None) -> "LinMap":
        """Build from a dense row-major matrix (rows = target dimension)."""
        m = len(rows)
        n = len(rows[0]) if m else (source.dim if source else 0)
        source = source or Space(n)
        target = target or Space(m)
        if target.dim != m or source.dim != n:
            raise DomainMismatch("matrix shape does not match the given spaces")
        cols: list[dict] = [{} for _ in range(n)]
        for i, row in enumerate(rows):
            if len(row) != n:
                raise DomainMismatch("ragged matrix")
            for j, x in enumerate(row):
                x = scalar(x)
                if x:
                    cols[j][i] = x
        return LinMap(source, target, tuple(cols))

    @staticmethod
    def identity(a: Space) -> "LinMap":
        return LinMap(a, a, tuple({j: ONE} for j in range(a.dim)))

    @staticmethod
    def zero(source: Space, target: Space) -> "LinMap":
        return LinMap(source, target, tuple({} for _ in range(source.dim)))

    # views ----------------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return (self.target.dim, self.source.dim)

    def entries(self) -> list[list[Scalar]]:
        rows = [[ZERO] * self.source.dim for _ in range(self.target.dim)]
        for j, c in enumerate(self.cols):
            for i, x in c.items():
                rows[i][j] = x
        return rows

    def entry(self, i: int, j: int) -> Scalar:
        return self.cols[j].get(i, ZERO)

    def apply(self, v: dict) -> dict:
        out: dict = {}
        for j, x in v.items():
            axpy(out, x, self.cols[j])
        return out

    def is_zero(self) -> bool:
        return not any(self.cols)

    def rank(self) -> int:
        e = Echelon()
        for c in self.cols:
            e.add(c)
        return e.rank

    def is_iso(self) -> bool:
        return self.source.dim == self.target.dim and self.rank() == self.source.dim

    def inverse(self) -> "LinMap":
        if not self.is_iso():
            raise ValueError("map is not invertible")
        ident = [{i: ONE} for i in range(self.target.dim)]
        x = solve_columns(self.cols, self.target.dim, ident)
        return LinMap.from_cols(self.target, self.source, x)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinMap):
            return NotImplemented
        return (self.source.dim == other.source.dim
                and self.target.dim == other.target.dim
                and all(a == b for a, b in zip(self.cols, other.cols)))

    __hash__ = None  # type: ignore[assignment]

    def __matmul__(self, other: "LinMap") -> "LinMap":
        return compose(self, other)

    def __add__(self, other: "LinMap") -> "LinMap":
        return add(self, other)

    def __sub__(self, other: "LinMap") -> "LinMap":
        return add(self, scale(-1, other))

    def __neg__(self) -> "LinMap":
        return scale(-1, self)

    def __repr__(self) -> str:
        return f"LinMap({self.source.dim}->{self.target.dim})"


def compose(g: LinMap, f: LinMap) -> LinMap:
    """``g ∘ f``."""
    _check(f.target, g.source, "compose")
    gc = g.cols
    cols = []
    for c in f.cols:
        out: dict = {}
        for k, x in c.items():
            axpy(out, x, gc[k])
        cols.append(out)
    return LinMap(f.source, g.target, tuple(cols))


def compose_all(*maps: LinMap) -> LinMap:
    """``maps[0] ∘ maps[1] ∘ …``."""
    out = maps[-1]
    for g in reversed(maps[:-1]):
        out = compose(g, out)
    return out


def add(f: LinMap, g: LinMap) -> LinMap:
    _check(f.source, g.source, "add")
    _check(f.target, g.target, "add")
    cols = []
    for a, b in zip(f.cols, g.cols):
        c = dict(a)
        axpy(c, ONE, b)
        cols.append(c)
    return LinMap(f.source, f.target, tuple(cols))


def scale(a, f: LinMap) -> LinMap:
    a = scalar(a)
    if not a:
        return LinMap.zero(f.source, f.target)
    return LinMap(f.source, f.target, tuple({k: a * x for k, x in c.items()} for c in f.cols))


# ---------------------------------------------------------------------------
# Tensor products


def tensor_obj(a: Space, b: Space) -> Space:
    labels = None
    if a.labels is not None and b.labels is not None:
        labels = tuple(f"{x}⊗{y}" for x in a.labels for y in b.labels)
    return Space(a.dim * b.dim, labels)


def tensor_objs(objs: Sequence[Space]) -> Space:
    return Space(math.prod(o.dim for o in objs))


def tensor_map(f: LinMap, g: LinMap) -> LinMap:
    """Kronecker product; basis (i, j) of A⊗B sits at index i·dim B + j."""
    gt = g.target.dim
    cols = []
    for fc in f.cols:
        for gc in g.cols:
            cols.append({i * gt + j: x * y for i, x in fc.items() for j, y in gc.items()})
    return LinMap(tensor_obj(f.source, g.source), tensor_obj(f.target, g.target), tuple(cols))


def tensor_maps(maps: Sequence[LinMap]) -> LinMap:
    if not maps:
        return LinMap.identity(UNIT)
    out = maps[0]
    for m in maps[1:]:
        out = tensor_map(out, m)
    return LinMap(tensor_objs([m.source for m in maps]), tensor_objs([m.target for m in maps]),
                  out.cols)


def _strides(dims: Sequence[int]) -> list[int]:
    st = [1] * len(dims)
    for k in range(len(dims) - 2, -1, -1):
        st[k] = st[k + 1] * dims[k + 1]
    return st


def permute_factors(dims: Sequence[int], perm: Sequence[int]) -> LinMap:
    """The symmetry ``X₀⊗…⊗X_{n-1} → X_{perm[0]}⊗…⊗X_{perm[n-1]}``.

    Position k of the target carries the old factor ``perm[k]``.
    """
    n = len(dims)
    if sorted(perm) != list(range(n)):
        raise ValueError(f"{perm} is not a permutation of {n} factors")
    total = math.prod(dims)
    new_dims = [dims[p] for p in perm]
    new_st = _strides(new_dims)
    # stride in the target of old factor perm[k] is new_st[k]
    st_of_old = [0] * n
    for k, p in enumerate(perm):
        st_of_old[p] = new_st[k]
    cols = []
    if total:
        for idx in itertools.product(*(range(d) for d in dims)):
            cols.append({sum(i * s for i, s in zip(idx, st_of_old)): ONE})
    return LinMap(Space(total), Space(total), tuple(cols))


def symmetry(a: Space, b: Space) -> LinMap:
    """``A⊗B → B⊗A``."""
    m = permute_factors([a.dim, b.dim], [1, 0])
    return LinMap(tensor_obj(a, b), tensor_obj(b, a), m.cols)


# ---------------------------------------------------------------------------
# Coproducts and block maps


@dataclass(frozen=True, eq=False)
class Coproduct:
    obj: Space
    injections: tuple[LinMap, ...]
    offsets: tuple[int, ...]


def coproduct(objs: Sequence[Space]) -> Coproduct:
    total = sum(o.dim for o in objs)
    apex = Space(total)
    injs, offs, off = [], [], 0
    for o in objs:
        injs.append(LinMap(o, apex, tuple({off + j: ONE} for j in range(o.dim))))
        offs.append(off)
        off += o.dim
    return Coproduct(apex, tuple(injs), tuple(offs))


def initial() -> Space:
    return ZERO_SPACE


def copair(maps: Sequence[LinMap], target: Space | None = None) -> LinMap:
    """``[g₁ … gₙ]: ⊕ sources → target``."""
    if not maps:
        if target is None:
            raise ValueError("empty copair needs a target")
        return LinMap.zero(ZERO_SPACE, target)
    target = target or maps[0].target
    for m in maps:
        _check(m.target, target, "copair")
    cols = tuple(c for m in maps for c in m.cols)
    return LinMap(Space(len(cols)), target, cols)


def pair(maps: Sequence[LinMap], source: Space | None = None) -> LinMap:
    """``(g₁, …, gₙ): source → ⊕ targets``."""
    if not maps:
        return LinMap.zero(source, ZERO_SPACE)
    source = source or maps[0].source
    offs, off = [], 0
    for m in maps:
        _check(m.source, source, "pair")
        offs.append(off)
        off += m.target.dim
    cols = []
    for j in range(source.dim):
        c = {}
        for m, o in zip(maps, offs):
            for k, x in m.cols[j].items():
                c[o + k] = x
        cols.append(c)
    return LinMap(source, Space(off), tuple(cols))


def direct_sum_map(maps: Sequence[LinMap]) -> LinMap:
    src = coproduct([m.source for m in maps])
    tgt = coproduct([m.target for m in maps])
    cols = []
    for m, o in zip(maps, tgt.offsets):
        for c in m.cols:
            cols.append({o + k: x for k, x in c.items()})
    return LinMap(src.obj, tgt.obj, tuple(cols))


# ---------------------------------------------------------------------------
# Colimits presented as quotients of direct sums


@dataclass(frozen=True, eq=False)
class QuotientColimit:
    """``(⊕ blocks) / relations`` with block injections and a section.

    ``induce(legs)`` returns the unique map out of the colimit restricting to
    ``legs[i]`` on block i; the legs are checked to kill every relation.
    """

    blocks: tuple[Space, ...]
    offsets: tuple[int, ...]
    quotient: Quotient = field(repr=False)
    relations: tuple = field(repr=False)
    apex: Space = field(init=False)
    projection: LinMap = field(init=False, repr=False)
    section: LinMap = field(init=False, repr=False)
    injections: tuple[LinMap, ...] = field(init=False, repr=False)

    def __post_init__(self):
        total = sum(b.dim for b in self.blocks)
        amb = Space(total)
        apex = Space(self.quotient.dim)
        proj = LinMap(amb, apex, tuple(self.quotient.projection_columns()))
        sec = LinMap(apex, amb, tuple(self.quotient.section_columns()))
        injs = tuple(LinMap(b, apex, proj.cols[o:o + b.dim])
                     for b, o in zip(self.blocks, self.offsets))
        object.__setattr__(self, "apex", apex)
        object.__setattr__(self, "projection", proj)
        object.__setattr__(self, "section", sec)
        object.__setattr__(self, "injections", injs)

    def induce(self, legs: Sequence[LinMap], target: Space | None = None) -> LinMap:
        if len(legs) != len(self.blocks):
            raise IncompatibleLegs("wrong number of legs")
        for b, g in zip(self.blocks, legs):
            _check(b, g.source, "leg source")
        big = copair(list(legs), target)
        for r in self.relations:
            if big.apply(r):
                raise IncompatibleLegs("legs do not agree on the glued part")
        return compose(big, self.section)


def quotient_colimit(blocks: Sequence[Space], relations: Iterable[dict]) -> QuotientColimit:
    offs, off = [], 0
    for b in blocks:
        offs.append(off)
        off += b.dim
    rels = tuple(r for r in relations if r)
    return QuotientColimit(tuple(blocks), tuple(offs), Quotient(off, rels), rels)


def _shift(v: dict, off: int) -> dict:
    return {k + off: x for k, x in v.items()}


# ---------------------------------------------------------------------------
# Push-outs


@dataclass(frozen=True, eq=False)
class PushoutData:
    apex: Space
    inj_left: LinMap
    inj_right: LinMap
    colim: QuotientColimit = field(repr=False)

    def induce(self, left: LinMap, right: LinMap) -> LinMap:
        """Mediating map for a cocone ``(left, right)``."""
        return self.colim.induce([left, right])


def pushout(f: LinMap, g: LinMap) -> PushoutData:
    """Push-out of ``B ← A → C`` given ``f: A → B`` and ``g: A → C``."""
    _check(f.source, g.source, "pushout")
    off = f.target.dim
    rels = []
    for a, b in zip(f.cols, g.cols):
        r = dict(a)
        for k, x in b.items():
            r[off + k] = -x
        rels.append(r)
    colim = quotient_colimit([f.target, g.target], rels)
    return PushoutData(colim.apex, colim.injections[0], colim.injections[1], colim)


def verify_pushout(f: LinMap, g: LinMap, po: PushoutData, cocones) -> bool:
    """Check commutativity and the universal property on sample cocones.

    Each cocone ``(l, r)`` must satisfy ``l f = r g``; the mediating map is
    found by solving a linear system (independently of ``po.induce``) and its
    uniqueness follows from joint surjectivity of the injections.
    """
    if compose(po.inj_left, f) != compose(po.inj_right, g):
        return False
    both = copair([po.inj_left, po.inj_right])
    if both.rank() != po.apex.dim:
        return False
    for left, right in cocones:
        target = copair([left, right])
        # solve h ∘ both = target, i.e. both^T h^T = target^T
        bt = transpose_map(both)
        tt = transpose_map(target)
        sol = solve_columns(bt.cols, bt.target.dim, tt.cols)
        if sol is None:
            return False
    return True


def transpose_map(f: LinMap) -> LinMap:
    cols: list[dict] = [{} for _ in range(f.target.dim)]
    for j, c in enumerate(f.cols):
        for i, x in c.items():
            cols[i][j] = x
    return LinMap(f.target, f.source, tuple(cols))


# ---------------------------------------------------------------------------
# Push-out products


@dataclass(frozen=True, eq=False)
class PPSource:
    """The colimit ``s(f₁⊙…⊙fₙ)`` of the punctured cube, with κᵢ.

    Block i of the underlying presentation is ``V₁⊗…⊗Uᵢ⊗…⊗Vₙ`` (the source of
    ``fᵢ`` in slot i, targets elsewhere).
    """

    maps: tuple[LinMap, ...]
    object: Space
    kappas: tuple[LinMap, ...]
    product: LinMap  # f₁⊙…⊙fₙ : object → V₁⊗…⊗Vₙ
    colim: QuotientColimit = field(repr=False)

    def induce(self, legs: Sequence[LinMap], target: Space | None = None) -> LinMap:
        return induced_from_cube(self, legs, target)


def _slot_map(maps: Sequence[LinMap], slots: set, apply_at: int | None) -> LinMap:
    """Tensor of identities, with the source of maps[k] at k ∈ slots.

    When ``apply_at`` is given, that slot (which must be in ``slots``) carries
    ``maps[apply_at]`` instead of an identity on its source.
    """
    parts = []
    for k, m in enumerate(maps):
        if k == apply_at:
            parts.append(m)
        elif k in slots:
            parts.append(LinMap.identity(m.source))
        else:
            parts.append(LinMap.identity(m.target))
    return tensor_maps(parts)


def pp_source(maps: Sequence[LinMap]) -> PPSource:
    """Colimit of the punctured n-cube of ``f₁,…,fₙ``.

    Computed directly as ``(⊕ᵢ Dᵢ)/R`` where Dᵢ has one source factor and R
    identifies the two images of each ``D_{ij}`` (two source factors).
    """
    maps = tuple(maps)
    n = len(maps)
    target = tensor_objs([m.target for m in maps])
    blocks = [_slot_map(maps, {i}, None).source for i in range(n)]
    offs = [0]
    for b in blocks:
        offs.append(offs[-1] + b.dim)
    rels = []
    for i in range(n):
        for j in range(i + 1, n):
            to_i = _slot_map(maps, {i, j}, j)  # D_ij → D_i
            to_j = _slot_map(maps, {i, j}, i)  # D_ij → D_j
            for ci, cj in zip(to_i.cols, to_j.cols):
                r = _shift(ci, offs[i])
                axpy(r, -ONE, _shift(cj, offs[j]))
                rels.append(r)
    colim = quotient_colimit(blocks, rels)
    legs = [_slot_map(maps, {i}, i) for i in range(n)]
    if n == 0:
        prod = LinMap.zero(colim.apex, target)
    else:
        prod = colim.induce(legs, target)
    return PPSource(maps, colim.apex, colim.injections, prod, colim)


def induced_from_cube(s: PPSource, legs: Sequence[LinMap], target: Space | None = None) -> LinMap:
    """The unique map ``g`` out of ``s`` with ``g ∘ κᵢ = legs[i]``."""
    return s.colim.induce(legs, target)


def pushout_product(f: LinMap, g: LinMap) -> LinMap:
    """``f ⊙ g : s(f⊙g) → V⊗Y``."""
    return pp_source([f, g]).product


def binary_pp_source(f: LinMap, g: LinMap) -> PushoutData:
    """``U⊗Y ∪_{U⊗X} V⊗X`` as a literal binary push-out."""
    return pushout(tensor_map(LinMap.identity(f.source), g),
                   tensor_map(f, LinMap.identity(g.source)))


def pp_pushout_comparison(f1: LinMap, g1: LinMap, f2: LinMap, g2: LinMap) -> tuple[LinMap, PushoutData]:
    """⊙ of two push-out squares, compared with the push-out it should be.

    With ``Yᵢ = Vᵢ ∪_{Uᵢ} Xᵢ`` (from ``fᵢ: Uᵢ → Vᵢ`` and ``gᵢ: Uᵢ → Xᵢ``) the
    square with top ``f₁⊙f₂``, bottom ``f′₁⊙f′₂``, right ``g′₁⊗g′₂`` and left
    the map ``s(f₁⊙f₂) → s(f′₁⊙f′₂)`` induced by ``g₁⊗g′₂`` and ``g′₁⊗g₂``
    commutes.  Returns the comparison map from the push-out of its top-left
    corner to ``Y₁⊗Y₂`` (an isomorphism exactly when the square is a
    push-out) together with that push-out.
    """
    p1, p2 = pushout(f1, g1), pushout(f2, g2)
    fp1, gp1 = p1.inj_right, p1.inj_left      # X₁ → Y₁, V₁ → Y₁
    fp2, gp2 = p2.inj_right, p2.inj_left
    top = pp_source([f1, f2])
    bottom = pp_source([fp1, fp2])
    legs = [compose(bottom.kappas[0], tensor_map(g1, gp2)),
            compose(bottom.kappas[1], tensor_map(gp1, g2))]
    left = top.induce(legs, bottom.object)
    corner = pushout(top.product, left)
    comp = corner.induce(tensor_map(gp1, gp2), bottom.product)
    return comp, corner


# ---------------------------------------------------------------------------
# Finite sets


@dataclass(frozen=True)
class FinSetObj:
    elements: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        if len(set(self.elements)) != len(self.elements):
            raise ValueError("finite set elements must be distinct")

    def __len__(self) -> int:
        return len(self.elements)

    def index(self, x: str) -> int:
        return self.elements.index(x)


@dataclass(frozen=True)
class FinSetMap:
    source: FinSetObj
    target: FinSetObj
    images: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(self.images))
        if len(self.images) != len(self.source):
            raise DomainMismatch("one image per source element is required")
        tgt = set(self.target.elements)
        for y in self.images:
            if y not in tgt:
                raise DomainMismatch(f"image {y!r} is not in the target")

    def __call__(self, x: str) -> str:
        return self.images[self.source.index(x)]

    @staticmethod
    def identity(a: FinSetObj) -> "FinSetMap":
        return FinSetMap(a, a, a.elements)

    @staticmethod
    def from_function(a: FinSetObj, b: FinSetObj, fn: Callable[[str], str]) -> "FinSetMap":
        return FinSetMap(a, b, tuple(fn(x) for x in a.elements))


FINSET_UNIT = FinSetObj(("*",))


def fs_compose(g: FinSetMap, f: FinSetMap) -> FinSetMap:
    if f.target != g.source:
        raise DomainMismatch("compose: finite sets differ")
    return FinSetMap(f.source, g.target, tuple(g(y) for y in f.images))


def fs_tensor_obj(a: FinSetObj, b: FinSetObj) -> FinSetObj:
    return FinSetObj(tuple(f"({x},{y})" for x in a.elements for y in b.elements))


def fs_tensor_map(f: FinSetMap, g: FinSetMap) -> FinSetMap:
    return FinSetMap(fs_tensor_obj(f.source, g.source), fs_tensor_obj(f.target, g.target),
                     tuple(f"({x},{y})" for x in f.images for y in g.images))


def fs_symmetry(a: FinSetObj, b: FinSetObj) -> FinSetMap:
    src, tgt = fs_tensor_obj(a, b), fs_tensor_obj(b, a)
    return FinSetMap(src, tgt, tuple(f"({y},{x})" for x in a.elements for y in b.elements))


def fs_coproduct(a: FinSetObj, b: FinSetObj) -> tuple[FinSetObj, FinSetMap, FinSetMap]:
    obj = FinSetObj(tuple(f"l:{x}" for x in a.elements) + tuple(f"r:{y}" for y in b.elements))
    return (obj, FinSetMap(a, obj, tuple(f"l:{x}" for x in a.elements)),
            FinSetMap(b, obj, tuple(f"r:{y}" for y in b.elements)))


@dataclass(frozen=True)
class FinSetPushout:
    apex: FinSetObj
    inj_left: FinSetMap
    inj_right: FinSetMap

    def induce(self, left: FinSetMap, right: FinSetMap) -> FinSetMap:
        tgt = left.target
        out: dict[str, str] = {}
        for leg, inj in ((left, self.inj_left), (right, self.inj_right)):
            for x in leg.source.elements:
                rep, y = inj(x), leg(x)
                if out.setdefault(rep, y) != y:
                    raise IncompatibleLegs("cocone legs disagree on a glued element")
        return FinSetMap(self.apex, tgt, tuple(out[r] for r in self.apex.elements))


def fs_pushout(f: FinSetMap, g: FinSetMap) -> FinSetPushout:
    """Quotient of ``B ⊔ C`` by the relation generated by ``f(a) ~ g(a)``."""
    if f.source != g.source:
        raise DomainMismatch("pushout: sources differ")
    obj, il, ir = fs_coproduct(f.target, g.target)
    parent = {x: x for x in obj.elements}

    def find(x: str) -> str:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a in f.source.elements:
        x, y = find(il(f(a))), find(ir(g(a)))
        if x != y:
            lo, hi = min(x, y), max(x, y)
            parent[hi] = lo
    reps = sorted({find(x) for x in obj.elements})
    apex = FinSetObj(tuple(reps))
    left = FinSetMap(f.target, apex, tuple(find(il(b)) for b in f.target.elements))
    right = FinSetMap(g.target, apex, tuple(find(ir(c)) for c in g.target.elements))
    return FinSetPushout(apex, left, right)


def linearize_obj(a: FinSetObj) -> Space:
    return Space(len(a), a.elements)


def linearize(f: FinSetMap) -> LinMap:
    """The free vector space functor, which preserves colimits and ⊗."""
    return LinMap(linearize_obj(f.source), linearize_obj(f.target),
                  tuple({f.target.index(y): ONE} for y in f.images))


# ---------------------------------------------------------------------------
# JSON


def finset_to_json(a: FinSetObj) -> dict:
    return {"elements": list(a.elements)}


def finset_from_json(d: dict) -> FinSetObj:
    return FinSetObj(tuple(d["elements"]))


def finsetmap_to_json(f: FinSetMap) -> dict:
    return {"source": finset_to_json(f.source), "target": finset_to_json(f.target),
            "images": list(f.images)}


def finsetmap_from_json(d: dict) -> FinSetMap:
    return FinSetMap(finset_from_json(d["source"]), finset_from_json(d["target"]),
                     tuple(d["images"]))


def column_basis(f: LinMap) -> list[int]:
    """Indices of a maximal independent set of columns of ``f``."""
    return independent_subset(f.cols)
