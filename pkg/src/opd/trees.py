"""Planted planar trees with leaves.

A tree is either a leaf or an inner vertex with an ordered tuple of children.
The root vertex and root edge are implicit: they sit below the top node.  The
text encoding is ``*`` for a leaf and ``(`` children ``)`` for an inner
vertex, so ``U = *``, ``C₀ = ()`` and ``C₂ = (**)``.

Vertices are addressed by tuples of 1-based child indices starting at the top
node, which has the empty address and level 1.  The root has level 0 and no
address.  Path order on vertices is depth-first preorder, which is also the
left-to-right order of the encoding.
"""

from __future__ import annotations

import gc
import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

Addr = tuple


class ArityMismatch(ValueError):
    pass


class NotInnerEdge(ValueError):
    pass


class RootInStar(ValueError):
    pass


class TruncationRequired(ValueError):
    """An enumeration or construction would be infinite without a bound."""


@dataclass(frozen=True)
class Tree:
    children: tuple | None = None

    @property
    def is_leaf(self) -> bool:
        return self.children is None

    @property
    def arity(self) -> int:
        return 0 if self.children is None else len(self.children)

    def __str__(self) -> str:
        return to_str(self)

    def __repr__(self) -> str:
        return f"Tree({to_str(self)!r})"

    def __call__(self, *subs: "Tree") -> "Tree":
        return graft(self, list(subs))


LEAF = Tree(None)
U = LEAF


def node(*children: Tree) -> Tree:
    return Tree(tuple(children))


def corolla(n: int) -> Tree:
    return Tree((LEAF,) * n)


@lru_cache(maxsize=None)
def to_str(t: Tree) -> str:
    if t.children is None:
        return "*"
    return "(" + "".join(to_str(c) for c in t.children) + ")"


def parse(s: str) -> Tree:
    s = "".join(s.split())
    pos = 0

    def go() -> Tree:
        nonlocal pos
        if pos >= len(s):
            raise ValueError("unexpected end of tree string")
        ch = s[pos]
        if ch == "*":
            pos += 1
            return LEAF
        if ch != "(":
            raise ValueError(f"unexpected character {ch!r} at {pos}")
        pos += 1
        kids = []
        while pos < len(s) and s[pos] != ")":
            kids.append(go())
        if pos >= len(s):
            raise ValueError("unbalanced parentheses")
        pos += 1
        return Tree(tuple(kids))

    t = go()
    if pos != len(s):
        raise ValueError(f"trailing characters after position {pos}")
    return t


# ---------------------------------------------------------------------------
# Basic queries


@lru_cache(maxsize=None)
def n_leaves(t: Tree) -> int:
    if t.children is None:
        return 1
    return sum(n_leaves(c) for c in t.children)


@lru_cache(maxsize=None)
def n_inner(t: Tree) -> int:
    if t.children is None:
        return 0
    return 1 + sum(n_inner(c) for c in t.children)


def subtree(t: Tree, addr: Addr) -> Tree:
    for k in addr:
        if t.children is None or not 1 <= k <= len(t.children):
            raise KeyError(f"address {addr} does not resolve")
        t = t.children[k - 1]
    return t


def vertices(t: Tree) -> list[tuple[Addr, bool]]:
    """All non-root vertices in path order, as ``(addr, is_leaf)``."""
    out: list = []

    def go(s: Tree, addr: Addr):
        out.append((addr, s.children is None))
        if s.children is not None:
            for k, c in enumerate(s.children, 1):
                go(c, addr + (k,))

    go(t, ())
    return out


@lru_cache(maxsize=None)
def inner_vertices(t: Tree) -> tuple:
    """``(addr, arity, level)`` for each inner vertex, in path order."""
    return tuple((a, subtree(t, a).arity, len(a) + 1) for a, leaf in vertices(t) if not leaf)


@lru_cache(maxsize=None)
def inner_index(t: Tree) -> dict:
    """Position of each inner vertex in path order."""
    return {a: i for i, (a, _, _) in enumerate(inner_vertices(t))}


@lru_cache(maxsize=None)
def leaf_addrs(t: Tree) -> tuple:
    return tuple(a for a, leaf in vertices(t) if leaf)


def level(addr: Addr) -> int:
    return len(addr) + 1


def height(t: Tree) -> int:
    if t.children is None:
        return 0
    return 1 + max((height(c) for c in t.children), default=0)


# ---------------------------------------------------------------------------
# Grafting


def graft(t: Tree, subs: Sequence[Tree]) -> Tree:
    """``T(T₁,…,Tₙ)``: put ``subs[i]`` on the i-th leaf of ``t``."""
    subs = list(subs)
    pos = 0

    def go(s: Tree) -> Tree:
        nonlocal pos
        if s.children is None:
            if pos == len(subs):
                raise ArityMismatch(f"tree has more than {len(subs)} leaves")
            pos += 1
            return subs[pos - 1]
        return Tree(tuple(go(c) for c in s.children))

    out = go(t)
    if pos != len(subs):
        raise ArityMismatch(f"tree has {pos} leaves but {len(subs)} trees were given")
    return out


def circ_i_tree(t: Tree, i: int, s: Tree) -> Tree:
    n = n_leaves(t)
    if not 1 <= i <= n:
        raise IndexError(f"slot {i} out of range 1..{n}")
    subs = [LEAF] * n
    subs[i - 1] = s
    return graft(t, subs)


# ---------------------------------------------------------------------------
# Edges and contractions


@dataclass(frozen=True)
class EdgeRef:
    """An edge, named by the address of its upper endpoint."""

    upper: Addr

    def __post_init__(self):
        object.__setattr__(self, "upper", tuple(self.upper))


def is_inner_edge(t: Tree, e: EdgeRef) -> bool:
    if not e.upper:
        return False
    try:
        return not subtree(t, e.upper).is_leaf
    except KeyError:
        return False


def inner_edges(t: Tree) -> list[EdgeRef]:
    return [EdgeRef(a) for a, _, _ in inner_vertices(t) if a]


def contract_map(t: Tree, edges: Iterable[EdgeRef]) -> tuple[Tree, dict]:
    """Contract a set of inner edges.

    Returns the quotient tree and the map sending each inner vertex address of
    ``t`` to the address of its image.  The merged vertex keeps the planar
    position of its lowest member; the children of a contracted upper vertex
    replace the corresponding slot of the lower one.
    """
    K = set()
    for e in edges:
        e = e if isinstance(e, EdgeRef) else EdgeRef(e)
        if not is_inner_edge(t, e):
            raise NotInnerEdge(f"edge above {e.upper} is not an inner edge")
        K.add(e.upper)
    vmap: dict = {}

    def build(s: Tree, addr: Addr, new_addr: Addr) -> Tree:
        if s.children is None:
            return s
        kids: list = []
        flatten(s, addr, new_addr, kids)
        return Tree(tuple(kids))

    def flatten(s: Tree, addr: Addr, new_addr: Addr, kids: list) -> None:
        vmap[addr] = new_addr
        for k, c in enumerate(s.children, 1):
            ca = addr + (k,)
            if ca in K:
                flatten(c, ca, new_addr, kids)
            else:
                kids.append(build(c, ca, new_addr + (len(kids) + 1,)))

    return build(t, (), ()), vmap


def contract(t: Tree, e: EdgeRef) -> Tree:
    return contract_map(t, [e])[0]


def contract_set(t: Tree, edges: Iterable[EdgeRef]) -> Tree:
    return contract_map(t, edges)[0]


def image_edges(t: Tree, K: Iterable[EdgeRef], others: Iterable[EdgeRef]) -> list[EdgeRef]:
    """Images in ``t/K`` of inner edges of ``t`` not in ``K``."""
    _, vmap = contract_map(t, K)
    return [EdgeRef(vmap[e.upper]) for e in others]


@dataclass(frozen=True)
class TreeMorphism:
    domain: Tree
    contracted: frozenset

    def __post_init__(self):
        es = frozenset(e if isinstance(e, EdgeRef) else EdgeRef(e) for e in self.contracted)
        object.__setattr__(self, "contracted", es)
        for e in es:
            if not is_inner_edge(self.domain, e):
                raise NotInnerEdge(str(e))

    @property
    def codomain(self) -> Tree:
        return contract_set(self.domain, self.contracted)


def collapse(t: Tree) -> Tree:
    """Contract every inner edge: C_n, or U when ``t`` is U."""
    return contract_set(t, inner_edges(t))


# ---------------------------------------------------------------------------
# Stars and links


def _check_inner(t: Tree, v: Addr) -> Tree:
    s = subtree(t, v)
    if s.is_leaf:
        raise ValueError(f"{v} is a leaf, not an inner vertex")
    return s


def star(t: Tree, v: Addr) -> list[EdgeRef]:
    """Edges containing ``v``: its outgoing edge, then incoming edges in order."""
    s = _check_inner(t, v)
    return [EdgeRef(v)] + [EdgeRef(v + (k,)) for k in range(1, s.arity + 1)]


def link(t: Tree, v: Addr) -> list[Addr | None]:
    """Adjacent vertices in path order; ``None`` stands for the root."""
    s = _check_inner(t, v)
    parent = v[:-1] if v else None
    return [parent] + [v + (k,) for k in range(1, s.arity + 1)]


def _check_star_inner(t: Tree, v: Addr) -> Tree:
    s = _check_inner(t, v)
    if not v:
        raise RootInStar("the star of the top vertex contains the root edge")
    if any(c.is_leaf for c in s.children):
        raise NotInnerEdge(f"the star of {v} contains a leaf edge")
    return s


def extended_star(t: Tree, v: Addr) -> Tree:
    """The tree with inner part St(v), planted on the outgoing edge of v's parent."""
    s = _check_star_inner(t, v)
    p = subtree(t, v[:-1])
    mid = Tree(tuple(corolla(c.arity) for c in s.children))
    kids = [LEAF] * p.arity
    kids[v[-1] - 1] = mid
    return Tree(tuple(kids))


def r_of(t: Tree, v: Addr) -> int:
    """``(Σ_{w ∈ Lk(v)} val(w)) − 1``, the arity of the merged vertex."""
    s = _check_star_inner(t, v)
    p = subtree(t, v[:-1])
    return p.arity + sum(c.arity for c in s.children) - 1


def contract_star(t: Tree, v: Addr) -> tuple[Tree, dict]:
    """``T/St(v)`` and the vertex map."""
    s = _check_star_inner(t, v)
    edges = [EdgeRef(v)] + [EdgeRef(v + (k,)) for k in range(1, s.arity + 1)]
    return contract_map(t, edges)


# ---------------------------------------------------------------------------
# Corolla decompositions


Expr = tuple  # ("U",) or ("C", n, (subexprs…))


def decompose_into_corollas(t: Tree, memo: dict | None = None) -> Expr:
    """``t`` as nested grafts of corollas onto U.

    ``memo`` (keyed by object identity) lets callers that walk many trees
    sharing subtrees decompose each shared subtree once.
    """
    if memo is not None:
        hit = memo.get(id(t))
        if hit is not None:
            return hit
    if t.children is None:
        e = ("U",)
    else:
        e = ("C", t.arity, tuple(decompose_into_corollas(c, memo) for c in t.children))
    if memo is not None:
        memo[id(t)] = e
    return e


def evaluate_decomposition(e: Expr, memo: dict | None = None) -> Tree:
    """Graft the corollas of ``e`` back together (``memo`` as above)."""
    if memo is not None:
        hit = memo.get(id(e))
        if hit is not None:
            return hit
    if e[0] == "U":
        t = LEAF
    else:
        _, n, subs = e
        t = graft(corolla(n), [evaluate_decomposition(s, memo) for s in subs])
    if memo is not None:
        memo[id(e)] = t
    return t


def format_decomposition(e: Expr) -> str:
    """E.g. ``C2(U,C3(C3,C0,U))``; ``Cₙ(U,…,U)`` is abbreviated to ``Cₙ``."""
    if e[0] == "U":
        return "U"
    _, n, subs = e
    if all(s[0] == "U" for s in subs):
        return f"C{n}"
    return f"C{n}(" + ",".join(format_decomposition(s) for s in subs) + ")"


# ---------------------------------------------------------------------------
# Enumeration


def _sort_key(t: Tree):
    return (n_inner(t), to_str(t))


def enumerate_trees(n_leaves: int, arity_support: Iterable[int],
                    max_inner: int | None = None) -> list[Tree]:
    """All trees with ``n_leaves`` leaves and inner arities in the support."""
    support = frozenset(arity_support)
    if max_inner is None:
        if 0 in support or 1 in support:
            raise TruncationRequired("arities 0 or 1 give infinitely many trees; pass max_inner")
        max_inner = max(n_leaves - 1, 0)
    out: list[Tree] = []
    for k in range(max_inner + 1):
        out.extend(_trees_exact(n_leaves, k, support))
    return sorted(out, key=_sort_key)


@lru_cache(maxsize=None)
def _trees_exact(n: int, k: int, support: frozenset) -> tuple:
    if k == 0:
        return (LEAF,) if n == 1 else ()
    out = []
    for a in sorted(support):
        for kids in _forests(a, n, k - 1, support):
            out.append(Tree(kids))
    return tuple(out)


@lru_cache(maxsize=None)
def _forests(a: int, n: int, k: int, support: frozenset) -> tuple:
    """Ordered ``a``-tuples of trees with ``n`` leaves and ``k`` inner vertices in total."""
    if a == 0:
        return ((),) if n == 0 and k == 0 else ()
    out = []
    for n1 in range(n + 1):
        for k1 in range(k + 1):
            if 0 not in support and n1 == 0:
                continue
            heads = _trees_exact(n1, k1, support)
            if not heads:
                continue
            rests = _forests(a - 1, n - n1, k - k1, support)
            for h in heads:
                for r in rests:
                    out.append((h,) + r)
    return tuple(out)


def enumerate_even_level_trees(n: int, t: int, even_support: Iterable[int] | None,
                               odd_support: Iterable[int] | None = None) -> list[Tree]:
    """Trees with leaves at even levels and exactly ``t`` even inner vertices.

    Odd inner arities are bounded by ``n + t`` when ``odd_support`` is None.
    """
    if t < 1:
        raise ValueError("the number of even inner vertices must be at least 1")
    if even_support is None:
        raise TruncationRequired("even arities must be bounded")
    ev = frozenset(even_support)
    od = None if odd_support is None else frozenset(odd_support)
    return sorted(_odd_trees(n, t, ev, od), key=_sort_key)


def _odd_arities(n: int, t: int, od):
    cap = n + t
    if od is None:
        return range(cap + 1)
    return sorted(a for a in od if a <= cap)


@lru_cache(maxsize=None)
def _odd_trees(n: int, t: int, ev: frozenset, od) -> tuple:
    out = []
    for a in _odd_arities(n, t, od):
        for kids in _odd_children(a, n, t, ev, od):
            out.append(Tree(kids))
    return tuple(out)


@lru_cache(maxsize=None)
def _odd_children(a: int, n: int, t: int, ev, od) -> tuple:
    """Children of an odd vertex: leaves or even inner vertices."""
    if a == 0:
        return ((),) if n == 0 and t == 0 else ()
    out = []
    # a leaf child
    if n >= 1:
        for r in _odd_children(a - 1, n - 1, t, ev, od):
            out.append((LEAF,) + r)
    for n1 in range(n + 1):
        for t1 in range(1, t + 1):
            heads = _even_trees(n1, t1, ev, od)
            if not heads:
                continue
            rests = _odd_children(a - 1, n - n1, t - t1, ev, od)
            for h in heads:
                for r in rests:
                    out.append((h,) + r)
    return tuple(out)


@lru_cache(maxsize=None)
def _even_trees(n: int, t: int, ev, od) -> tuple:
    if t < 1:
        return ()
    out = []
    for b in sorted(ev):
        for kids in _even_children(b, n, t - 1, ev, od):
            out.append(Tree(kids))
    return tuple(out)


@lru_cache(maxsize=None)
def _even_children(b: int, n: int, t: int, ev, od) -> tuple:
    """Children of an even vertex: odd inner vertices only."""
    if b == 0:
        return ((),) if n == 0 and t == 0 else ()
    out = []
    for n1 in range(n + 1):
        for t1 in range(t + 1):
            heads = _odd_trees(n1, t1, ev, od)
            if not heads:
                continue
            rests = _even_children(b - 1, n - n1, t - t1, ev, od)
            for h in heads:
                for r in rests:
                    out.append((h,) + r)
    return tuple(out)


def parity_split(t: Tree) -> tuple[list[Addr], list[Addr]]:
    """Even and odd inner vertices, each in path order."""
    ev, od = [], []
    for a, _, lev in inner_vertices(t):
        (ev if lev % 2 == 0 else od).append(a)
    return ev, od


def leaves_even(t: Tree) -> bool:
    return all(len(a) % 2 == 1 for a in leaf_addrs(t))


# ---------------------------------------------------------------------------
# Rendering


def render(t: Tree) -> str:
    """ASCII picture, root at the top, with parity marks on inner vertices.

    ``o`` marks odd-level inner vertices, ``#`` even-level ones and ``|`` a
    leaf.  U is drawn as a bare edge, which distinguishes it from C₁ chains.
    """
    if t.is_leaf:
        return "root\n|\n| (bare edge: U)"
    lines = ["root"]

    def go(s: Tree, addr: Addr, prefix: str, last: bool):
        branch = "`-- " if last else "|-- "
        if s.is_leaf:
            lines.append(prefix + branch + "| leaf")
            return
        mark = "#" if len(addr) % 2 == 1 else "o"
        lines.append(prefix + branch + f"{mark} arity {s.arity}")
        ext = "    " if last else "|   "
        for k, c in enumerate(s.children, 1):
            go(c, addr + (k,), prefix + ext, k == s.arity)

    go(t, (), "", True)
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# Random trees and the structural self-check


def random_tree(rng, n_inner: int, arities: Sequence[int]) -> Tree:
    """A random tree with exactly ``n_inner`` inner vertices.

    The root arity is drawn from ``arities`` and the remaining vertices are
    spread over its children by a uniformly random weak composition.  Arity 0
    is required when ``n_inner`` can only be placed that way.
    """
    if n_inner == 0:
        return LEAF
    choices = [a for a in arities if a > 0 or n_inner == 1]
    if n_inner > 1:
        choices = [a for a in choices if a > 0]
    if not choices:
        raise ValueError("arity support cannot realise this many inner vertices")
    a = rng.choice(sorted(choices))
    rest = n_inner - 1
    cuts = sorted(rng.randint(0, rest) for _ in range(a - 1))
    parts = [hi - lo for lo, hi in zip([0] + cuts, cuts + [rest])] if a else []
    return Tree(tuple(random_tree(rng, k, arities) for k in parts))


def all_trees_by_inner(max_inner: int, arities: Iterable[int]) -> list[Tree]:
    """Every tree with at most ``max_inner`` inner vertices and the given arities."""
    sup = sorted(set(arities))
    by_k: list[list[Tree]] = [[LEAF]]
    for k in range(1, max_inner + 1):
        out = []
        for a in sup:
            for split in _weak_compositions(k - 1, a):
                out.extend(Tree(kids) for kids in itertools.product(*[by_k[j] for j in split]))
        by_k.append(out)
    return [t for lst in by_k for t in lst]


def _weak_compositions(total: int, parts: int):
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(total + 1):
        for rest in _weak_compositions(total - first, parts - 1):
            yield (first,) + rest


def check_contraction_pair(t: Tree, e: EdgeRef, f: EdgeRef) -> bool:
    """Contracting ``e`` then the image of ``f`` equals contracting ``{e, f}``.

    Both the quotient trees and the composite vertex maps must agree.
    """
    t1, m1 = contract_map(t, [e])
    (f1,) = image_edges(t, [e], [f])
    t2, m2 = contract_map(t1, [f1])
    both, m = contract_map(t, [e, f])
    if t2 != both:
        return False
    return all(m2[m1[v]] == m[v] for v in m)


def roundtrip_census(max_inner: int, arities: Iterable[int]) -> tuple[int, list[Tree]]:
    """Decompose every tree into corollas and graft it back.

    Trees are generated bottom-up and both directions are memoized on shared
    subtrees, so each tree costs work proportional to its root arity.  The
    largest level is streamed rather than stored.  Returns the number of trees
    checked and the failures.
    """
    # trees hold no reference cycles, so the collector's full-heap passes over
    # millions of live nodes are pure overhead here
    was_enabled = gc.isenabled()
    gc.disable()
    try:
        return _census(sorted(set(arities)), max_inner)
    finally:
        if was_enabled:
            gc.enable()


def _census(sup: list, max_inner: int) -> tuple[int, list[Tree]]:
    dmemo: dict = {}
    ememo: dict = {}
    levels: list[list[Tree]] = [[LEAF]]
    count, bad = 0, []
    for t in levels[0]:
        count += 1
        if evaluate_decomposition(decompose_into_corollas(t, dmemo), ememo) != t:
            bad.append(t)
    for k in range(1, max_inner + 1):
        keep = k < max_inner
        out: list[Tree] = []
        for a in sup:
            for split in _weak_compositions(k - 1, a):
                for kids in itertools.product(*[levels[j] for j in split]):
                    t = Tree(kids)
                    e = decompose_into_corollas(t, dmemo)
                    r = evaluate_decomposition(e, ememo)
                    count += 1
                    if r != t:
                        bad.append(t)
                    elif keep:
                        # r equals t, so parents may reuse t itself; their
                        # comparisons then stop at identical children
                        ememo[id(e)] = t
                    if keep:
                        out.append(t)
                    else:  # t dies after this iteration; its id may be reused
                        del dmemo[id(t)], ememo[id(e)]
        levels.append(out)
    return count, bad
