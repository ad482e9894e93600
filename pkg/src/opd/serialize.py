"""JSON encodings of the domain values.

Scalars are strings ``"p/q"`` or ``"p"`` (plain ints are accepted on input).
A linear map is stored densely, row-major with one row per target dimension.
Every parse error is a :class:`SchemaError` whose ``path`` names the
offending field, e.g. ``$.circ["2,1,2"].entries[0][1]``.

Operads can also be named instead of spelled out: ``{"builtin": "ass"}``,
``{"builtin": "unit"}`` or ``{"builtin": "free", "gens": {"2": 1}}``.
"""

from __future__ import annotations

import json
from typing import Any

from . import trees as tr
from .algebra import Algebra, SGraph, SGraphMap, power_layout
from .exactcat import LinMap, Space, format_scalar, parse_scalar, scalar, tensor_objs
from .operad import (
    Operad,
    OperadMap,
    SeqMap,
    Sequence,
    ass_operad,
    circ_keys,
    free_operad,
    unit_operad,
)
from .opcolim import PushoutProblem


class SchemaError(ValueError):
    def __init__(self, path: str, msg: str):
        super().__init__(f"{path}: {msg}")
        self.path = path
        self.msg = msg


def _need(d: Any, key: str, path: str):
    if not isinstance(d, dict):
        raise SchemaError(path, "expected an object")
    if key not in d:
        raise SchemaError(f"{path}.{key}", "missing field")
    return d[key]


def _int(x: Any, path: str, lo: int = 0) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        if isinstance(x, str) and x.strip().lstrip("-").isdigit():
            x = int(x)
        else:
            raise SchemaError(path, f"expected an integer, got {x!r}")
    if x < lo:
        raise SchemaError(path, f"must be >= {lo}")
    return x


def _sub(path: str, key) -> str:
    return f'{path}["{key}"]'


# ---------------------------------------------------------------------------
# scalars, spaces, maps


def dump_scalar(x) -> str:
    return format_scalar(x)


def load_scalar(x: Any, path: str = "$"):
    if isinstance(x, bool) or isinstance(x, float):
        raise SchemaError(path, f"not an exact rational: {x!r}")
    try:
        return scalar(x)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise SchemaError(path, f"bad rational {x!r} ({exc})") from None


def dump_space(s: Space) -> dict:
    out: dict = {"dim": s.dim}
    if s.labels is not None:
        out["labels"] = list(s.labels)
    return out


def load_space(d: Any, path: str = "$") -> Space:
    if isinstance(d, int) and not isinstance(d, bool):
        return Space(_int(d, path))
    dim = _int(_need(d, "dim", path), f"{path}.dim")
    labels = d.get("labels")
    try:
        return Space(dim, tuple(labels) if labels is not None else None)
    except ValueError as exc:
        raise SchemaError(f"{path}.labels", str(exc)) from None


def dump_linmap(f: LinMap) -> dict:
    return {"source": dump_space(f.source), "target": dump_space(f.target),
            "entries": [[dump_scalar(x) for x in row] for row in f.entries()]}


def load_linmap(d: Any, path: str = "$", source: Space | None = None,
                target: Space | None = None) -> LinMap:
    if source is None:
        source = load_space(_need(d, "source", path), f"{path}.source")
    elif isinstance(d, dict) and "source" in d:
        if load_space(d["source"], f"{path}.source").dim != source.dim:
            raise SchemaError(f"{path}.source", f"expected dimension {source.dim}")
    if target is None:
        target = load_space(_need(d, "target", path), f"{path}.target")
    elif isinstance(d, dict) and "target" in d:
        if load_space(d["target"], f"{path}.target").dim != target.dim:
            raise SchemaError(f"{path}.target", f"expected dimension {target.dim}")
    rows = _need(d, "entries", path)
    if not isinstance(rows, list) or len(rows) != target.dim:
        raise SchemaError(f"{path}.entries", f"expected {target.dim} rows")
    cols: list = [{} for _ in range(source.dim)]
    for i, row in enumerate(rows):
        rp = f"{path}.entries[{i}]"
        if not isinstance(row, list) or len(row) != source.dim:
            raise SchemaError(rp, f"expected {source.dim} entries")
        for j, x in enumerate(row):
            v = load_scalar(x, f"{rp}[{j}]")
            if v:
                cols[j][i] = v
    return LinMap(source, target, tuple(cols))


# ---------------------------------------------------------------------------
# sequences and operads


def dump_sequence(s: Sequence) -> dict:
    return {str(n): dump_space(s[n]) for n in s.arities()}


def load_sequence(d: Any, path: str = "$") -> Sequence:
    if not isinstance(d, dict):
        raise SchemaError(path, "expected an object keyed by arity")
    sup = {}
    for k, v in d.items():
        n = _int(k, _sub(path, k))
        sp = load_space(v, _sub(path, k))
        if sp.dim:
            sup[n] = sp
    return Sequence(sup)


def dump_seqmap(f: SeqMap, upto: int | None = None) -> dict:
    ar = sorted(set(f.source.arities()) & set(f.target.arities()))
    if upto is not None:
        ar = [n for n in ar if n <= upto]
    return {"source": dump_sequence(f.source), "target": dump_sequence(f.target),
            "components": {str(n): dump_linmap(f[n]) for n in ar if not f[n].is_zero()}}


def load_seqmap(d: Any, path: str = "$", source: Sequence | None = None,
                target: Sequence | None = None) -> SeqMap:
    if source is None:
        source = load_sequence(_need(d, "source", path), f"{path}.source")
    if target is None:
        target = load_sequence(_need(d, "target", path), f"{path}.target")
    comps = {}
    raw = d.get("components", {}) if isinstance(d, dict) else {}
    for k, v in raw.items():
        p = _sub(f"{path}.components", k)
        n = _int(k, p)
        comps[n] = load_linmap(v, p, source[n], target[n])
    return SeqMap(source, target, comps)


def dump_operad(o: Operad) -> dict:
    circ = {}
    for (m, i, n) in circ_keys(o.max_arity):
        c = o.circ_i(m, i, n)
        if c.source.dim and c.target.dim:
            circ[f"{m},{i},{n}"] = dump_linmap(c)
    return {"name": o.name, "max_arity": o.max_arity, "seq": dump_sequence(o.seq),
            "unit": dump_linmap(o.unit), "circ": circ}


def _circ_key(k: str, path: str) -> tuple:
    parts = k.split(",")
    if len(parts) != 3:
        raise SchemaError(path, "key must be 'm,i,n'")
    return tuple(_int(p.strip(), path) for p in parts)


def load_operad(d: Any, path: str = "$", max_arity: int | None = None) -> Operad:
    if isinstance(d, dict) and "builtin" in d:
        return _builtin_operad(d, path, max_arity)
    top = _int(_need(d, "max_arity", path), f"{path}.max_arity")
    if max_arity is not None and max_arity > top:
        raise SchemaError(f"{path}.max_arity", f"operad is only valid up to arity {top}")
    seq = load_sequence(_need(d, "seq", path), f"{path}.seq")
    unit = load_linmap(_need(d, "unit", path), f"{path}.unit", Space(1), seq[1])
    circ = {}
    for k, v in (d.get("circ") or {}).items():
        p = _sub(f"{path}.circ", k)
        m, i, n = _circ_key(k, p)
        if not 1 <= i <= m or m + n - 1 > top:
            raise SchemaError(p, "composition outside the declared arity range")
        circ[(m, i, n)] = load_linmap(v, p, tensor_objs([seq[m], seq[n]]), seq[m + n - 1])
    return Operad(seq, unit, circ, top, name=str(d.get("name", "")))


def _builtin_operad(d: dict, path: str, max_arity: int | None) -> Operad:
    kind = d["builtin"]
    top = d.get("max_arity", max_arity if max_arity is not None else 5)
    top = _int(top, f"{path}.max_arity")
    if kind == "ass":
        return ass_operad(max_arity=top)
    if kind == "unit":
        return unit_operad(top)
    if kind == "free":
        gens = load_sequence(_need(d, "gens", path), f"{path}.gens")
        w = d.get("w_max")
        return free_operad(gens, top, None if w is None else _int(w, f"{path}.w_max"))
    raise SchemaError(f"{path}.builtin", f"unknown operad {kind!r} (ass, unit, free)")


def dump_operad_map(f: OperadMap) -> dict:
    top = min(f.source.max_arity, f.target.max_arity)
    return {"components": {str(n): dump_linmap(f[n]) for n in range(top + 1)
                           if f.source[n].dim and f.target[n].dim}}


def load_operad_map(d: Any, source: Operad, target: Operad, path: str = "$") -> OperadMap:
    comps = {}
    for k, v in (_need(d, "components", path) or {}).items():
        p = _sub(f"{path}.components", k)
        n = _int(k, p)
        comps[n] = load_linmap(v, p, source[n], target[n])
    return OperadMap(source, target, comps)


def load_problem(d: Any, path: str = "$") -> PushoutProblem:
    """``{"o": Operad, "u": seq, "v": seq, "f": {n: map}, "gbar": {n: map}}``."""
    o = load_operad(_need(d, "o", path), f"{path}.o")
    u = load_sequence(d.get("u", {}), f"{path}.u")
    v = load_sequence(_need(d, "v", path), f"{path}.v")
    f = load_seqmap({"components": d.get("f", {})}, f"{path}.f", u, v)
    g = load_seqmap({"components": d.get("gbar", {})}, f"{path}.gbar", u, o.seq)
    return PushoutProblem(f, g, o)


def dump_problem(p: PushoutProblem) -> dict:
    return {"o": dump_operad(p.o), "u": dump_sequence(p.u), "v": dump_sequence(p.v),
            "f": dump_seqmap(p.f)["components"], "gbar": dump_seqmap(p.gbar)["components"]}


# ---------------------------------------------------------------------------
# S-graphs and algebras


def _pair(k: str, path: str, objects: tuple) -> tuple:
    parts = [p.strip() for p in k.split(",")]
    if len(parts) != 2:
        raise SchemaError(path, "key must be 'x,y'")
    for p in parts:
        if p not in objects:
            raise SchemaError(path, f"unknown object {p!r}")
    return tuple(parts)


def dump_sgraph(g: SGraph) -> dict:
    return {"objects": list(g.objects),
            "hom": {f"{x},{y}": dump_space(g[(x, y)]) for (x, y) in g.pairs() if g[(x, y)].dim}}


def load_sgraph(d: Any, path: str = "$") -> SGraph:
    objs = _need(d, "objects", path)
    if not isinstance(objs, list) or not all(isinstance(x, str) for x in objs):
        raise SchemaError(f"{path}.objects", "expected a list of names")
    if len(set(objs)) != len(objs):
        raise SchemaError(f"{path}.objects", "object names must be distinct")
    objs = tuple(objs)
    hom = {}
    for k, v in (d.get("hom") or {}).items():
        p = _sub(f"{path}.hom", k)
        hom[_pair(k, p, objs)] = load_space(v, p)
    return SGraph(objs, hom)


def dump_sgraph_map(f: SGraphMap) -> dict:
    return {"components": {f"{x},{y}": dump_linmap(f[(x, y)]) for (x, y) in f.source.pairs()
                           if f.source[(x, y)].dim and f.target[(x, y)].dim}}


def load_sgraph_map(d: Any, source: SGraph, target: SGraph, path: str = "$") -> SGraphMap:
    comps = {}
    for k, v in (_need(d, "components", path) or {}).items():
        p = _sub(f"{path}.components", k)
        xy = _pair(k, p, source.objects)
        comps[xy] = load_linmap(v, p, source[xy], target[xy])
    return SGraphMap(source, target, comps)


def dump_algebra(a: Algebra) -> dict:
    nu = {}
    for n in range(a.max_arity + 1):
        comps = {}
        for xy in a.carrier.pairs():
            f = a.nu_map(n, xy)
            if f.source.dim and f.target.dim and not f.is_zero():
                comps[f"{xy[0]},{xy[1]}"] = dump_linmap(f)
        if comps:
            nu[str(n)] = comps
    out = {"operad": dump_operad(a.operad), "carrier": dump_sgraph(a.carrier),
           "max_arity": a.max_arity, "nu": nu}
    if a.truncated:
        out["partial"] = {str(n): {f"{x},{y}": sorted(cols) for (x, y), cols in d.items() if cols}
                          for n, d in a.partial.items() if any(d.values())}
    return out


def load_algebra(d: Any, path: str = "$") -> Algebra:
    o = load_operad(_need(d, "operad", path), f"{path}.operad")
    carrier = load_sgraph(_need(d, "carrier", path), f"{path}.carrier")
    top = _int(d.get("max_arity", o.max_arity), f"{path}.max_arity")
    if top > o.max_arity:
        raise SchemaError(f"{path}.max_arity", "exceeds the operad's max_arity")
    nu: dict = {}
    for nk, comps in (d.get("nu") or {}).items():
        pn = _sub(f"{path}.nu", nk)
        n = _int(nk, pn)
        if n > top:
            raise SchemaError(pn, "arity beyond max_arity")
        lay = power_layout(carrier, n)
        nu[n] = {}
        for k, v in comps.items():
            p = _sub(pn, k)
            xy = _pair(k, p, carrier.objects)
            src = tensor_objs([o.seq[n], lay.graph[xy]])
            nu[n][xy] = load_linmap(v, p, src, carrier[xy])
    partial: dict = {}
    for nk, comps in (d.get("partial") or {}).items():
        pn = _sub(f"{path}.partial", nk)
        partial[_int(nk, pn)] = {_pair(k, _sub(pn, k), carrier.objects): set(v)
                                 for k, v in comps.items()}
    return Algebra(o, carrier, nu, top, partial=partial)


# ---------------------------------------------------------------------------
# trees and generic helpers


def dump_tree(t: tr.Tree) -> dict:
    return {"tree": tr.to_str(t)}


def load_tree(d: Any, path: str = "$") -> tr.Tree:
    s = _need(d, "tree", path) if isinstance(d, dict) else d
    if not isinstance(s, str):
        raise SchemaError(path, "expected a tree string")
    try:
        return tr.parse(s)
    except ValueError as exc:
        raise SchemaError(path, str(exc)) from None


def parse_rational_text(s: str):
    """Parse a rational given on the command line; rejects ``1/0``."""
    return parse_scalar(s)


def dumps(obj: Any) -> str:
    """Deterministic JSON text (sorted keys, fixed indentation)."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False, default=_default)


def _default(x):
    if isinstance(x, (set, frozenset)):
        return sorted(x, key=repr)
    if isinstance(x, tuple):
        return list(x)
    if isinstance(x, tr.Tree):
        return tr.to_str(x)
    if type(x).__name__ == "mpq":
        return format_scalar(x)
    return repr(x)


def load_file(path: str) -> Any:
    with open(path, encoding="utf-8") as fh:
        try:
            return json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError("$", f"invalid JSON: {exc}") from None
