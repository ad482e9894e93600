"""``opd``: command-line front end.

Verbs are ``<noun> <verb>``::

    opd tree enum --leaves 4 --arities 2
    opd tree render "((**)*)"
    opd tree check --max-inner 5 --samples 200 --seed 0
    opd operad check ass.json --max-arity 4
    opd operad free --gen "2:1" --n-max 5
    opd operad counit ass.json --n-max 3 --w-max 3
    opd operad pushout --problem p.json --n-max 5 --exact
    opd algebra check alg.json
    opd algebra free --operad ass --quiver "x->y,y->z" --p-max 3
    opd algebra pushout --problem p.json --n-max 3 --t-max 3
    opd algebra end --quiver "x->y" --max-arity 3

Operads given as a path are JSON files; the names ``ass`` and ``unit`` select
the built-in operads.  Exit status is 0 on pass (or a truncated pass), 1 when
an identity is violated and 2 on usage or input errors.  Output is JSON with
sorted keys unless ``--format text`` is given.
"""

from __future__ import annotations

import argparse
import random
import sys
from collections import Counter

from . import trees as tr
from .algcolim import algebra_pushout
from .algebra import SGraph, check_algebra, end_operad, free_algebra
from .exactcat import Space
from .opcolim import build_pushout
from .operad import (
    Sequence,
    adjunction_report,
    ass_operad,
    check_operad,
    free_operad,
    unit_operad,
)
from .report import Report
from .serialize import (
    SchemaError,
    dumps,
    load_algebra,
    load_file,
    load_operad,
    load_problem,
    load_sgraph,
    load_sgraph_map,
)


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# argument helpers


def _int_list(s: str) -> list[int]:
    try:
        return [int(x) for x in s.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"expected a comma-separated list of integers, got {s!r}") from None


def _gens(s: str) -> Sequence:
    """``"2:1,0:1"`` → one generator of arity 2 and one of arity 0."""
    sup: dict = {}
    for part in s.split(","):
        part = part.strip()
        if not part:
            continue
        try:
            a, d = part.split(":")
            sup[int(a)] = Space(sup.get(int(a), Space(0)).dim + int(d))
        except ValueError:
            raise UsageError(f"generator spec {part!r} is not 'arity:dim'") from None
    return Sequence(sup)


def _quiver(s: str) -> SGraph:
    """``"x->y,y->z,x->y"``: objects in order of appearance, repeated edges add up."""
    objs: list = []
    count: Counter = Counter()
    for part in s.split(","):
        part = part.strip()
        if not part:
            continue
        if "->" not in part:
            if part not in objs:
                objs.append(part)
            continue
        x, y = (p.strip() for p in part.split("->", 1))
        if not x or not y:
            raise UsageError(f"bad edge {part!r}")
        for o in (x, y):
            if o not in objs:
                objs.append(o)
        count[(x, y)] += 1
    if not objs:
        raise UsageError("empty quiver")
    return SGraph(tuple(objs), {k: Space(v) for k, v in count.items()})


def _operad_arg(name: str, max_arity: int):
    if name == "ass":
        return ass_operad(max_arity=max_arity)
    if name == "unit":
        return unit_operad(max_arity)
    return load_operad(load_file(name), max_arity=max_arity)


def _graph_arg(args) -> SGraph:
    if getattr(args, "quiver", None):
        return _quiver(args.quiver)
    if getattr(args, "graph", None):
        return load_sgraph(load_file(args.graph))
    raise UsageError("give --quiver or --graph")


def _pair_table(g: SGraph) -> dict:
    return {f"{x},{y}": g[(x, y)].dim for (x, y) in g.pairs()}


# ---------------------------------------------------------------------------
# verbs


def tree_enum(args) -> Report:
    """List planted planar trees by number of leaves (grafted corollas)."""
    ars = _int_list(args.arities)
    ts = tr.enumerate_trees(args.leaves, ars, args.max_inner)
    rep = Report(checked=len(ts))
    rep.tables["trees"] = [tr.to_str(t) for t in ts]
    rep.tables["count"] = len(ts)
    if args.format == "text":
        rep.tables["decompositions"] = [tr.format_decomposition(tr.decompose_into_corollas(t))
                                        for t in ts]
    return rep


def tree_render(args) -> Report:
    """Draw a tree and its decomposition into corollas."""
    t = tr.parse(args.tree)
    rep = Report(checked=1)
    rep.tables["tree"] = tr.to_str(t)
    rep.tables["leaves"] = tr.n_leaves(t)
    rep.tables["inner"] = tr.n_inner(t)
    rep.tables["decomposition"] = tr.format_decomposition(tr.decompose_into_corollas(t))
    rep.tables["picture"] = tr.render(t)
    return rep


def tree_check(args) -> Report:
    """Corolla decomposition round trip on all small trees, plus random
    checks that contracting two edges one after the other agrees with
    contracting both at once."""
    ars = _int_list(args.arities)
    rep = Report()
    n, bad = tr.roundtrip_census(args.max_inner, ars)
    rep.checked += n
    for t in bad[:10]:
        rep.fail(identity="graft(decompose(T)) = T", tree=tr.to_str(t))
    rng = random.Random(args.seed)
    done = 0
    while done < args.samples:
        t = tr.random_tree(rng, rng.randint(3, max(3, args.max_inner)), ars)
        es = tr.inner_edges(t)
        if len(es) < 2:
            continue
        e, f = rng.sample(es, 2)
        done += 1
        rep.checked += 1
        if not tr.check_contraction_pair(t, e, f):
            rep.fail(identity="contraction functoriality", tree=tr.to_str(t),
                     edges=[list(e.upper), list(f.upper)])
    rep.tables["census"] = {"trees": n, "contraction samples": done}
    return rep


def operad_check(args) -> Report:
    """Check the unit and associativity relations of the partial compositions."""
    o = _operad_arg(args.operad, args.max_arity)
    if args.max_arity > o.max_arity:
        raise UsageError(f"operad is only defined up to arity {o.max_arity}")
    rep = check_operad(o, args.max_arity)
    rep.tables["dims"] = o.dims(args.max_arity)
    return rep


def operad_free(args) -> Report:
    """Free operad: one summand per tree, decorated by the generators."""
    v = _gens(args.gen)
    f = free_operad(v, args.n_max, args.w_max)
    rep = Report(checked=args.n_max + 1)
    rep.tables["dims"] = {n: f[n].dim for n in range(args.n_max + 1)}
    if args.check:
        rep.merge(check_operad(f))
    if f.weight_bound is not None:
        rep.tables["certificate"] = f"truncated at weight {f.weight_bound}"
    else:
        rep.tables["certificate"] = "exact"
    return rep


def operad_counit(args) -> Report:
    """Unit and counit of the free-operad adjunction: triangle identities and
    the counit's compatibility with compositions."""
    o = _operad_arg(args.operad, args.n_max)
    return adjunction_report(o, args.n_max, args.w_max)


def operad_pushout(args) -> Report:
    """Push-out of an operad along a free map, by attaching tree cells stage by
    stage; prints the per-arity stage dimensions and stabilisation data."""
    prob = load_problem(load_file(args.problem))
    res = build_pushout(prob, args.n_max, args.t_max, exact=args.exact, verify=args.check)
    rep = Report()
    rep.checked = sum(len(s) for s in res.state.stages.values())
    rep.tables["stages"] = {n: d for n, d in res.state.dim_table().items()}
    rep.tables["dims"] = {n: res.p[n].dim for n in range(res.n_max + 1)}
    rep.tables["certificates"] = {n: {"stable_from": c["stable_from"], "exact": c["exact"]}
                                  for n, c in res.certificates.items()}
    if args.check:
        rep.merge(check_operad(res.p))
    if not res.exact and rep.status == "pass":
        rep.status = "truncated"
    return rep


def algebra_check(args) -> Report:
    """Check the unit and composition diagrams of an algebra's structure maps."""
    a = load_algebra(load_file(args.algebra))
    rep = check_algebra(a, args.max_arity)
    rep.tables["dims"] = _pair_table(a.carrier)
    return rep


def algebra_free(args) -> Report:
    """Free algebra: sums of operations applied to strings of generators."""
    o = _operad_arg(args.operad, args.max_arity)
    y = _graph_arg(args)
    fa = free_algebra(o, y, args.p_max, args.max_arity)
    rep = check_algebra(fa) if args.check else Report(checked=1)
    rep.tables["dims"] = _pair_table(fa.carrier)
    rep.tables["certificate"] = fa.meta.get("certificate", "")
    return rep


def algebra_pushout_cmd(args) -> Report:
    """Push-out of an algebra along a free map of S-graphs by cell attachment."""
    d = load_file(args.problem)
    a = _problem_algebra(d, args)
    y = load_sgraph(d.get("y", {"objects": list(a.objects)}), "$.y")
    z = load_sgraph(d.get("z", {"objects": list(a.objects)}), "$.z")
    f = load_sgraph_map({"components": d.get("f", {})}, y, z, "$.f")
    g = load_sgraph_map({"components": d.get("gbar", {})}, y, a.carrier, "$.gbar")
    res = algebra_pushout(a, f, g, args.n_max, args.t_max)
    rep = res.report
    rep.tables["carrier"] = _pair_table(res.algebra.carrier)
    rep.tables["certificate"] = res.certificate
    if args.check:
        rep.merge(check_algebra(res.algebra))
    return rep


def _problem_algebra(d: dict, args):
    if "free" in d:
        spec = d["free"]
        o = _operad_arg(spec.get("operad", "ass"), args.n_max or 3) \
            if isinstance(spec.get("operad", "ass"), str) else \
            load_operad(spec["operad"], "$.free.operad")
        g = load_sgraph(spec["graph"], "$.free.graph")
        return free_algebra(o, g, int(spec.get("p_max", args.n_max or 3)))
    if "algebra" not in d:
        raise SchemaError("$", "need 'algebra' or 'free'")
    return load_algebra(d["algebra"], "$.algebra")


def algebra_end(args) -> Report:
    """Endomorphism operad of an S-graph: hom-objects out of tensor powers."""
    y = _graph_arg(args)
    o = end_operad(y, args.max_arity)
    rep = check_operad(o, args.max_arity) if args.check else Report(checked=1)
    rep.tables["dims"] = o.dims(args.max_arity)
    return rep


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "text"], default="json")
    common.add_argument("--seed", type=int, default=0)

    p = argparse.ArgumentParser(prog="opd", description="Exact computations with "
                                "non-symmetric operads and their algebras.")
    nouns = p.add_subparsers(dest="noun", required=True)

    t = nouns.add_parser("tree", help="planted planar trees").add_subparsers(dest="verb",
                                                                              required=True)
    s = t.add_parser("enum", parents=[common], help=tree_enum.__doc__)
    s.add_argument("--leaves", type=int, required=True)
    s.add_argument("--arities", default="2")
    s.add_argument("--max-inner", type=int, default=None)
    s.set_defaults(fn=tree_enum)
    s = t.add_parser("render", parents=[common], help=tree_render.__doc__)
    s.add_argument("tree")
    s.set_defaults(fn=tree_render)
    s = t.add_parser("check", parents=[common], help="tree round trips and contractions")
    s.add_argument("--max-inner", type=int, default=5)
    s.add_argument("--arities", default="0,1,2,3")
    s.add_argument("--samples", type=int, default=200)
    s.set_defaults(fn=tree_check)

    o = nouns.add_parser("operad", help="operads").add_subparsers(dest="verb", required=True)
    s = o.add_parser("check", parents=[common], help=operad_check.__doc__)
    s.add_argument("operad", help="JSON file, or 'ass' / 'unit'")
    s.add_argument("--max-arity", type=int, default=4)
    s.set_defaults(fn=operad_check)
    s = o.add_parser("free", parents=[common], help=operad_free.__doc__)
    s.add_argument("--gen", required=True, help="generators as 'arity:dim,...'")
    s.add_argument("--n-max", type=int, default=5)
    s.add_argument("--w-max", type=int, default=None)
    s.add_argument("--check", action="store_true", help="also run the axiom checker")
    s.set_defaults(fn=operad_free)
    s = o.add_parser("counit", parents=[common], help=operad_counit.__doc__)
    s.add_argument("operad", help="JSON file, or 'ass' / 'unit'")
    s.add_argument("--n-max", type=int, default=3)
    s.add_argument("--w-max", type=int, default=3)
    s.set_defaults(fn=operad_counit)
    s = o.add_parser("pushout", parents=[common], help=operad_pushout.__doc__)
    s.add_argument("--problem", required=True)
    s.add_argument("--n-max", type=int, required=True)
    s.add_argument("--t-max", type=int, default=None)
    s.add_argument("--exact", action="store_true")
    s.add_argument("--check", action="store_true")
    s.set_defaults(fn=operad_pushout)

    a = nouns.add_parser("algebra", help="algebras over operads").add_subparsers(
        dest="verb", required=True)
    s = a.add_parser("check", parents=[common], help=algebra_check.__doc__)
    s.add_argument("algebra")
    s.add_argument("--max-arity", type=int, default=None)
    s.set_defaults(fn=algebra_check)
    s = a.add_parser("free", parents=[common], help=algebra_free.__doc__)
    s.add_argument("--operad", default="ass")
    s.add_argument("--quiver")
    s.add_argument("--graph")
    s.add_argument("--p-max", type=int, default=3)
    s.add_argument("--max-arity", type=int, default=3)
    s.add_argument("--check", action="store_true")
    s.set_defaults(fn=algebra_free)
    s = a.add_parser("pushout", parents=[common], help=algebra_pushout_cmd.__doc__)
    s.add_argument("--problem", required=True)
    s.add_argument("--n-max", type=int, default=None)
    s.add_argument("--t-max", type=int, default=None)
    s.add_argument("--check", action="store_true")
    s.set_defaults(fn=algebra_pushout_cmd)
    s = a.add_parser("end", parents=[common], help=algebra_end.__doc__)
    s.add_argument("--quiver")
    s.add_argument("--graph")
    s.add_argument("--max-arity", type=int, default=3)
    s.add_argument("--check", action="store_true")
    s.set_defaults(fn=algebra_end)
    return p


def run(argv: list[str] | None = None, out=None) -> int:
    """Run one command; returns the exit status."""
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        rep = args.fn(args)
    except (UsageError, SchemaError, tr.TruncationRequired, ValueError, OSError) as exc:
        print(f"opd: error: {exc}", file=sys.stderr)
        return 2
    if args.format == "text":
        print(_text(rep), file=out)
    else:
        print(dumps(rep.to_json()), file=out)
    return 1 if rep.status == "fail" else 0


def _text(rep: Report) -> str:
    pic = rep.tables.pop("picture", None)
    body = rep.to_text()
    if pic is not None:
        rep.tables["picture"] = pic
        body += "\n" + pic
    return body


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
