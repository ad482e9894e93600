#!/usr/bin/env python3
"""Print the dimension tables behind the main constructions.

* free operads on a few generator sequences, next to an independent tree count;
* the stage-by-stage dimensions of an operad push-out along a split cell;
* the carrier of an algebra push-out that adjoins one arrow to a free category.

    python3 scripts/dimension_tables.py
    python3 scripts/dimension_tables.py --set n_max=6 --set algebra_p_max=4
"""

from __future__ import annotations

import argparse
import json
import time
from dataclasses import dataclass

from opd.algcolim import algebra_pushout
from opd.algebra import SGraphMap, free_algebra, sgraph, zero_graph
from opd.config import as_dict, load_config
from opd.exactcat import LinMap, Space, compose
from opd.opcolim import PushoutProblem, build_pushout
from opd.operad import SeqMap, Sequence, ass_operad, free_operad, free_unit
from opd.trees import enumerate_trees


@dataclass(frozen=True)
class Config:
    n_max: int = 5
    mixed_w_max: int = 4
    pushout_n_max: int = 5
    algebra_p_max: int = 3
    chain_length: int = 3


def free_tables(cfg: Config) -> dict:
    out = {}
    binary = free_operad(Sequence({2: Space(1)}), cfg.n_max)
    out["one binary generator"] = {
        "dims": binary.dims(),
        "trees": [len(enumerate_trees(n, [2])) for n in range(cfg.n_max + 1)],
    }
    mixed = free_operad(Sequence({0: Space(1), 2: Space(1)}), cfg.n_max, cfg.mixed_w_max)
    out[f"nullary and binary, weight <= {cfg.mixed_w_max}"] = {
        "dims": mixed.dims(),
        "trees": [len(enumerate_trees(n, [0, 2], cfg.mixed_w_max))
                  for n in range(cfg.n_max + 1)],
    }
    return out


def split_pushout_table(cfg: Config) -> dict:
    n = cfg.pushout_n_max
    w, u, v = Sequence({2: Space(2)}), Sequence({2: Space(1)}), Sequence({2: Space(2)})
    fw = free_operad(w, n)
    gbar = SeqMap(u, fw.seq, {2: compose(free_unit(fw)[2], LinMap.from_rows([[1], [0]]))})
    prob = PushoutProblem(SeqMap(u, v, {2: LinMap.from_rows([[1], [0]])}), gbar, fw)
    res = build_pushout(prob, n, exact=True)
    return {"final": res.dims(),
            "glued free operad": free_operad(Sequence({2: Space(3)}), n).dims(),
            "stages": {k: c["dims"] for k, c in res.certificates.items()},
            "stable from": {k: c["stable_from"] for k, c in res.certificates.items()}}


def algebra_table(cfg: Config) -> dict:
    objs = tuple(f"v{k}" for k in range(cfg.chain_length + 1))
    first = {(objs[k], objs[k + 1]): 1 for k in range(cfg.chain_length - 1)}
    last = {(objs[-2], objs[-1]): 1}
    o = ass_operad(max_arity=cfg.algebra_p_max)
    a = free_algebra(o, sgraph(objs, first), cfg.algebra_p_max)
    z = sgraph(objs, last)
    y0 = zero_graph(objs)
    res = algebra_pushout(a, SGraphMap.zero(y0, z), SGraphMap.zero(y0, a.carrier),
                          cfg.algebra_p_max, cfg.algebra_p_max)
    whole = free_algebra(o, sgraph(objs, {**first, **last}), cfg.algebra_p_max)
    key = lambda d: {f"{x}->{y}": k for (x, y), k in d.items() if k}  # noqa: E731
    return {"push-out": key(res.algebra.carrier.dims()),
            "free on the whole chain": key(whole.carrier.dims()),
            "certificate": res.certificate}


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--config")
    ap.add_argument("--set", action="append", default=[], metavar="KEY=VALUE")
    args = ap.parse_args()
    cfg = load_config(Config, args.config, args.set)
    t0 = time.perf_counter()
    report = {"config": as_dict(cfg), "free operads": free_tables(cfg),
              "operad push-out": split_pushout_table(cfg), "algebra push-out": algebra_table(cfg)}
    report["seconds"] = round(time.perf_counter() - t0, 2)
    print(json.dumps(report, indent=2, sort_keys=True))


if __name__ == "__main__":
    main()
