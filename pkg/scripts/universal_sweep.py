#!/usr/bin/env python3
"""Sweep random cocones through an operad push-out and time the induced maps.

The push-out glues one binary generator of F(W), with W two-dimensional, to a
fresh two-dimensional V.  Each cocone lands in a rescaled associative operad
with random constants; the script reports how many induced morphisms satisfied
both triangles and the operad-map check.
"""

from __future__ import annotations

import argparse
import json
import random
import time
from dataclasses import dataclass
from fractions import Fraction

from opd.config import as_dict, load_config
from opd.exactcat import LinMap, Space, compose
from opd.opcolim import PushoutProblem, build_pushout, verify_universal
from opd.operad import SeqMap, Sequence, free_extension, free_operad, free_unit, rescaled_ass


@dataclass(frozen=True)
class Config:
    n_max: int = 4
    cocones: int = 40
    seed: int = 0
    coeff_bound: int = 3


def problem(n: int) -> PushoutProblem:
    w, u, v = Sequence({2: Space(2)}), Sequence({2: Space(1)}), Sequence({2: Space(2)})
    fw = free_operad(w, n)
    gbar = SeqMap(u, fw.seq, {2: compose(free_unit(fw)[2], LinMap.from_rows([[1], [0]]))})
    return PushoutProblem(SeqMap(u, v, {2: LinMap.from_rows([[1], [0]])}), gbar, fw)


def random_cocone(prob: PushoutProblem, cfg: Config, rng: random.Random):
    b = cfg.coeff_bound
    scalars = {n: Fraction(rng.choice([1, 2, 3, -1, -2, 5]), rng.choice([1, 2, 3]))
               for n in range(cfg.n_max + 1)}
    target = rescaled_ass(scalars, cfg.n_max)
    phi = LinMap.from_rows([[rng.randint(-b, b), rng.randint(-b, b)]])
    f2 = free_extension(prob.o, target, SeqMap(prob.o.gens, target.seq, {2: phi}))
    forced = compose(f2[2], prob.gbar[2]).cols[0].get(0, 0)
    g2 = SeqMap(prob.v, target.seq, {2: LinMap.from_rows([[forced, rng.randint(-b, b)]])})
    return f2, g2


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--config")
    ap.add_argument("--set", action="append", default=[], metavar="KEY=VALUE")
    cfg = load_config(Config, *(lambda a: (a.config, a.set))(ap.parse_args()))
    rng = random.Random(cfg.seed)
    t0 = time.perf_counter()
    prob = problem(cfg.n_max)
    res = build_pushout(prob, cfg.n_max, exact=True)
    built = time.perf_counter() - t0
    samples = [random_cocone(prob, cfg, rng) for _ in range(cfg.cocones)]
    t1 = time.perf_counter()
    rep = verify_universal(res, samples)
    print(json.dumps({"config": as_dict(cfg), "dims": res.dims(), "status": rep.status,
                      "checks": rep.checked, "failures": rep.details[:5],
                      "build_seconds": round(built, 2),
                      "verify_seconds": round(time.perf_counter() - t1, 2)},
                     indent=2, sort_keys=True, default=str))


if __name__ == "__main__":
    main()
