#!/usr/bin/env python3
"""Count planted planar trees by inner vertices and time the round-trip census.

For each bound k the script counts trees with at most k inner vertices and
arities in the configured set.  It compares the count with a recursion on
(leaves, inner vertices) and then decomposes every tree into corollas and
grafts it back.
"""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass
from functools import lru_cache

from opd import trees as tr
from opd.config import load_config


@dataclass(frozen=True)
class Config:
    max_inner: int = 6
    arities: tuple = (0, 1, 2, 3)


def recursion_counts(max_inner: int, arities: tuple) -> list[int]:
    """Number of trees with exactly k inner vertices, for k = 0..max_inner."""

    @lru_cache(maxsize=None)
    def forest(slots: int, inner: int) -> int:
        if slots == 0:
            return int(inner == 0)
        return sum(trees(i) * forest(slots - 1, inner - i) for i in range(inner + 1))

    @lru_cache(maxsize=None)
    def trees(inner: int) -> int:
        if inner == 0:
            return 1
        return sum(forest(a, inner - 1) for a in arities)

    return [trees(k) for k in range(max_inner + 1)]


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--config")
    ap.add_argument("--set", action="append", default=[], metavar="KEY=VALUE")
    args = ap.parse_args()
    cfg = load_config(Config, args.config, args.set)
    arities = tuple(sorted(set(cfg.arities)))
    per_level = recursion_counts(cfg.max_inner, arities)
    print(f"arities {list(arities)}")
    print(f"{'k':>3} {'trees':>10} {'cumulative':>12} {'census':>10} {'seconds':>8}")
    total = 0
    for k, c in enumerate(per_level):
        total += c
        t0 = time.perf_counter()
        n, bad = tr.roundtrip_census(k, arities)
        took = time.perf_counter() - t0
        flag = "ok" if n == total and not bad else f"MISMATCH ({len(bad)} bad)"
        print(f"{k:>3} {c:>10} {total:>12} {n:>10} {took:>8.2f}  {flag}")


if __name__ == "__main__":
    main()
