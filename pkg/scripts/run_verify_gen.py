"""Closure vs oracle at each order, with timings and the missing classes."""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass

from d2gen.butterfly import MinorClosure
from d2gen.generate import generate_closure, oracle_enumerate


@dataclass
class VerifyConfig:
    max_order: int = 5
    jobs: int = 1


def run(cfg: VerifyConfig) -> bool:
    t = time.perf_counter()
    oracle = oracle_enumerate(cfg.max_order)
    t_oracle = time.perf_counter() - t
    t = time.perf_counter()
    closure = generate_closure(cfg.max_order, jobs=cfg.jobs).forms()
    t_closure = time.perf_counter() - t
    print(f"oracle {len(oracle)} classes in {t_oracle:.1f}s, closure {len(closure)} in {t_closure:.1f}s")
    for n in range(3, cfg.max_order + 1):
        o = sum(1 for f in oracle if f.n == n)
        c = sum(1 for f in closure if f.n == n)
        print(f"order {n}: oracle {o} closure {c}")
    mc = MinorClosure()
    for f in sorted(oracle - closure):
        d = f.to_digraph()
        below = sorted(g.key for g in mc.minors(d) if g in oracle and g != f)
        print(f"missing {f.key} m={d.m} edges={d.sorted_edges()} s2c-minors={below}")
    for f in sorted(closure - oracle):
        print(f"extra {f.key}")
    return oracle == closure


def main() -> int:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max-order", type=int, default=5)
    p.add_argument("--jobs", type=int, default=1)
    a = p.parse_args()
    return 0 if run(VerifyConfig(a.max_order, a.jobs)) else 1


if __name__ == "__main__":
    raise SystemExit(main())
