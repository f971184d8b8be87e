"""Ear-path classes over one expansion per minor pair, and switching soundness."""

from __future__ import annotations

import argparse
import time
from collections import Counter
from dataclasses import dataclass

from d2gen.butterfly import MinorClosure
from d2gen.earpath import Switching, classify_earpath, enumerate_earpaths, switch_onto
from d2gen.errors import TrichotomyViolation
from d2gen.generate import oracle_enumerate
from d2gen.model import decorate, find_expansion, validate_model


@dataclass
class CensusConfig:
    max_order: int = 5


def run(cfg: CensusConfig) -> bool:
    t = time.perf_counter()
    forms = sorted(oracle_enumerate(cfg.max_order))
    reps = {f: f.to_digraph() for f in forms}
    mc = MinorClosure()
    classes: Counter[str] = Counter()
    pairs = violations = unsound = 0
    for fd in forms:
        down = mc.down_set(reps[fd])
        for fh in forms:
            if not mc.contains(down, fh):
                continue
            pairs += 1
            m = find_expansion(reps[fh], reps[fd])
            dec = decorate(m)
            for p in enumerate_earpaths(reps[fd], m):
                try:
                    c = classify_earpath(p, dec)
                except TrichotomyViolation:
                    violations += 1
                    continue
                label = c.name
                if isinstance(c, Switching):
                    label += "/parallel" if c.parallel else "/non-parallel"
                    if not validate_model(switch_onto(m, p)):
                        unsound += 1
                classes[label] += 1
    print(f"{pairs} pairs in {time.perf_counter() - t:.1f}s")
    for k in sorted(classes):
        print(f"{k}\t{classes[k]}")
    print(f"trichotomy violations {violations} unsound switches {unsound}")
    return not violations and not unsound


def main() -> int:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max-order", type=int, default=5)
    return 0 if run(CensusConfig(p.parse_args().max_order)) else 1


if __name__ == "__main__":
    raise SystemExit(main())
