"""Greedy splitter sequences for every minor pair of the oracle, with a TSV log."""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass
from pathlib import Path

from d2gen.butterfly import MinorClosure
from d2gen.generate import oracle_enumerate
from d2gen.splitter import sweep, validate_sequence


@dataclass
class SweepConfig:
    max_order: int = 5
    jobs: int = 1
    out: Path | None = None
    validate: bool = True


def run(cfg: SweepConfig) -> bool:
    t = time.perf_counter()
    rep = sweep(sorted(oracle_enumerate(cfg.max_order)), jobs=cfg.jobs)
    print(f"{len(rep.outcomes)} pairs in {time.perf_counter() - t:.1f}s")
    closure = MinorClosure()
    invalid = 0
    rows = []
    for o in rep.outcomes:
        if o.sequence is None:
            rows.append(f"{o.h.key}\t{o.d.key}\t-\t{o.error}")
            continue
        if cfg.validate and not validate_sequence(
            o.sequence, o.h.to_digraph(), o.d.to_digraph(), closure
        ):
            invalid += 1
        steps = " ; ".join(a.text() for a in o.sequence.augmentations)
        rows.append(f"{o.h.key}\t{o.d.key}\t{len(o.sequence)}\t{steps}")
    if cfg.out:
        cfg.out.write_text("h\td\tsteps\tsequence\n" + "\n".join(rows) + "\n")
    for o in rep.failures:
        print(f"no-successor {o.h.key} -> {o.d.key}")
    print(f"failures {len(rep.failures)} invalid {invalid}")
    return rep.ok and not invalid


def main() -> int:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max-order", type=int, default=5)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", type=Path)
    p.add_argument("--no-validate", action="store_true")
    a = p.parse_args()
    return 0 if run(SweepConfig(a.max_order, a.jobs, a.out, not a.no_validate)) else 1


if __name__ == "__main__":
    raise SystemExit(main())
