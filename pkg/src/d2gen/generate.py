"""Base class, bounded generation closure, and an exhaustive oracle to check it against."""

from __future__ import annotations

import heapq
import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path as FsPath
from typing import Iterable, Sequence

import numpy as np

from .augment import apply_augmentation, enumerate_augmentations, parse_descriptor
from .butterfly import MinorClosure, is_butterfly_minor
from .digraph import (
    CanonicalForm,
    Digraph,
    a4,
    bidirected_cycle,
    canonical_form,
    is_isomorphic,
    is_strongly_2_connected,
    parse_many,
    serialize_many,
)
from .errors import NotStrongly2Connected, SizeBoundExceeded

CLOSURE_BOUND = 6
ORACLE_BOUND = 5


def base_class(max_order: int) -> list[Digraph]:
    """Bidirected cycles of length 3..max_order, plus A4 once 4 vertices are allowed."""
    out = [bidirected_cycle(k) for k in range(3, max_order + 1)]
    if max_order >= 4:
        out.insert(2, a4())
    return out


# -- oracle -------------------------------------------------------------------


def _reach(start: int, masks: Sequence[np.ndarray], alive: int, n: int) -> np.ndarray:
    seen = np.full(masks[0].shape, 1 << start, np.uint64)
    for _ in range(n):
        nxt = seen.copy()
        for v in range(n):
            has = ((seen >> np.uint64(v)) & np.uint64(1)).astype(bool)
            nxt |= np.where(has, masks[v], np.uint64(0))
        seen = nxt & np.uint64(alive)
    return seen


def _oracle_order(n: int) -> set[CanonicalForm]:
    """All strongly 2-connected digraphs on exactly ``n`` vertices, via labeled enumeration."""
    pos = [(i, j) for i in range(n) for j in range(n) if i != j]
    codes = np.arange(1 << len(pos), dtype=np.uint64)
    out = [np.zeros(codes.shape, np.uint64) for _ in range(n)]
    inn = [np.zeros(codes.shape, np.uint64) for _ in range(n)]
    for k, (i, j) in enumerate(pos):
        bit = (codes >> np.uint64(k)) & np.uint64(1)
        out[i] |= bit << np.uint64(j)
        inn[j] |= bit << np.uint64(i)
    # 2-connectivity on n >= 3 forces in- and out-degree >= 2
    keep = np.ones(codes.shape, bool)
    for v in range(n):
        keep &= (np.bitwise_count(out[v]) >= 2) & (np.bitwise_count(inn[v]) >= 2)
    out = [o[keep] for o in out]
    inn = [x[keep] for x in inn]
    full = (1 << n) - 1
    good = np.ones(out[0].shape, bool)
    for removed in [None, *range(n)]:
        alive = full if removed is None else full & ~(1 << removed)
        start = 1 if removed == 0 else 0
        good &= _reach(start, out, alive, n) == alive
        good &= _reach(start, inn, alive, n) == alive
    out = [o[good] for o in out]
    if out[0].size == 0:
        return set()
    # class key: minimum row-major code over every vertex permutation
    top = n * n - 1
    best = None
    for perm in itertools.permutations(range(n)):
        code = np.zeros(out[0].shape, np.uint64)
        for i in range(n):
            for j in range(n):
                if i != j:
                    bit = (out[perm[i]] >> np.uint64(perm[j])) & np.uint64(1)
                    code |= bit << np.uint64(top - (i * n + j))
        best = code if best is None else np.minimum(best, code)
    _, first = np.unique(best, return_index=True)
    forms = set()
    for k in first:
        masks = [int(o[k]) for o in out]
        forms.add(canonical_form(Digraph.from_masks(masks)))
    if len(forms) != len(first):
        raise AssertionError("canonical form disagrees with the permutation-minimum classes")
    return forms


def oracle_enumerate(max_order: int) -> set[CanonicalForm]:
    """Canonical forms of every strongly 2-connected digraph with 3 <= order <= max_order."""
    if max_order > ORACLE_BOUND:
        raise SizeBoundExceeded(f"exhaustive oracle bounded to order {ORACLE_BOUND}")
    forms: set[CanonicalForm] = set()
    for n in range(3, max_order + 1):
        forms |= _oracle_order(n)
    return forms


# -- closure ----------------------------------------------------------------------


@dataclass(frozen=True)
class Member:
    digraph: Digraph
    parent: CanonicalForm | None = None
    descriptor: str | None = None


@dataclass
class ClosureSet:
    max_order: int
    members: dict[CanonicalForm, Member] = field(default_factory=dict)

    def forms(self) -> set[CanonicalForm]:
        return set(self.members)

    def counts(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for f in self.members:
            out[f.n] = out.get(f.n, 0) + 1
        return dict(sorted(out.items()))

    def replay(self, form: CanonicalForm) -> Digraph:
        """Re-apply the recorded augmentation to the parent."""
        m = self.members[form]
        if m.parent is None:
            return m.digraph
        return apply_augmentation(self.members[m.parent].digraph, parse_descriptor(m.descriptor))

    def save(self, directory: str | FsPath) -> None:
        path = FsPath(directory)
        path.mkdir(parents=True, exist_ok=True)
        order = sorted(self.members)
        (path / "members.d2c").write_text(
            serialize_many([self.members[f].digraph for f in order])
        )
        rows = []
        for f in order:
            m = self.members[f]
            parent = m.parent.key if m.parent else "-"
            rows.append(f"{f.key}\t{parent}\t{m.descriptor or '-'}\n")
        (path / "provenance.tsv").write_text("".join(rows))
        counts = " ".join(f"{n}:{c}" for n, c in self.counts().items())
        (path / "meta").write_text(
            f"max_order {self.max_order}\nmembers {len(self.members)}\ncounts {counts}\n"
        )

    @classmethod
    def load(cls, directory: str | FsPath) -> ClosureSet:
        path = FsPath(directory)
        meta = dict(line.split(" ", 1) for line in (path / "meta").read_text().splitlines() if line)
        graphs = parse_many((path / "members.d2c").read_text())
        rows = [line.split("\t") for line in (path / "provenance.tsv").read_text().splitlines()]
        cs = cls(int(meta["max_order"]))
        for g, (key, parent, desc) in zip(graphs, rows):
            form = CanonicalForm.from_key(key)
            cs.members[form] = Member(
                g,
                None if parent == "-" else CanonicalForm.from_key(parent),
                None if desc == "-" else desc,
            )
        return cs


def _expand(item: tuple[Digraph, int]) -> list[tuple[CanonicalForm, str, Digraph]]:
    d, budget = item
    return [(canonical_form(g), a.text(), g) for a, g in enumerate_augmentations(d, budget)]


def generate_closure(max_order: int, jobs: int = 1, bound: int = CLOSURE_BOUND) -> ClosureSet:
    """Fixed point of the augmentations from the base class, within ``max_order`` vertices.

    Members are expanded in canonical-form order. Each non-base member keeps the
    smallest (parent form, descriptor) pair producing it, so the result does not
    depend on ``jobs``.
    """
    if max_order > bound:
        raise SizeBoundExceeded(f"closure bounded to order {bound}")
    cs = ClosureSet(max_order)
    best: dict[CanonicalForm, tuple[CanonicalForm, str, Digraph]] = {}
    base = {}
    for g in base_class(max_order):
        f = canonical_form(g)
        base[f] = f.to_digraph()
    seen = set(base)
    heap = sorted(base)
    reps = dict(base)
    pool = ProcessPoolExecutor(jobs) if jobs > 1 else None
    try:
        while heap:
            batch = sorted(heap)
            heap = []
            items = [(reps[f], max_order) for f in batch]
            results = pool.map(_expand, items, chunksize=8) if pool else map(_expand, items)
            for parent, found in zip(batch, results):
                for form, desc, g in found:
                    cand = (parent, desc, g)
                    old = best.get(form)
                    if old is None or cand[:2] < old[:2]:
                        best[form] = cand
                    if form not in seen:
                        seen.add(form)
                        reps[form] = form.to_digraph()
                        heapq.heappush(heap, form)
    finally:
        if pool:
            pool.shutdown()
    for form in sorted(seen):
        if form in base:
            cs.members[form] = Member(base[form])
        else:
            parent, desc, _ = best[form]
            cs.members[form] = Member(reps[form], parent, desc)
    return cs


@dataclass
class GenerationReport:
    max_order: int
    closure: set[CanonicalForm]
    oracle: set[CanonicalForm]

    @property
    def missing(self) -> list[CanonicalForm]:
        return sorted(self.oracle - self.closure)

    @property
    def extra(self) -> list[CanonicalForm]:
        return sorted(self.closure - self.oracle)

    @property
    def equal(self) -> bool:
        return self.closure == self.oracle

    def lines(self) -> list[str]:
        out = [
            f"max-order: {self.max_order}",
            f"closure: {len(self.closure)}",
            f"oracle: {len(self.oracle)}",
        ]
        out += [f"missing: {f.key}" for f in self.missing]
        out += [f"extra: {f.key}" for f in self.extra]
        out.append(f"equal: {'yes' if self.equal else 'no'}")
        return out


def verify_generation(max_order: int, jobs: int = 1) -> GenerationReport:
    return GenerationReport(
        max_order, generate_closure(max_order, jobs).forms(), oracle_enumerate(max_order)
    )


def contains_base_minor(d: Digraph, closure: MinorClosure | None = None
                        ) -> tuple[bool, Digraph | None]:
    """Whether some member of the base class is a butterfly-minor of ``d`` (and which)."""
    if not is_strongly_2_connected(d):
        raise NotStrongly2Connected("input is not strongly 2-connected")
    for b in base_class(max(d.n, 3)):
        if b.n <= d.n and is_butterfly_minor(b, d, closure=closure):
            return True, b
    return False, None


def representatives(forms: Iterable[CanonicalForm]) -> list[Digraph]:
    return [f.to_digraph() for f in sorted(forms)]


def provenance_ok(cs: ClosureSet) -> bool:
    return all(is_isomorphic(cs.replay(f), m.digraph) for f, m in cs.members.items())
