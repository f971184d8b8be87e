"""Augmentation sequences from a strongly 2-connected minor up to its host.

The search is greedy: from the current digraph, take every augmentation whose
result is still a butterfly-minor of the target and move to the smallest
(canonical form, descriptor) one. Intermediate digraphs are canonical
representatives, so descriptors refer to their labels.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .augment import Augmentation, apply_augmentation, enumerate_augmentations, parse_descriptor
from .butterfly import MinorClosure
from .digraph import (
    CanonicalForm,
    Digraph,
    canonical_form,
    is_isomorphic,
    is_strongly_2_connected,
    parse_many,
    serialize,
)
from .errors import NoSuccessor, NotAMinor, NotStrongly2Connected, SizeBoundExceeded
from .model import Report

SPLITTER_BOUND = 6
HEADER = "splitter v1"


@dataclass
class AugmentationSequence:
    """``digraphs[i+1]`` is isomorphic to ``augmentations[i]`` applied to ``digraphs[i]``."""

    digraphs: list[Digraph]
    augmentations: list[Augmentation] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.augmentations)

    def dumps(self) -> str:
        parts = [HEADER + "\n"]
        for i, g in enumerate(self.digraphs):
            parts.append(serialize(g))
            if i < len(self.augmentations):
                parts.append(self.augmentations[i].text() + "\n")
            parts.append("\n")
        return "".join(parts)

    @classmethod
    def loads(cls, text: str) -> AugmentationSequence:
        lines = text.splitlines()
        if not lines or lines[0].strip() != HEADER:
            raise ValueError(f"missing '{HEADER}' header")
        graphs_text: list[str] = []
        descs = []
        for line in lines[1:]:
            if line.startswith("("):
                descs.append(parse_descriptor(line))
                graphs_text.append("")
            else:
                graphs_text.append(line)
        graphs = parse_many("\n".join(graphs_text))
        return cls(graphs, descs)


class SequenceFinder:
    """Shares minor down-sets and augmentation results between many searches."""

    def __init__(self, bound: int = SPLITTER_BOUND, closure: MinorClosure | None = None) -> None:
        self.bound = bound
        self.closure = closure or MinorClosure(bound)
        self._results: dict[tuple[CanonicalForm, int], list[tuple[CanonicalForm, str, Augmentation]]] = {}
        self._next: dict[tuple[CanonicalForm, CanonicalForm], tuple[CanonicalForm, Augmentation] | None] = {}

    def results(self, form: CanonicalForm, budget: int) -> list[tuple[CanonicalForm, str, Augmentation]]:
        key = (form, budget)
        got = self._results.get(key)
        if got is None:
            got = sorted(
                (canonical_form(g), a.text(), a)
                for a, g in enumerate_augmentations(form.to_digraph(), budget)
            )
            self._results[key] = got
        return got

    def successor(self, cur: CanonicalForm, target: CanonicalForm, down: int
                  ) -> tuple[CanonicalForm, Augmentation] | None:
        key = (cur, target)
        if key not in self._next:
            pick = None
            for form, _, a in self.results(cur, target.n):
                if self.closure.contains(down, form):
                    pick = (form, a)
                    break
            self._next[key] = pick
        return self._next[key]

    def find(self, h: Digraph, d: Digraph) -> AugmentationSequence:
        if d.n > self.bound or h.n > self.bound:
            raise SizeBoundExceeded(f"splitter bounded to order {self.bound}")
        for g, name in ((h, "h"), (d, "d")):
            if not is_strongly_2_connected(g):
                raise NotStrongly2Connected(f"{name} is not strongly 2-connected")
        down = self.closure.down_set(d)
        cur = canonical_form(h)
        if not self.closure.contains(down, cur):
            raise NotAMinor("h is not a butterfly-minor of d")
        target = canonical_form(d)
        seq = AugmentationSequence([cur.to_digraph()])
        while cur != target:
            nxt = self.successor(cur, target, down)
            if nxt is None:
                raise NoSuccessor(
                    f"no augmentation of {cur.key} is a butterfly-minor of {target.key}"
                )
            cur, a = nxt
            seq.augmentations.append(a)
            seq.digraphs.append(cur.to_digraph())
        return seq


def find_sequence(h: Digraph, d: Digraph, finder: SequenceFinder | None = None
                  ) -> AugmentationSequence:
    return (finder or SequenceFinder()).find(h, d)


def validate_sequence(s: AugmentationSequence, h: Digraph, d: Digraph,
                      closure: MinorClosure | None = None) -> Report:
    """Re-check every sequence invariant from scratch."""
    closure = closure or MinorClosure(SPLITTER_BOUND)
    gs, augs = s.digraphs, s.augmentations
    if len(gs) != len(augs) + 1:
        return Report(False, "shape", f"{len(gs)} digraphs for {len(augs)} steps")
    if not is_isomorphic(gs[0], h):
        return Report(False, "start", "first digraph is not isomorphic to h")
    if not is_isomorphic(gs[-1], d):
        return Report(False, "end", "last digraph is not isomorphic to d")
    for i, g in enumerate(gs):
        if not is_strongly_2_connected(g):
            return Report(False, "strongly 2-connected", f"digraph {i}")
        if not closure.is_minor(g, d):
            return Report(False, "minor of d", f"digraph {i}")
    for i, a in enumerate(augs):
        try:
            got = apply_augmentation(gs[i], a)
        except Exception as exc:  # any precondition failure invalidates the step
            return Report(False, "augmentation", f"step {i + 1}: {exc}")
        if not is_isomorphic(got, gs[i + 1]):
            return Report(False, "augmentation", f"step {i + 1} does not produce the next digraph")
        if gs[i + 1].m <= gs[i].m:
            return Report(False, "edge growth", f"step {i + 1}")
        if not closure.is_minor(gs[i], gs[i + 1]):
            return Report(False, "minor of next", f"step {i + 1}")
    return Report(True)


# -- sweeps -------------------------------------------------------------------


@dataclass
class PairOutcome:
    h: CanonicalForm
    d: CanonicalForm
    sequence: AugmentationSequence | None
    error: str | None = None


@dataclass
class SweepReport:
    outcomes: list[PairOutcome]

    @property
    def failures(self) -> list[PairOutcome]:
        return [o for o in self.outcomes if o.sequence is None]

    @property
    def ok(self) -> bool:
        return not self.failures


def _sweep_target(args: tuple[CanonicalForm, list[CanonicalForm]]) -> list[PairOutcome]:
    fd, forms = args
    finder = SequenceFinder()
    return _sweep_one(finder, fd, forms)


def _sweep_one(finder: SequenceFinder, fd: CanonicalForm, forms: list[CanonicalForm]
               ) -> list[PairOutcome]:
    d = fd.to_digraph()
    down = finder.closure.down_set(d)
    out = []
    for fh in forms:
        if fh.n > fd.n or not finder.closure.contains(down, fh):
            continue
        try:
            seq = finder.find(fh.to_digraph(), d)
            out.append(PairOutcome(fh, fd, seq))
        except NoSuccessor as exc:
            out.append(PairOutcome(fh, fd, None, str(exc)))
    return out


def sweep(forms: list[CanonicalForm], jobs: int = 1) -> SweepReport:
    """find_sequence on every ordered pair (h, d) of ``forms`` with h a minor of d."""
    forms = sorted(forms)
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(jobs) as pool:
            parts = list(pool.map(_sweep_target, [(fd, forms) for fd in forms], chunksize=16))
    else:
        finder = SequenceFinder()
        parts = [_sweep_one(finder, fd, forms) for fd in forms]
    return SweepReport([o for part in parts for o in part])
