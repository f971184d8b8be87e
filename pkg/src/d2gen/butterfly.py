"""Butterfly contraction and the butterfly-minor relation.

The reference minor test is a breadth-first search over the delete/contract
state space with states deduplicated by canonical form. :class:`MinorClosure`
memoizes whole down-sets for sweeps that ask many questions about the same
hosts.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .digraph import (
    CANONICAL_BOUND,
    CanonicalForm,
    Digraph,
    Edge,
    _bits,
    canonical_code,
    canonical_form,
)
from .errors import NotContractible, ParseError, SizeBoundExceeded


def contractible_edges(d: Digraph) -> set[Edge]:
    """Edges that are the only out-edge of their tail or the only in-edge of their head."""
    return {
        (u, v) for u, v in d.edges if len(d.succ[u]) == 1 or len(d.pred[v]) == 1
    }


def is_contractible(d: Digraph, u: int, v: int) -> bool:
    return d.has_edge(u, v) and (len(d.succ[u]) == 1 or len(d.pred[v]) == 1)


def contract_with_map(d: Digraph, e: Edge) -> tuple[Digraph, dict[int, int]]:
    """Contract ``e=(u,v)``; ``v`` merges into ``u``. Returns the old->new index map."""
    u, v = e
    if not is_contractible(d, u, v):
        raise NotContractible(f"edge ({u},{v}) is not butterfly-contractible")
    keep = [w for w in range(d.n) if w != v]
    index = {w: i for i, w in enumerate(keep)}
    index[v] = index[u]
    edges = set()
    for a, b in d.edges:
        a2, b2 = index[a], index[b]
        if a2 != b2:
            edges.add((a2, b2))
    return Digraph(d.n - 1, frozenset(edges)), index


def butterfly_contract(d: Digraph, e: Edge) -> Digraph:
    return contract_with_map(d, e)[0]


# -- mask-level moves -------------------------------------------------------


def _squash(mask: int, i: int) -> int:
    low = mask & ((1 << i) - 1)
    return low | ((mask >> (i + 1)) << i)


def _in_masks(out: Sequence[int]) -> list[int]:
    inn = [0] * len(out)
    for u, m in enumerate(out):
        for v in _bits(m):
            inn[v] |= 1 << u
    return inn


def _delete_vertex(out: Sequence[int], i: int) -> tuple[int, ...]:
    return tuple(_squash(m, i) for j, m in enumerate(out) if j != i)


def _contract(out: Sequence[int], i: int, j: int) -> tuple[int, ...]:
    """Merge ``j`` into ``i`` (masks), dropping loops and duplicates."""
    bi, bj = 1 << i, 1 << j
    new = list(out)
    new[i] = (out[i] | out[j]) & ~bi & ~bj
    for k, m in enumerate(out):
        if k != i and k != j and m & bj:
            new[k] = (m & ~bj) | bi
    return _delete_vertex(new, j)


Step = tuple  # ("D", u, v) | ("DV", v) | ("C", u, v)


def _moves(out: tuple[int, ...], labels: tuple[int, ...], allow_shrink: bool = True
           ) -> Iterator[tuple[Step, tuple[int, ...], tuple[int, ...]]]:
    """All one-step minors: (step in host labels, new masks, new labels)."""
    n = len(out)
    inn = _in_masks(out)
    for u in range(n):
        for v in _bits(out[u]):
            new = list(out)
            new[u] &= ~(1 << v)
            yield ("D", labels[u], labels[v]), tuple(new), labels
    if not allow_shrink:
        return
    for u in range(n):
        yield ("DV", labels[u]), _delete_vertex(out, u), labels[:u] + labels[u + 1:]
    for u in range(n):
        for v in _bits(out[u]):
            if out[u] & (out[u] - 1) == 0 or inn[v] & (inn[v] - 1) == 0:
                yield ("C", labels[u], labels[v]), _contract(out, u, v), labels[:v] + labels[v + 1:]


def _code(out: Sequence[int]) -> tuple[int, int]:
    return len(out), canonical_code(out, _in_masks(out))


# -- witness scripts --------------------------------------------------------


def format_script(script: Iterable[Step]) -> str:
    return "".join(" ".join(str(x) for x in step) + "\n" for step in script)


def parse_script(text: str) -> list[Step]:
    steps: list[Step] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        parts = raw.split()
        if not parts or parts[0].startswith("#"):
            continue
        try:
            if parts[0] in ("D", "C") and len(parts) == 3:
                steps.append((parts[0], int(parts[1]), int(parts[2])))
                continue
            if parts[0] == "DV" and len(parts) == 2:
                steps.append(("DV", int(parts[1])))
                continue
        except ValueError:
            pass
        raise ParseError(f"bad witness step {raw!r}", lineno)
    return steps


def replay_script(host: Digraph, script: Iterable[Step]) -> Digraph:
    """Apply a witness script; indices always name host vertices.

    A contraction ``C u v`` keeps the label ``u``. The result is re-indexed by
    sorted surviving host labels.
    """
    labels = list(range(host.n))
    edges = set(host.edges)
    for step in script:
        kind = step[0]
        if kind == "D":
            _, u, v = step
            if (u, v) not in edges:
                raise NotContractible(f"cannot delete absent edge ({u},{v})")
            edges.discard((u, v))
        elif kind == "DV":
            v = step[1]
            if v not in labels:
                raise NotContractible(f"vertex {v} already gone")
            labels.remove(v)
            edges = {(a, b) for a, b in edges if v not in (a, b)}
        elif kind == "C":
            _, u, v = step
            outs = sum(1 for a, _ in edges if a == u)
            ins = sum(1 for _, b in edges if b == v)
            if (u, v) not in edges or (outs != 1 and ins != 1):
                raise NotContractible(f"edge ({u},{v}) is not butterfly-contractible")
            labels.remove(v)
            merged = set()
            for a, b in edges:
                a = u if a == v else a
                b = u if b == v else b
                if a != b:
                    merged.add((a, b))
            edges = merged
        else:
            raise ValueError(f"unknown step {step!r}")
    index = {v: i for i, v in enumerate(sorted(labels))}
    return Digraph(len(labels), frozenset((index[a], index[b]) for a, b in edges))


# -- reference minor test ----------------------------------------------------


@dataclass
class MinorResult:
    found: bool
    script: list[Step] | None = None
    states: int = 0

    def __bool__(self) -> bool:
        return self.found


def minor_search(h: Digraph, d: Digraph, bound: int = CANONICAL_BOUND) -> MinorResult:
    """Breadth-first delete/contract search from ``d`` towards a copy of ``h``."""
    if h.n > bound or d.n > bound:
        raise SizeBoundExceeded(f"minor test bounded to n <= {bound}")
    if h.n > d.n or h.m > d.m:
        return MinorResult(False)
    target = (h.n, canonical_code(h.out_masks, h.in_masks))
    start = tuple(d.out_masks)
    key = _code(start)
    if key == target:
        return MinorResult(True, [], 1)
    parent: dict[tuple[int, int], tuple[tuple[int, int] | None, Step | None]] = {key: (None, None)}
    queue = deque([(start, tuple(range(d.n)), key)])
    while queue:
        out, labels, key = queue.popleft()
        n = len(out)
        for step, new, new_labels in _moves(out, labels, allow_shrink=n > h.n):
            m = sum(x.bit_count() for x in new)
            if len(new) < h.n or m < h.m:
                continue
            nkey = _code(new)
            if nkey in parent:
                continue
            parent[nkey] = (key, step)
            if nkey == target:
                script: list[Step] = []
                cur: tuple[int, int] | None = nkey
                while cur is not None:
                    prev, st = parent[cur]
                    if st is not None:
                        script.append(st)
                    cur = prev
                script.reverse()
                return MinorResult(True, script, len(parent))
            queue.append((new, new_labels, nkey))
    return MinorResult(False, None, len(parent))


def is_butterfly_minor(h: Digraph, d: Digraph, backend: str = "bfs",
                       closure: MinorClosure | None = None) -> bool:
    """Whether ``h`` is a butterfly-minor of ``d``.

    ``backend`` is ``"bfs"`` (reference) or ``"model"`` (direct model search).
    A supplied ``closure`` answers from its memoized down-sets instead.
    """
    if closure is not None:
        return closure.is_minor(h, d)
    if backend == "bfs":
        return minor_search(h, d).found
    if backend == "model":
        from .model import find_expansion

        return find_expansion(h, d) is not None
    raise ValueError(f"unknown backend {backend!r}")


class MinorClosure:
    """Memoized down-sets: every butterfly-minor of a digraph, as canonical forms.

    Down-sets are stored as integer bitsets over an index of canonical keys, so
    ``down(d) = {d} | union(down(child))`` is a handful of ORs per state.
    """

    def __init__(self, bound: int = 6) -> None:
        self.bound = bound
        self._index: dict[tuple[int, int], int] = {}
        self._keys: list[tuple[int, int]] = []
        self._down: dict[int, int] = {}

    def _id(self, key: tuple[int, int]) -> int:
        i = self._index.get(key)
        if i is None:
            i = self._index[key] = len(self._keys)
            self._keys.append(key)
        return i

    def _down_of(self, out: tuple[int, ...]) -> int:
        key = _code(out)
        i = self._id(key)
        got = self._down.get(i)
        if got is not None:
            return got
        # work on the canonical representative so equal keys share children
        rep = CanonicalForm(*key).to_digraph().out_masks
        stack = [(rep, i)]
        order: list[tuple[tuple[int, ...], int]] = []
        pending = {i}
        while stack:
            cur, ci = stack.pop()
            order.append((cur, ci))
            for _, new, _ in _moves(cur, tuple(range(len(cur)))):
                nkey = _code(new)
                ni = self._id(nkey)
                if ni in self._down or ni in pending:
                    continue
                pending.add(ni)
                stack.append((CanonicalForm(*nkey).to_digraph().out_masks, ni))
        # children always have fewer vertices+edges, so sort by size and fold up
        order.sort(key=lambda t: (len(t[0]), sum(x.bit_count() for x in t[0])))
        for cur, ci in order:
            acc = 1 << ci
            for _, new, _ in _moves(cur, tuple(range(len(cur)))):
                acc |= self._down[self._index[_code(new)]]
            self._down[ci] = acc
        return self._down[i]

    def down_set(self, d: Digraph) -> int:
        if d.n > self.bound:
            raise SizeBoundExceeded(f"minor closure bounded to n <= {self.bound}")
        return self._down_of(tuple(d.out_masks))

    def minors(self, d: Digraph) -> set[CanonicalForm]:
        bits = self.down_set(d)
        return {CanonicalForm(*self._keys[i]) for i in _bits(bits)}

    def contains(self, down: int, form: CanonicalForm) -> bool:
        i = self._index.get((form.n, form.code))
        return i is not None and bool(down >> i & 1)

    def is_minor(self, h: Digraph, d: Digraph) -> bool:
        if h.n > d.n or h.m > d.m:
            return False
        return self.contains(self.down_set(d), canonical_form(h))
