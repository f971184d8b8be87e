"""Simple digraphs on dense vertex indices, connectivity, inversion, canonical forms.

Vertices are ``0..n-1``. Adjacency is kept twice: as per-vertex bit rows
(``out_masks``/``in_masks``, bit ``j`` of row ``i`` is the matrix entry) and as
sorted neighbour tuples for traversals.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .errors import (
    DuplicateEdge,
    IndexOutOfRange,
    LoopEdge,
    MalformedHeader,
    NotAVertex,
    SizeBoundExceeded,
)

Edge = tuple[int, int]

CANONICAL_BOUND = 10


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Digraph:
    n: int
    edges: frozenset[Edge]
    out_masks: tuple[int, ...] = field(init=False, repr=False, compare=False)
    in_masks: tuple[int, ...] = field(init=False, repr=False, compare=False)
    succ: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)
    pred: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        n = self.n
        if n < 0:
            raise ValueError("negative vertex count")
        edges = self.edges
        if not isinstance(edges, frozenset):
            edges = frozenset(edges)
            object.__setattr__(self, "edges", edges)
        out = [0] * n
        inn = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise IndexOutOfRange(f"edge ({u},{v}) outside 0..{n - 1}")
            if u == v:
                raise LoopEdge(f"loop at {u}")
            out[u] |= 1 << v
            inn[v] |= 1 << u
        object.__setattr__(self, "out_masks", tuple(out))
        object.__setattr__(self, "in_masks", tuple(inn))
        object.__setattr__(self, "succ", tuple(tuple(_bits(m)) for m in out))
        object.__setattr__(self, "pred", tuple(tuple(_bits(m)) for m in inn))
        assert sum(len(s) for s in self.succ) == len(edges)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Edge]) -> Digraph:
        edges = list(edges)
        fs = frozenset(edges)
        if len(fs) != len(edges):
            raise DuplicateEdge("repeated edge")
        return cls(n, fs)

    @classmethod
    def from_masks(cls, out_masks: Sequence[int]) -> Digraph:
        return cls(
            len(out_masks),
            frozenset((u, v) for u, m in enumerate(out_masks) for v in _bits(m)),
        )

    @property
    def m(self) -> int:
        return len(self.edges)

    def vertices(self) -> range:
        return range(self.n)

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return 0 <= u < self.n and bool(self.out_masks[u] >> v & 1)

    def out_degree(self, v: int) -> int:
        return len(self.succ[v])

    def in_degree(self, v: int) -> int:
        return len(self.pred[v])

    def check_vertex(self, v: int) -> None:
        if not (0 <= v < self.n):
            raise NotAVertex(f"{v} is not a vertex of a digraph on {self.n} vertices")

    def add_vertices(self, k: int = 1) -> Digraph:
        return Digraph(self.n + k, self.edges)

    def add_edges(self, edges: Iterable[Edge]) -> Digraph:
        return Digraph(self.n, self.edges | frozenset(edges))

    def remove_edges(self, edges: Iterable[Edge]) -> Digraph:
        return Digraph(self.n, self.edges - frozenset(edges))

    def delete_vertices(self, doomed: Iterable[int]) -> tuple[Digraph, dict[int, int]]:
        """Delete vertices and re-index densely; returns the old->new map."""
        doomed = set(doomed)
        keep = [v for v in range(self.n) if v not in doomed]
        index = {v: i for i, v in enumerate(keep)}
        edges = frozenset(
            (index[u], index[v]) for u, v in self.edges if u in index and v in index
        )
        return Digraph(len(keep), edges), index

    def relabel(self, mapping: Sequence[int]) -> Digraph:
        """Vertex ``v`` becomes ``mapping[v]``; ``mapping`` must be a permutation."""
        return Digraph(self.n, frozenset((mapping[u], mapping[v]) for u, v in self.edges))

    def __str__(self) -> str:
        return serialize(self)


# -- named families --------------------------------------------------------


def directed_path(k: int) -> Digraph:
    return Digraph(k, frozenset((i, i + 1) for i in range(k - 1)))


def directed_cycle(k: int) -> Digraph:
    return Digraph(k, frozenset((i, (i + 1) % k) for i in range(k)))


def bidirected_cycle(k: int) -> Digraph:
    if k < 3:
        raise ValueError("bidirected cycles need at least 3 vertices")
    fwd = {(i, (i + 1) % k) for i in range(k)}
    return Digraph(k, frozenset(fwd | {(v, u) for u, v in fwd}))


def a4() -> Digraph:
    """Directed 4-cycle with both diagonals as digons."""
    return Digraph(4, frozenset({(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (2, 0), (1, 3), (3, 1)}))


# -- d2c text format -------------------------------------------------------


def _records(text: str) -> Iterator[list[tuple[int, str]]]:
    record: list[tuple[int, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line.startswith("#"):
            continue
        if not line:
            if record:
                yield record
                record = []
            continue
        record.append((lineno, line))
    if record:
        yield record


def _parse_record(lines: list[tuple[int, str]]) -> Digraph:
    lineno, header = lines[0]
    parts = header.split()
    try:
        if len(parts) != 2:
            raise ValueError
        n, m = int(parts[0]), int(parts[1])
        if n < 0 or m < 0:
            raise ValueError
    except ValueError:
        raise MalformedHeader(f"expected 'n m', got {header!r}", lineno) from None
    if len(lines) - 1 != m:
        raise MalformedHeader(f"header announces {m} edges, found {len(lines) - 1}", lineno)
    seen: set[Edge] = set()
    for lineno, line in lines[1:]:
        parts = line.split()
        try:
            if len(parts) != 2:
                raise ValueError
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise MalformedHeader(f"expected 'u v', got {line!r}", lineno) from None
        if not (0 <= u < n and 0 <= v < n):
            raise IndexOutOfRange(f"edge ({u},{v}) outside 0..{n - 1}", lineno)
        if u == v:
            raise LoopEdge(f"loop at vertex {u}", lineno)
        if (u, v) in seen:
            raise DuplicateEdge(f"edge ({u},{v}) repeated", lineno)
        seen.add((u, v))
    return Digraph(n, frozenset(seen))


def parse(text: str) -> Digraph:
    """Parse exactly one d2c record."""
    records = list(_records(text))
    if len(records) != 1:
        raise MalformedHeader(f"expected one record, found {len(records)}")
    return _parse_record(records[0])


def parse_many(text: str) -> list[Digraph]:
    """Parse a blank-line separated stream of d2c records."""
    return [_parse_record(r) for r in _records(text)]


def serialize(d: Digraph) -> str:
    lines = [f"{d.n} {d.m}"]
    lines.extend(f"{u} {v}" for u, v in d.sorted_edges())
    return "\n".join(lines) + "\n"


def serialize_many(ds: Iterable[Digraph]) -> str:
    return "\n".join(serialize(d) for d in ds)


# -- connectivity ----------------------------------------------------------


def _reach(start: int, masks: Sequence[int], alive: int) -> int:
    seen = 1 << start
    frontier = seen
    while frontier:
        nxt = 0
        for v in _bits(frontier):
            nxt |= masks[v]
        frontier = nxt & alive & ~seen
        seen |= frontier
    return seen


def strongly_connected_masks(out_masks: Sequence[int], in_masks: Sequence[int], alive: int) -> bool:
    """Strong connectivity of the subgraph induced by the vertex set ``alive``."""
    if alive & (alive - 1) == 0:
        return True
    start = (alive & -alive).bit_length() - 1
    return (
        _reach(start, out_masks, alive) == alive and _reach(start, in_masks, alive) == alive
    )


def is_strongly_connected(d: Digraph) -> bool:
    return strongly_connected_masks(d.out_masks, d.in_masks, (1 << d.n) - 1)


def is_strongly_k_connected(d: Digraph, k: int) -> bool:
    if k < 1:
        raise ValueError("k must be positive")
    if d.n < k + 1:
        return False
    full = (1 << d.n) - 1
    for size in range(k):
        for removed in itertools.combinations(range(d.n), size):
            alive = full
            for v in removed:
                alive &= ~(1 << v)
            if not strongly_connected_masks(d.out_masks, d.in_masks, alive):
                return False
    return True


def is_strongly_2_connected(d: Digraph) -> bool:
    return is_strongly_k_connected(d, 2)


def invert(d: Digraph) -> Digraph:
    return Digraph(d.n, frozenset((v, u) for u, v in d.edges))


# -- canonical forms -------------------------------------------------------


@dataclass(frozen=True, order=True)
class CanonicalForm:
    """Smallest row-major adjacency bit string over degree-respecting labelings.

    ``code`` is that bit string read as an integer, most significant bit first,
    so integer order on equal ``n`` is lexicographic order on the strings.
    """

    n: int
    code: int

    @property
    def bits(self) -> str:
        if self.n == 0:
            return ""
        return format(self.code, f"0{self.n * self.n}b")

    @property
    def key(self) -> str:
        """Compact reversible text key, ``n:hexcode``."""
        return f"{self.n}:{self.code:x}"

    @classmethod
    def from_key(cls, key: str) -> CanonicalForm:
        n, code = key.split(":")
        return cls(int(n), int(code, 16))

    def to_digraph(self) -> Digraph:
        n = self.n
        top = n * n - 1
        return Digraph(
            n,
            frozenset(
                (i, j)
                for i in range(n)
                for j in range(n)
                if self.code >> (top - (i * n + j)) & 1
            ),
        )


_TABLES: dict[tuple[int, ...], list[list[int]]] = {}
_TABLE_MAX_N = 6


def _row_tables(order: tuple[int, ...]) -> list[list[int]]:
    """``tables[r][mask]``: code bits contributed by old row ``r`` with out-mask ``mask``."""
    tabs = _TABLES.get(order)
    if tabs is not None:
        return tabs
    n = len(order)
    pos = [0] * n
    for i, v in enumerate(order):
        pos[v] = i
    top = n * n - 1
    tabs = []
    for r in range(n):
        base = pos[r] * n
        tab = [0] * (1 << n)
        for mask in range(1, 1 << n):
            low = mask & -mask
            c = low.bit_length() - 1
            tab[mask] = tab[mask ^ low] | (1 << (top - base - pos[c]))
        tabs.append(tab)
    if n <= _TABLE_MAX_N:
        _TABLES[order] = tabs
    return tabs


def _direct_code(order: Sequence[int], out_masks: Sequence[int]) -> int:
    n = len(order)
    code = 0
    for v in order:
        row = out_masks[v]
        for w in order:
            code = (code << 1) | (row >> w & 1)
    return code


def _orderings(out_masks: Sequence[int], in_masks: Sequence[int]) -> Iterator[tuple[int, ...]]:
    n = len(out_masks)
    keys = [(out_masks[v].bit_count(), in_masks[v].bit_count()) for v in range(n)]
    blocks: dict[tuple[int, int], list[int]] = {}
    for v in sorted(range(n), key=lambda v: keys[v]):
        blocks.setdefault(keys[v], []).append(v)
    parts = [list(itertools.permutations(b)) for _, b in sorted(blocks.items())]
    for combo in itertools.product(*parts):
        yield tuple(itertools.chain.from_iterable(combo))


def canonical_code(out_masks: Sequence[int], in_masks: Sequence[int]) -> int:
    n = len(out_masks)
    best = None
    if n <= _TABLE_MAX_N:
        for order in _orderings(out_masks, in_masks):
            tabs = _row_tables(order)
            code = 0
            for r in range(n):
                code |= tabs[r][out_masks[r]]
            if best is None or code < best:
                best = code
    else:
        for order in _orderings(out_masks, in_masks):
            code = _direct_code(order, out_masks)
            if best is None or code < best:
                best = code
    return best or 0


def canonical_form(d: Digraph, bound: int = CANONICAL_BOUND) -> CanonicalForm:
    if d.n > bound:
        raise SizeBoundExceeded(f"canonical form bounded to n <= {bound}, got {d.n}")
    return CanonicalForm(d.n, canonical_code(d.out_masks, d.in_masks))


def is_isomorphic(a: Digraph, b: Digraph) -> bool:
    if a.n != b.n or a.m != b.m:
        return False
    return canonical_form(a) == canonical_form(b)
