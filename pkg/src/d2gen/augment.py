"""Splits, chains and the basic/chain/collarette/bracelet augmentations.

Index conventions (all results keep the old vertices at their old indices):

* a split keeps the base at ``v`` and appends the exposed vertex;
* when a descriptor has both an out-split at ``u`` and an in-split at ``v``,
  the out-split happens first and the in-split's exposed set is written in the
  indices of the digraph after the out-split;
* chain vertices are appended along the ``u``-``v`` path, subdivision vertices
  before chain vertices.

Descriptors print as one-line s-expressions (see :func:`parse_descriptor`).
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import ClassVar, Iterator, Union

from .digraph import Digraph, Edge
from .errors import (
    DegreeTooSmall,
    EdgeAbsent,
    NotAVertex,
    PreconditionViolated,
    SimplicityViolation,
)


@dataclass(frozen=True, order=True)
class SplitSpec:
    vertex: int
    direction: str  # "out" or "in"
    exposed: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.direction not in ("out", "in"):
            raise ValueError(f"bad split direction {self.direction!r}")
        object.__setattr__(self, "exposed", tuple(sorted(self.exposed)))

    def text(self) -> str:
        return f"({self.vertex};{','.join(map(str, self.exposed))})"


def split(d: Digraph, s: SplitSpec) -> tuple[Digraph, int, int]:
    """Out- or in-split; returns (digraph, base, exposed). The base keeps index ``v``."""
    v = s.vertex
    if not 0 <= v < d.n:
        raise NotAVertex(f"{v} is not a vertex")
    nbrs = set(d.succ[v] if s.direction == "out" else d.pred[v])
    exposed = set(s.exposed)
    if len(exposed) != len(s.exposed) or not exposed <= nbrs:
        raise PreconditionViolated("exposed-subset", f"{sorted(exposed)} not within neighbours {sorted(nbrs)}")
    if len(nbrs) < 3 or len(exposed) < 2 or len(nbrs - exposed) < 1:
        raise DegreeTooSmall(
            f"{s.direction}-split at {v} needs |N_e| >= 2 and |N_b| >= 1 (degree {len(nbrs)})"
        )
    e = d.n
    edges = set(d.edges)
    if s.direction == "out":
        for x in exposed:
            edges.discard((v, x))
            edges.add((e, x))
        edges.add((v, e))
    else:
        for x in exposed:
            edges.discard((x, v))
            edges.add((x, e))
        edges.add((e, v))
    return Digraph(d.n + 1, frozenset(edges)), v, e


def add_chain(d: Digraph, e: Edge, x: int, y: int, length: int) -> Digraph:
    """Replace ``e=(u,v)`` by a ``u``-``v`` path through ``length`` new vertices and
    thread an ``x``-``y`` path back through them."""
    u, v = e
    if e not in d.edges:
        raise EdgeAbsent(f"edge {e} not in digraph")
    for w in (x, y):
        if not 0 <= w < d.n:
            raise NotAVertex(f"{w} is not a vertex")
    if length < 1:
        raise PreconditionViolated("chain-length", "length must be at least 1")
    inner = list(range(d.n, d.n + length))
    q = [u, *inner, v]
    p = [x, *reversed(inner), y]
    new = list(zip(q, q[1:])) + list(zip(p, p[1:]))
    if len(set(new)) != len(new):
        raise SimplicityViolation(f"{x}-{y}-chain through {e} of length {length} repeats an edge")
    edges = set(d.edges)
    edges.discard(e)
    return Digraph(d.n + length, frozenset(edges | set(new)))


def subdivide(d: Digraph, e: Edge) -> tuple[Digraph, int]:
    if e not in d.edges:
        raise EdgeAbsent(f"edge {e} not in digraph")
    z = d.n
    edges = set(d.edges)
    edges.discard(e)
    edges |= {(e[0], z), (z, e[1])}
    return Digraph(d.n + 1, frozenset(edges)), z


# -- descriptors ------------------------------------------------------------


@dataclass(frozen=True)
class Basic:
    kind: ClassVar[str] = "basic"
    u: int
    v: int
    out_split: tuple[int, ...] | None = None
    in_split: tuple[int, ...] | None = None

    def text(self) -> str:
        parts = [f"u={self.u}", f"v={self.v}"]
        if self.out_split is not None:
            parts.append(f"out-split={_set(self.u, self.out_split)}")
        if self.in_split is not None:
            parts.append(f"in-split={_set(self.v, self.in_split)}")
        return f"(basic {' '.join(parts)})"


@dataclass(frozen=True)
class BasicDouble:
    kind: ClassVar[str] = "basic-double"
    w: int
    out_split: tuple[int, ...]
    in_split: tuple[int, ...]

    def text(self) -> str:
        return (
            f"(basic-double w={self.w} out-split={_set(self.w, self.out_split)} "
            f"in-split={_set(self.w, self.in_split)})"
        )


@dataclass(frozen=True)
class Chain:
    kind: ClassVar[str] = "chain"
    u: int
    v: int
    out_split: tuple[int, ...] | None
    in_split: tuple[int, ...] | None
    tail_role: str  # "b" or "e"
    head_role: str
    length: int

    def text(self) -> str:
        parts = [f"u={self.u}", f"v={self.v}"]
        if self.out_split is not None:
            parts.append(f"out-split={_set(self.u, self.out_split)}")
        if self.in_split is not None:
            parts.append(f"in-split={_set(self.v, self.in_split)}")
        parts.append(f"carrier=({self.tail_role}(u),{self.head_role}(v))")
        parts.append(f"len={self.length}")
        return f"(chain {' '.join(parts)})"


@dataclass(frozen=True)
class Collarette:
    kind: ClassVar[str] = "collarette"
    u: int
    v: int
    length: int

    def text(self) -> str:
        return f"(collarette u={self.u} v={self.v} len={self.length})"


@dataclass(frozen=True)
class Bracelet:
    """``side="in"`` subdivides (a,w); ``side="out"`` subdivides (w,b)."""

    kind: ClassVar[str] = "bracelet"
    w: int
    x: int
    a: int
    y: int
    b: int
    side: str

    def text(self) -> str:
        return (
            f"(bracelet w={self.w} x={self.x} a={self.a} y={self.y} b={self.b} side={self.side})"
        )


Augmentation = Union[Basic, BasicDouble, Chain, Collarette, Bracelet]

KINDS = ("basic", "basic-double", "chain", "collarette", "bracelet")


def _set(v: int, xs: tuple[int, ...]) -> str:
    return f"({v};{','.join(map(str, xs))})"


def describe(a: Augmentation) -> str:
    return a.text()


def sort_key(a: Augmentation) -> tuple:
    def opt(t: tuple[int, ...] | None) -> tuple:
        return (0,) if t is None else (1, *t)

    k = KINDS.index(a.kind)
    if isinstance(a, Basic):
        return (k, a.u, a.v, opt(a.out_split), opt(a.in_split))
    if isinstance(a, BasicDouble):
        return (k, a.w, a.out_split, a.in_split)
    if isinstance(a, Chain):
        return (k, a.u, a.v, opt(a.out_split), opt(a.in_split), a.tail_role, a.head_role, a.length)
    if isinstance(a, Collarette):
        return (k, a.u, a.v, a.length)
    return (k, a.w, a.x, a.a, a.y, a.b, a.side)


_TOKEN = re.compile(r"([a-z-]+)=(\((?:[^()]|\([^()]*\))*\)|[^\s)]+)")


def _parse_set(text: str, owner: int) -> tuple[int, ...]:
    m = re.fullmatch(r"\((\d+);([\d,]*)\)", text)
    if not m or int(m.group(1)) != owner:
        raise ValueError(f"bad split set {text!r}")
    return tuple(sorted(int(x) for x in m.group(2).split(",") if x))


def parse_descriptor(text: str) -> Augmentation:
    """Inverse of :func:`describe`."""
    text = text.strip()
    m = re.fullmatch(r"\(([a-z-]+)\s+(.*)\)", text)
    if not m:
        raise ValueError(f"bad descriptor {text!r}")
    kind, body = m.group(1), m.group(2)
    fields = dict(_TOKEN.findall(body))
    try:
        if kind == "basic":
            u, v = int(fields["u"]), int(fields["v"])
            return Basic(
                u, v,
                _parse_set(fields["out-split"], u) if "out-split" in fields else None,
                _parse_set(fields["in-split"], v) if "in-split" in fields else None,
            )
        if kind == "basic-double":
            w = int(fields["w"])
            return BasicDouble(w, _parse_set(fields["out-split"], w), _parse_set(fields["in-split"], w))
        if kind == "chain":
            u, v = int(fields["u"]), int(fields["v"])
            cm = re.fullmatch(r"\(([be])\(u\),([be])\(v\)\)", fields["carrier"])
            if not cm:
                raise ValueError(f"bad carrier {fields['carrier']!r}")
            return Chain(
                u, v,
                _parse_set(fields["out-split"], u) if "out-split" in fields else None,
                _parse_set(fields["in-split"], v) if "in-split" in fields else None,
                cm.group(1), cm.group(2), int(fields["len"]),
            )
        if kind == "collarette":
            return Collarette(int(fields["u"]), int(fields["v"]), int(fields["len"]))
        if kind == "bracelet":
            return Bracelet(
                int(fields["w"]), int(fields["x"]), int(fields["a"]),
                int(fields["y"]), int(fields["b"]), fields["side"],
            )
    except KeyError as exc:
        raise ValueError(f"descriptor {text!r} lacks field {exc}") from None
    raise ValueError(f"unknown augmentation kind {kind!r}")


# -- application --------------------------------------------------------------


def _prepare(d: Digraph, u: int, v: int, out_split, in_split):
    """Perform the optional splits; returns (D', b(u), e(u), b(v), e(v))."""
    for w in (u, v):
        if not 0 <= w < d.n:
            raise NotAVertex(f"{w} is not a vertex")
    if u == v:
        raise PreconditionViolated("distinct", "u and v must differ")
    cur = d
    bu = eu = u
    bv = ev = v
    if out_split is not None:
        cur, bu, eu = split(cur, SplitSpec(u, "out", out_split))
    if in_split is not None:
        cur, bv, ev = split(cur, SplitSpec(v, "in", in_split))
    return cur, bu, eu, bv, ev


def bracelet_ok(d: Digraph, w: int, x: int, a: int, y: int, b: int) -> str | None:
    """Name of the first violated bracelet precondition, or None."""
    if set(d.pred[w]) != {x, a} or x == a:
        return "in-neighbourhood"
    if set(d.succ[w]) != {y, b} or y == b:
        return "out-neighbourhood"
    if not (a == y or ((x, a) in d.edges and (a, y) in d.edges)):
        return "a-condition"
    if not (x == b or ((x, b) in d.edges and (b, y) in d.edges)):
        return "b-condition"
    return None


def apply_augmentation(d: Digraph, a: Augmentation) -> Digraph:
    if isinstance(a, Basic):
        cur, _, eu, _, ev = _prepare(d, a.u, a.v, a.out_split, a.in_split)
        if (ev, eu) in cur.edges:
            raise PreconditionViolated("edge-absent", f"({ev},{eu}) already present")
        return cur.add_edges([(ev, eu)])
    if isinstance(a, BasicDouble):
        if not 0 <= a.w < d.n:
            raise NotAVertex(f"{a.w} is not a vertex")
        cur, bw, ew = split(d, SplitSpec(a.w, "out", a.out_split))
        cur, _, ebw = split(cur, SplitSpec(bw, "in", a.in_split))
        return cur.add_edges([(ebw, ew)])
    if isinstance(a, Chain):
        if a.length < 1:
            raise PreconditionViolated("chain-length", "length must be at least 1")
        if a.out_split is None and a.tail_role != "b" or a.in_split is None and a.head_role != "b":
            raise PreconditionViolated("carrier", "unsplit endpoints only have the b role")
        cur, bu, eu, bv, ev = _prepare(d, a.u, a.v, a.out_split, a.in_split)
        tail = bu if a.tail_role == "b" else eu
        head = bv if a.head_role == "b" else ev
        if (tail, head) not in cur.edges:
            raise PreconditionViolated("carrier", f"carrier edge ({tail},{head}) absent")
        return add_chain(cur, (tail, head), ev, eu, a.length)
    if isinstance(a, Collarette):
        u, v = a.u, a.v
        if u == v or (u, v) not in d.edges or (v, u) not in d.edges:
            raise PreconditionViolated("digon", f"no digon on {u},{v}")
        if a.length < 1:
            raise PreconditionViolated("chain-length", "length must be at least 1")
        cur, x = subdivide(d, (v, u))
        cur, y = subdivide(cur, (u, v))
        cur = cur.add_edges([(x, y)])
        return add_chain(cur, (x, y), y, x, a.length)
    if isinstance(a, Bracelet):
        if not 0 <= a.w < d.n:
            raise NotAVertex(f"{a.w} is not a vertex")
        bad = bracelet_ok(d, a.w, a.x, a.a, a.y, a.b)
        if bad:
            raise PreconditionViolated(bad, f"bracelet at {a.w}")
        if a.side not in ("in", "out"):
            raise PreconditionViolated("side", a.side)
        e = (a.a, a.w) if a.side == "in" else (a.w, a.b)
        cur, z = subdivide(d, e)
        return cur.add_edges([(a.x, z), (z, a.y)])
    raise TypeError(f"not an augmentation: {a!r}")


def added_vertices(a: Augmentation) -> int:
    if isinstance(a, Basic):
        return (a.out_split is not None) + (a.in_split is not None)
    if isinstance(a, BasicDouble):
        return 2
    if isinstance(a, Chain):
        return (a.out_split is not None) + (a.in_split is not None) + a.length
    if isinstance(a, Collarette):
        return 2 + a.length
    return 1


# -- enumeration --------------------------------------------------------------


def _split_sets(nbrs: tuple[int, ...]) -> list[tuple[int, ...]]:
    return [
        c for k in range(2, len(nbrs)) for c in itertools.combinations(sorted(nbrs), k)
    ]


def _iter_augmentations(d: Digraph, budget: int) -> Iterator[Augmentation]:
    n = d.n
    room = budget - n
    if room < 0:
        return
    for u in range(n):
        for v in range(n):
            if u == v:
                continue
            outs = [None] + (_split_sets(d.succ[u]) if room >= 1 else [])
            for os_ in outs:
                cur = d
                eu = bu = u
                if os_ is not None:
                    cur, bu, eu = split(d, SplitSpec(u, "out", os_))
                ins = [None] + (_split_sets(cur.pred[v]) if room >= 1 + (os_ is not None) else [])
                for is_ in ins:
                    used = (os_ is not None) + (is_ is not None)
                    if used > room:
                        continue
                    cur2, bv, ev = (cur, v, v) if is_ is None else split(cur, SplitSpec(v, "in", is_))
                    if (ev, eu) not in cur2.edges:
                        yield Basic(u, v, os_, is_)
                    tails = [("b", bu)] + ([("e", eu)] if os_ is not None else [])
                    heads = [("b", bv)] + ([("e", ev)] if is_ is not None else [])
                    for tr, t in tails:
                        for hr, hd in heads:
                            if (t, hd) in cur2.edges:
                                for length in range(1, room - used + 1):
                                    yield Chain(u, v, os_, is_, tr, hr, length)
    if room >= 2:
        for w in range(n):
            for os_ in _split_sets(d.succ[w]):
                cur, bw, _ = split(d, SplitSpec(w, "out", os_))
                for is_ in _split_sets(cur.pred[bw]):
                    yield BasicDouble(w, os_, is_)
    for u, v in sorted(d.edges):
        if (v, u) in d.edges:
            for length in range(1, room - 2 + 1):
                yield Collarette(u, v, length)
    if room >= 1:
        for w in range(n):
            if len(d.pred[w]) != 2 or len(d.succ[w]) != 2:
                continue
            for x, a in itertools.permutations(d.pred[w]):
                for y, b in itertools.permutations(d.succ[w]):
                    if bracelet_ok(d, w, x, a, y, b) is None:
                        for side in ("in", "out"):
                            yield Bracelet(w, x, a, y, b, side)


def enumerate_augmentations(d: Digraph, vertex_budget: int) -> list[tuple[Augmentation, Digraph]]:
    """Every valid augmentation of ``d`` with at most ``vertex_budget`` result vertices,
    in descriptor order."""
    descs = sorted(_iter_augmentations(d, vertex_budget), key=sort_key)
    return [(a, apply_augmentation(d, a)) for a in descs]


# -- inversion ----------------------------------------------------------------


def invert_augmentation(d: Digraph, a: Augmentation) -> Augmentation:
    """The augmentation of ``invert(d)`` whose result is isomorphic to the inverted
    result of ``a`` on ``d`` (roles of ``u`` and ``v`` swapped)."""
    if isinstance(a, (Basic, Chain)):
        n = d.n
        # exposed sets in the labels of the digraph each split is applied to
        new_out = None
        if a.in_split is not None:
            new_out = tuple(sorted(a.u if x == n and a.out_split is not None else x for x in a.in_split))
        new_in = None
        if a.out_split is not None:
            # after the swapped out-split at v, the (v,u) edge of invert(d) may sit on e(v)=n
            moved = new_out is not None and a.u in new_out
            new_in = tuple(sorted(n if x == a.v and moved else x for x in a.out_split))
        if isinstance(a, Basic):
            return Basic(a.v, a.u, new_out, new_in)
        return Chain(a.v, a.u, new_out, new_in, a.head_role, a.tail_role, a.length)
    if isinstance(a, BasicDouble):
        return BasicDouble(a.w, a.in_split, a.out_split)
    if isinstance(a, Collarette):
        return Collarette(a.u, a.v, a.length)
    return Bracelet(a.w, a.y, a.b, a.x, a.a, "out" if a.side == "in" else "in")
