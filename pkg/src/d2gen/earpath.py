"""Ear-paths of an expansion: classification, lacing, switching, blocking vertices, escapes."""

from __future__ import annotations

import graphlib
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

from .digraph import Digraph, Edge
from .errors import InvalidModel, NotAnEarPath, NotOnRootPath, NotSwitching, TrichotomyViolation
from .model import (
    ButterflyModel,
    Decoration,
    Path,
    Report,
    decorate,
    invert_model,
    model_from_expansion,
    path_edges,
    validate_model,
)


@dataclass(frozen=True)
class EarPath:
    vertices: Path

    @property
    def start(self) -> int:
        return self.vertices[0]

    @property
    def end(self) -> int:
        return self.vertices[-1]

    @property
    def edges(self) -> list[Edge]:
        return path_edges(self.vertices)

    def reversed(self) -> EarPath:
        return EarPath(tuple(reversed(self.vertices)))

    def __str__(self) -> str:
        return " ".join(map(str, self.vertices))

    @classmethod
    def parse(cls, text: str) -> EarPath:
        return cls(tuple(int(x) for x in text.split()))


@dataclass(frozen=True)
class Switching:
    edge: Edge
    parallel: bool
    name: str = "switching"


@dataclass(frozen=True)
class Bad:
    vertex: int
    name: str = "bad"


@dataclass(frozen=True)
class Augmenting:
    variant: str  # "A1".."A4"
    u: int
    v: int
    name: str = "augmenting"


EarPathClass = Union[Switching, Bad, Augmenting]


# -- enumeration ----------------------------------------------------------------


def enumerate_earpaths(d: Digraph, m: ButterflyModel) -> list[EarPath]:
    """Every ear-path of the expansion of ``m`` in ``d``, sorted by vertex sequence."""
    jv = m.expansion_vertices()
    je = m.expansion_edges()
    found: list[Path] = [e for e in d.sorted_edges() if e[0] in jv and e[1] in jv and e not in je]
    for s in sorted(jv):
        stack: list[tuple[int, ...]] = [(s, x) for x in d.succ[s] if x not in jv]
        while stack:
            path = stack.pop()
            for y in d.succ[path[-1]]:
                if y in jv:
                    if y != s:
                        found.append(path + (y,))
                elif y not in path:
                    stack.append(path + (y,))
    return [EarPath(tuple(p)) for p in sorted(found)]


def check_earpath(p: EarPath, dec: Decoration, host: Digraph | None = None) -> None:
    host = host or dec.host
    vs = p.vertices
    if len(vs) < 2 or len(set(vs)) != len(vs):
        raise NotAnEarPath(f"{p} is not a path")
    for e in p.edges:
        if e not in host.edges:
            raise NotAnEarPath(f"edge {e} of {p} not in host")
    if vs[0] not in dec.vertices or vs[-1] not in dec.vertices:
        raise NotAnEarPath(f"{p} does not start and end in the expansion")
    if any(x in dec.vertices for x in vs[1:-1]):
        raise NotAnEarPath(f"{p} meets the expansion internally")
    if len(vs) == 2 and (vs[0], vs[1]) in dec.edges:
        raise NotAnEarPath(f"{p} is an expansion edge")


# -- predicates -------------------------------------------------------------------


def _acyclic(edges: Iterable[Edge]) -> bool:
    graph: dict[int, set[int]] = {}
    for a, b in edges:
        graph.setdefault(b, set()).add(a)
    try:
        tuple(graphlib.TopologicalSorter(graph).static_order())
    except graphlib.CycleError:
        return False
    return True


def _reaches(edges: Iterable[Edge], s: int, t: int) -> bool:
    succ: dict[int, list[int]] = {}
    for a, b in edges:
        succ.setdefault(a, []).append(b)
    seen = {s}
    stack = [s]
    while stack:
        x = stack.pop()
        if x == t:
            return True
        for y in succ.get(x, ()):
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return False


class _Sets:
    """Vertex sets of the decoration, indexed by pattern vertex."""

    def __init__(self, dec: Decoration) -> None:
        self.so = [s.vertices for s in dec.out_star]
        self.si = [s.vertices for s in dec.in_star]
        self.to = [t.vertices for t in dec.out_tree]
        self.ti = [t.vertices for t in dec.in_tree]
        self.r = [frozenset(p) for p in dec.root_path]


def switching_edges(p: EarPath, dec: Decoration) -> list[tuple[Edge, bool]]:
    """Pattern edges for which ``p`` satisfies S1-S3, with the parallel flag."""
    s, t = p.start, p.end
    z = _Sets(dec)
    out = []
    for u, v in dec.pattern.sorted_edges():
        if s not in z.so[u] | z.ti[v] | z.r[v] or t not in z.r[u] | z.to[u] | z.si[v]:
            continue
        if s not in z.so[u] and t not in z.si[v]:
            continue
        base = dec.bridge_graph_edges(u, v)
        if not _acyclic(base | set(p.edges)):
            continue
        out.append(((u, v), _reaches(base, s, t)))
    return out


def bad_vertices(p: EarPath, dec: Decoration) -> list[int]:
    s, t = p.start, p.end
    z = _Sets(dec)
    out = []
    for w in dec.pattern.vertices():
        stars = z.si[w] | z.so[w]
        if s in stars and t in stars:
            if not _acyclic(dec.in_star[w].edges | dec.out_star[w].edges | set(p.edges)):
                out.append(w)
    return out


def augmenting_witnesses(p: EarPath, dec: Decoration) -> list[tuple[str, int, int]]:
    s, t = p.start, p.end
    z = _Sets(dec)
    pat = dec.pattern
    out = []
    for u in pat.vertices():
        if s not in z.ti[u] | z.so[u]:
            continue
        for v in pat.vertices():
            if t not in z.si[v] | z.to[v]:
                continue
            if s in z.so[u] and t in z.si[v] and u != v and (u, v) not in pat.edges:
                out.append(("A1", u, v))
            if s in z.ti[u] - z.r[u] and t in z.to[v] - z.r[v]:
                out.append(("A2", u, v))
            if s in z.ti[u] - z.r[u] and t in z.si[v] and u != v:
                out.append(("A3", u, v))
            if s in z.so[u] and t in z.to[v] - z.r[v] and u != v:
                out.append(("A4", u, v))
    return sorted(out)


def is_switching(p: EarPath, dec: Decoration) -> bool:
    return bool(switching_edges(p, dec))


def is_bad(p: EarPath, dec: Decoration) -> bool:
    return bool(bad_vertices(p, dec))


def is_augmenting(p: EarPath, dec: Decoration) -> bool:
    return bool(augmenting_witnesses(p, dec))


def classify_earpath(p: EarPath, dec: Decoration, host: Digraph | None = None) -> EarPathClass:
    """The unique class of ``p``; the three predicate families are evaluated independently."""
    check_earpath(p, dec, host)
    sw = switching_edges(p, dec)
    bad = bad_vertices(p, dec)
    aug = augmenting_witnesses(p, dec)
    hits = [name for name, got in (("switching", sw), ("bad", bad), ("augmenting", aug)) if got]
    if len(hits) != 1:
        raise TrichotomyViolation(f"ear-path {p} is {hits or 'unclassified'}")
    if sw:
        return Switching(*sw[0])
    if bad:
        return Bad(bad[0])
    return Augmenting(*aug[0])


# -- lacing ---------------------------------------------------------------------


def _components(p: Sequence[int], q: Sequence[int]) -> list[tuple[int, int]]:
    """Components of P ∩ Q as (first, last) vertex pairs, in order along P."""
    shared = set(q)
    qe = set(path_edges(q))
    comps: list[list[int]] = []
    for i, x in enumerate(p):
        if x not in shared:
            continue
        if comps and i > 0 and (p[i - 1], x) in qe and comps[-1][-1] == p[i - 1]:
            comps[-1].append(x)
        else:
            comps.append([x])
    return [(c[0], c[-1]) for c in comps]


def lace_components(p: Sequence[int], q: Sequence[int]) -> int:
    return len(_components(p, q))


def is_laced(p: Sequence[int], q: Sequence[int]) -> bool:
    comps = _components(p, q)
    pos = {x: i for i, x in enumerate(q)}
    # later components along P must come earlier along Q
    return all(pos[comps[j][1]] < pos[comps[j - 1][0]] for j in range(1, len(comps)))


def is_properly_laced(p: Sequence[int], q: Sequence[int]) -> bool:
    return bool(set(p) & set(q)) and is_laced(p, q)


def _paths_between(edges: set[Edge], s: int, t: int) -> list[Path]:
    succ: dict[int, list[int]] = {}
    for a, b in sorted(edges):
        succ.setdefault(a, []).append(b)
    found: list[Path] = []
    stack: list[tuple[int, ...]] = [(s,)]
    while stack:
        path = stack.pop()
        if path[-1] == t:
            found.append(path)
            continue
        for y in succ.get(path[-1], ()):
            if y not in path:
                stack.append(path + (y,))
    return found


def lace(p: Sequence[int], q: Sequence[int]) -> Path:
    """A Start(q)-End(q) path in p ∪ q with fewest components of intersection with p.

    Ties go to the lexicographically smallest vertex sequence.
    """
    q = tuple(q)
    if len(q) == 1:
        return q
    edges = set(path_edges(p)) | set(path_edges(q))
    cands = _paths_between(edges, q[0], q[-1])
    return min(cands, key=lambda c: (lace_components(p, c), c))


# -- switching --------------------------------------------------------------------


def _star_path(edges: frozenset[Edge], sources: set[int], target: int, forward: bool) -> Path:
    """Path inside an arborescence from the set ``sources`` to ``target`` (or reversed)."""
    step: dict[int, int] = {}
    for a, b in edges:
        if forward:
            step[b] = a
        else:
            step[a] = b
    chain = [target]
    while chain[-1] not in sources:
        if chain[-1] not in step:
            raise InvalidModel(f"{target} not below {sorted(sources)}")
        chain.append(step[chain[-1]])
    return tuple(reversed(chain)) if forward else tuple(chain)


def _rebuild(dec: Decoration, edges: set[Edge], sets: list[set[int]]) -> ButterflyModel:
    m = model_from_expansion(dec.host, dec.pattern, edges, sets)
    rep = validate_model(m)
    if not rep:
        raise InvalidModel(f"switching produced an invalid model: {rep}")
    return m


def switch_onto(m: ButterflyModel, p: EarPath) -> ButterflyModel:
    """The model whose expansion is obtained by switching onto ``p``."""
    dec = decorate(m)
    check_earpath(p, dec)
    sw = switching_edges(p, dec)
    if not sw:
        raise NotSwitching(f"{p} is not switching")
    (u, v), _ = sw[0]
    z = _Sets(dec)
    s, t = p.start, p.end
    sets = [set(dec.branchset(w)) for w in dec.pattern.vertices()]
    edges = set(dec.edges) | set(p.edges)
    if s in z.so[u] and t in z.si[v]:
        q = dec.bridges[(u, v)]
        i1 = q.index(s) if s in q else 0
        i2 = q.index(t) if t in q else len(q) - 1
        seg = q[i1:i2 + 1]
        edges -= set(path_edges(seg))
        edges = {e for e in edges if e[0] not in seg[1:-1] and e[1] not in seg[1:-1]}
        sets[u] |= set(_star_path(dec.out_star[u].edges, set(dec.branchset(u)), s, True))
        sets[v] |= set(_star_path(dec.in_star[v].edges, set(dec.branchset(v)), t, False))
        return _rebuild(dec, edges, sets)
    if t not in z.si[v]:
        trunk = set(dec.out_tree[u].vertices) | set(dec.root_path[u])
        trunk_edges = set(dec.out_tree[u].edges) | set(path_edges(dec.root_path[u]))
        o = _star_path(frozenset(trunk_edges), {dec.root_path[u][0]}, t, True)
        succ_count = {x: sum(1 for a, _ in dec.edges if a == x) for x in o}
        x_idx = max(i for i, x in enumerate(o[:-1]) if x == s or succ_count[x] >= 2)
        seg = o[x_idx:]
        inner = set(seg[1:-1])
        edges -= set(path_edges(seg))
        edges = {e for e in edges if e[0] not in inner and e[1] not in inner}
        sets[u] -= inner
        sets[u] |= set(p.vertices)
        sets[u] |= set(_star_path(dec.out_star[u].edges, trunk, s, True))
        return _rebuild(dec, edges, sets)
    # remaining case is the dual of the previous one
    back = switch_onto(invert_model(m), p.reversed())
    return invert_model(back)


# -- blocking vertices ------------------------------------------------------------


def is_blocking_vertex(dec: Decoration, v: int, r: int, host: Digraph | None = None) -> bool:
    host = host or dec.host
    rp = dec.root_path[v]
    if r not in rp:
        raise NotOnRootPath(f"{r} is not on the root path of {v}")
    i = rp.index(r)
    head, tail = set(rp[: i + 1]), set(rp[i:])
    for p in enumerate_earpaths(host, dec.model):
        if not is_switching(p, dec):
            continue
        if p.start in head - {r} and p.end not in head:
            return False
        if p.start not in tail and p.end in tail - {r}:
            return False
    return True


# -- escapes ----------------------------------------------------------------------


@dataclass(frozen=True)
class Escape:
    edge: Edge
    segments: tuple[Path, ...]

    @property
    def duration(self) -> int:
        return (len(self.segments) - 1) // 2

    def path(self) -> Path:
        out = list(self.segments[0])
        for seg in self.segments[1:]:
            out.extend(seg[1:])
        return tuple(out)

    def reversed(self) -> Escape:
        u, v = self.edge
        return Escape((v, u), tuple(tuple(reversed(s)) for s in reversed(self.segments)))

    def __str__(self) -> str:
        body = " | ".join(" ".join(map(str, s)) for s in self.segments)
        return f"{self.edge[0]} {self.edge[1]} : {body}"

    @classmethod
    def parse(cls, text: str) -> Escape:
        head, _, body = text.partition(":")
        u, v = (int(x) for x in head.split())
        segs = tuple(tuple(int(x) for x in s.split()) for s in body.split("|"))
        return cls((u, v), segs)


def intersection_path(dec: Decoration, u: int, v: int) -> Path:
    """The path S^in_v ∩ S^out_u, as a vertex sequence."""
    vs = dec.in_star[v].vertices & dec.out_star[u].vertices
    es = dec.in_star[v].edges & dec.out_star[u].edges
    if not vs:
        return ()
    if not es:
        return (next(iter(vs)),) if len(vs) == 1 else ()
    succ = dict(es)
    start = next(a for a, _ in es if a not in {b for _, b in es})
    out = [start]
    while out[-1] in succ:
        out.append(succ[out[-1]])
    return tuple(out)


def validate_escape(esc: Escape, dec: Decoration, host: Digraph | None = None) -> Report:
    host = host or dec.host
    u, v = esc.edge
    segs = esc.segments
    pat = dec.pattern
    if (u, v) not in pat.edges:
        return Report(False, "edge", f"({u},{v}) not a pattern edge")
    if len(segs) < 3 or len(segs) % 2 == 0:
        return Report(False, "duration", f"{len(segs)} segments do not give k >= 1")
    if any(len(s) == 0 for s in segs):
        return Report(False, "concatenation", "empty segment")
    for a, b in zip(segs, segs[1:]):
        if a[-1] != b[0]:
            return Report(False, "concatenation", f"{a} does not meet {b}")
    whole = esc.path()
    if len(set(whole)) != len(whole) or any(e not in host.edges for e in path_edges(whole)):
        return Report(False, "concatenation", "segments do not form a host path")
    z = _Sets(dec)
    q = intersection_path(dec, u, v)
    inter = set(q)
    q_edges = set(path_edges(q))

    def ear(seg: Path) -> EarPath | None:
        p = EarPath(seg)
        try:
            check_earpath(p, dec, host)
        except NotAnEarPath:
            return None
        return p

    def non_parallel(p: EarPath) -> bool:
        return any(not par for _, par in switching_edges(p, dec))

    k = esc.duration
    p0 = ear(segs[0])
    if p0 is None or p0.end not in inter:
        return Report(False, "a", "first segment is not an ear-path ending in the intersection")
    others_in = [x for x in pat.pred[v] if x != u]
    ok_sw = non_parallel(p0) and any(
        p0.start in (z.so[x] | z.ti[v]) - z.r[v] for x in others_in
    )
    ok_bad = is_bad(p0, dec) and p0.start in z.ti[v] | z.so[v]
    if not (ok_sw or ok_bad):
        return Report(False, "a", f"first segment {p0} has the wrong class or start")
    for i in range(1, 2 * k):
        seg = segs[i]
        if i % 2:
            if not set(seg) <= inter or not set(path_edges(seg)) <= q_edges:
                return Report(False, "b", f"segment {i} leaves the intersection path")
        else:
            p = ear(seg)
            if p is None or not is_bad(p, dec) or p.start not in inter or p.end not in inter:
                return Report(False, "c", f"segment {i} is not a bad path inside the intersection")
    pk = ear(segs[-1])
    if pk is None or pk.start not in inter:
        return Report(False, "d", "last segment is not an ear-path starting in the intersection")
    others_out = [w for w in pat.succ[u] if w != v]
    ok_sw = non_parallel(pk) and any(
        pk.end in (z.si[w] | z.to[u]) - z.r[u] for w in others_out
    )
    ok_bad = is_bad(pk, dec) and pk.end in z.si[u] | z.to[u]
    if not (ok_sw or ok_bad):
        return Report(False, "d", f"last segment {pk} has the wrong class or end")
    if not q or not is_properly_laced(whole, q):
        return Report(False, "e", "escape is not properly laced with the intersection path")
    if not (p0.start in z.si[v] - z.so[u] or pk.end in z.so[u] - z.si[v]):
        return Report(False, "f", "neither end leaves the intersection on the required side")
    return Report(True)
