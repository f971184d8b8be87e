"""Butterfly models (expansions) and their in/out trees, stars, root paths and bridges."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .digraph import CANONICAL_BOUND, Digraph, Edge
from .errors import InvalidModel, SizeBoundExceeded

Path = tuple[int, ...]


def path_edges(path: Sequence[int]) -> list[Edge]:
    return list(zip(path, path[1:]))


@dataclass(frozen=True)
class Branch:
    """Branch set of one pattern vertex: an in- and an out-branching sharing ``root``."""

    root: int
    in_edges: frozenset[Edge] = frozenset()
    out_edges: frozenset[Edge] = frozenset()

    @property
    def in_vertices(self) -> frozenset[int]:
        return frozenset({self.root, *itertools.chain.from_iterable(self.in_edges)})

    @property
    def out_vertices(self) -> frozenset[int]:
        return frozenset({self.root, *itertools.chain.from_iterable(self.out_edges)})

    @property
    def vertices(self) -> frozenset[int]:
        return self.in_vertices | self.out_vertices

    @property
    def edges(self) -> frozenset[Edge]:
        return self.in_edges | self.out_edges


@dataclass(frozen=True)
class ButterflyModel:
    host: Digraph
    pattern: Digraph
    branches: tuple[Branch, ...]
    paths: Mapping[Edge, Path]

    def expansion_vertices(self) -> frozenset[int]:
        vs: set[int] = set()
        for b in self.branches:
            vs |= b.vertices
        for p in self.paths.values():
            vs.update(p)
        return frozenset(vs)

    def expansion_edges(self) -> frozenset[Edge]:
        es: set[Edge] = set()
        for b in self.branches:
            es |= b.edges
        for p in self.paths.values():
            es.update(path_edges(p))
        return frozenset(es)

    def owner(self) -> dict[int, int]:
        """Host vertex -> pattern vertex whose branch set contains it."""
        return {x: v for v, b in enumerate(self.branches) for x in b.vertices}


def identity_model(d: Digraph) -> ButterflyModel:
    return ButterflyModel(
        d, d, tuple(Branch(v) for v in range(d.n)), {e: e for e in d.sorted_edges()}
    )


def invert_model(m: ButterflyModel) -> ButterflyModel:
    """The model of the inverted pattern in the inverted host."""
    from .digraph import invert

    branches = tuple(
        Branch(
            b.root,
            frozenset((y, x) for x, y in b.out_edges),
            frozenset((y, x) for x, y in b.in_edges),
        )
        for b in m.branches
    )
    paths = {(t, s): tuple(reversed(p)) for (s, t), p in m.paths.items()}
    return ButterflyModel(invert(m.host), invert(m.pattern), branches, paths)


# -- validation --------------------------------------------------------------


@dataclass
class Report:
    ok: bool
    clause: str | None = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        return "ok" if self.ok else f"violated {self.clause}: {self.detail}"


def _is_branching(root: int, edges: frozenset[Edge], inward: bool) -> bool:
    """Arborescence check: every non-root vertex has exactly one edge towards the root."""
    step: dict[int, int] = {}
    for a, b in edges:
        x, y = (a, b) if inward else (b, a)
        if x in step or x == root:
            return False
        step[x] = y
    for x in step:
        seen = 0
        while x != root:
            x = step.get(x, -1)
            seen += 1
            if x == -1 or seen > len(step):
                return False
    return True


def validate_model(m: ButterflyModel) -> Report:
    host, pat = m.host, m.pattern
    if len(m.branches) != pat.n:
        return Report(False, "coverage", f"{len(m.branches)} branch sets for {pat.n} vertices")
    if set(m.paths) != set(pat.edges):
        return Report(False, "coverage", "edge paths do not match pattern edges")
    for v, b in enumerate(m.branches):
        if not 0 <= b.root < host.n:
            return Report(False, "host", f"root of {v} outside host")
        bad = [e for e in b.edges if e not in host.edges]
        if bad:
            return Report(False, "host", f"branch {v} uses non-edge {bad[0]}")
    for e, p in m.paths.items():
        if len(p) < 2 or len(set(p)) != len(p):
            return Report(False, "edge-path", f"{e} is not mapped to a path")
        bad = [f for f in path_edges(p) if f not in host.edges]
        if bad:
            return Report(False, "host", f"path of {e} uses non-edge {bad[0]}")
    seen: dict[int, int] = {}
    for v, b in enumerate(m.branches):
        for x in b.vertices:
            if x in seen:
                return Report(False, "disjointness", f"vertex {x} in branch sets {seen[x]} and {v}")
            seen[x] = v
    for v, b in enumerate(m.branches):
        if not _is_branching(b.root, b.in_edges, inward=True):
            return Report(False, "in-branching", f"branch {v}")
        if not _is_branching(b.root, b.out_edges, inward=False):
            return Report(False, "out-branching", f"branch {v}")
        if b.in_vertices & b.out_vertices != {b.root}:
            return Report(False, "common-root", f"branch {v} in/out parts meet off the root")
    interiors: dict[int, Edge] = {}
    for e, p in m.paths.items():
        s, t = e
        if p[0] not in m.branches[s].out_vertices:
            return Report(False, "edge-path", f"{e} does not start in the out-branching of {s}")
        if p[-1] not in m.branches[t].in_vertices:
            return Report(False, "edge-path", f"{e} does not end in the in-branching of {t}")
        for x in p[1:-1]:
            if x in seen:
                return Report(False, "path-disjointness", f"interior {x} of {e} meets branch {seen[x]}")
            if x in interiors:
                return Report(False, "path-disjointness", f"paths {interiors[x]} and {e} share {x}")
            interiors[x] = e
    for e, p in m.paths.items():
        for x in (p[0], p[-1]):
            if x in interiors:
                return Report(False, "path-disjointness", f"endpoint {x} of {e} inside {interiors[x]}")
    return Report(True)


# -- building models from expansions ------------------------------------------


def _split_branch(vertices: frozenset[int], edges: set[Edge],
                  entries: Iterable[int] = (), exits: Iterable[int] = ()) -> Branch | None:
    """Find a root making ``edges`` (inside ``vertices``) an in- plus out-branching.

    Vertices in ``entries`` must land in the in-branching and ``exits`` in the out-branching.
    """
    entries, exits = set(entries), set(exits)
    succ: dict[int, list[int]] = {x: [] for x in vertices}
    pred: dict[int, list[int]] = {x: [] for x in vertices}
    for a, b in edges:
        succ[a].append(b)
        pred[b].append(a)

    def closure(start: int, nbrs: dict[int, list[int]]) -> set[int]:
        seen = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in nbrs[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return seen

    for r in sorted(vertices):
        ins = closure(r, pred)
        outs = closure(r, succ)
        if ins & outs != {r} or ins | outs != vertices:
            continue
        if not entries <= ins or not exits <= outs:
            continue
        in_edges = frozenset((a, b) for a, b in edges if a in ins and b in ins)
        out_edges = frozenset((a, b) for a, b in edges if a in outs and b in outs)
        if len(in_edges) + len(out_edges) != len(edges):
            continue
        if _is_branching(r, in_edges, True) and _is_branching(r, out_edges, False):
            return Branch(r, in_edges, out_edges)
    return None


def model_from_expansion(host: Digraph, pattern: Digraph, edges: Iterable[Edge],
                         branch_sets: Sequence[Iterable[int]]) -> ButterflyModel:
    """Recover the model of ``pattern`` whose expansion is exactly ``edges``.

    ``branch_sets[v]`` is the vertex set of the branch set of ``v``; everything
    else in the expansion must be interior to edge paths.
    """
    edges = set(edges)
    sets = [frozenset(s) for s in branch_sets]
    owner = {x: v for v, s in enumerate(sets) for x in s}
    branches = []
    for v, s in enumerate(sets):
        inner = {(a, b) for a, b in edges if a in s and b in s}
        entries = {b for a, b in edges if b in s and a not in s}
        exits = {a for a, b in edges if a in s and b not in s}
        br = _split_branch(s, inner, entries, exits)
        if br is None:
            raise InvalidModel(f"branch set {sorted(s)} of {v} is not an in/out-branching pair")
        branches.append(br)
    succ: dict[int, list[int]] = {}
    for a, b in edges:
        succ.setdefault(a, []).append(b)
    paths: dict[Edge, Path] = {}
    for a, b in sorted(edges):
        if a not in owner or owner.get(b) == owner[a]:
            continue
        path = [a, b]
        while path[-1] not in owner:
            nxt = succ.get(path[-1], [])
            if len(nxt) != 1 or nxt[0] in path:
                raise InvalidModel(f"expansion leaves {path[-1]} ambiguously")
            path.append(nxt[0])
        e = (owner[a], owner[path[-1]])
        if e not in pattern.edges or e in paths:
            raise InvalidModel(f"connection {path} does not realise a unique pattern edge")
        paths[e] = tuple(path)
    covered = set()
    for b in branches:
        covered |= b.edges
    for p in paths.values():
        covered.update(path_edges(p))
    if covered != edges:
        raise InvalidModel(f"unused expansion edges {sorted(edges - covered)}")
    return ButterflyModel(host, pattern, tuple(branches), paths)


def trim_model(m: ButterflyModel) -> ButterflyModel:
    """Drop branch leaves that no edge path uses."""
    starts = {p[0] for p in m.paths.values()}
    ends = {p[-1] for p in m.paths.values()}
    branches = []
    for b in m.branches:
        ins, outs = set(b.in_edges), set(b.out_edges)
        changed = True
        while changed:
            changed = False
            for a, c in list(ins):
                if a not in ends and not any(y == a for _, y in ins):
                    ins.discard((a, c))
                    changed = True
            for a, c in list(outs):
                if c not in starts and not any(x == c for x, _ in outs):
                    outs.discard((a, c))
                    changed = True
        branches.append(Branch(b.root, frozenset(ins), frozenset(outs)))
    return ButterflyModel(m.host, m.pattern, tuple(branches), dict(m.paths))


# -- model search -------------------------------------------------------------


def _reaches_all(root: int, part: frozenset[int], masks: Sequence[int]) -> bool:
    pm = 0
    for x in part:
        pm |= 1 << x
    seen = 1 << root
    frontier = seen
    while frontier:
        nxt = 0
        f = frontier
        while f:
            low = f & -f
            nxt |= masks[low.bit_length() - 1]
            f ^= low
        frontier = nxt & pm & ~seen
        seen |= frontier
    return seen == pm


def _tree(root: int, part: frozenset[int], masks: Sequence[int], inward: bool) -> frozenset[Edge]:
    """Breadth-first spanning arborescence of ``part`` at ``root``."""
    edges = set()
    seen = {root}
    layer = [root]
    while layer:
        nxt = []
        for x in layer:
            m = masks[x]
            for y in sorted(part):
                if y not in seen and m >> y & 1:
                    seen.add(y)
                    nxt.append(y)
                    edges.add((y, x) if inward else (x, y))
        layer = nxt
    return frozenset(edges)


def _configs(xs: frozenset[int], d: Digraph) -> list[tuple[int, frozenset[int], frozenset[int]]]:
    """(root, in-part, out-part) splits of ``xs`` with spanning branchings."""
    found = []
    items = sorted(xs)
    for r in items:
        rest = [x for x in items if x != r]
        for k in range(len(rest) + 1):
            for outs in itertools.combinations(rest, k):
                out_part = frozenset((r, *outs))
                in_part = frozenset(xs - set(outs))
                if _reaches_all(r, out_part, d.out_masks) and _reaches_all(r, in_part, d.in_masks):
                    found.append((r, in_part, out_part))
    return found


def find_expansion(h: Digraph, d: Digraph, bound: int = CANONICAL_BOUND) -> ButterflyModel | None:
    """Backtracking search for a butterfly model of ``h`` in ``d``.

    Host vertices are assigned to pattern vertices or left unused (in index
    order, pattern vertices before "unused"); each assignment is then split into
    root, in-part and out-part per branch set and checked for one host edge per
    pattern edge. Edge paths of the raw model are single edges; unused branch
    leaves are trimmed afterwards. The first model in this order is returned.
    """
    if h.n > bound or d.n > bound:
        raise SizeBoundExceeded(f"model search bounded to n <= {bound}")
    k, n = h.n, d.n
    if k > n or h.m > d.m:
        return None
    if k == 0:
        return ButterflyModel(d, h, (), {})
    pattern_edges = h.sorted_edges()
    assign = [-1] * n
    count = [0] * k
    config_cache: dict[frozenset[int], list] = {}

    def configs(xs: frozenset[int]):
        got = config_cache.get(xs)
        if got is None:
            got = config_cache[xs] = _configs(xs, d)
        return got

    def edge_between(src: frozenset[int], dst: frozenset[int]) -> Edge | None:
        for a in sorted(src):
            m = d.out_masks[a]
            for b in sorted(dst):
                if m >> b & 1:
                    return (a, b)
        return None

    def realise() -> ButterflyModel | None:
        sets = [frozenset(x for x in range(n) if assign[x] == v) for v in range(k)]
        for s, t in pattern_edges:
            if edge_between(sets[s], sets[t]) is None:
                return None
        options = [configs(s) for s in sets]
        if any(not o for o in options):
            return None
        chosen: list = [None] * k
        out_adj = [[] for _ in range(k)]
        in_adj = [[] for _ in range(k)]
        for s, t in pattern_edges:
            out_adj[s].append(t)
            in_adj[t].append(s)

        def fits(v: int) -> bool:
            _, in_v, out_v = chosen[v]
            for t in out_adj[v]:
                if chosen[t] is not None and edge_between(out_v, chosen[t][1]) is None:
                    return False
            for s in in_adj[v]:
                if chosen[s] is not None and edge_between(chosen[s][2], in_v) is None:
                    return False
            return True

        def go(v: int) -> bool:
            if v == k:
                return True
            for cfg in options[v]:
                chosen[v] = cfg
                if fits(v) and go(v + 1):
                    return True
            chosen[v] = None
            return False

        if not go(0):
            return None
        branches = tuple(
            Branch(r, _tree(r, ins, d.in_masks, True), _tree(r, outs, d.out_masks, False))
            for r, ins, outs in chosen
        )
        paths = {}
        for s, t in pattern_edges:
            e = edge_between(chosen[s][2], chosen[t][1])
            paths[(s, t)] = e
        return trim_model(ButterflyModel(d, h, branches, paths))

    def search(i: int, empty: int) -> ButterflyModel | None:
        if empty > n - i:
            return None
        if i == n:
            return realise()
        for label in list(range(k)) + [-1]:
            assign[i] = label
            if label >= 0:
                count[label] += 1
                got = search(i + 1, empty - (count[label] == 1))
                count[label] -= 1
            else:
                got = search(i + 1, empty)
            if got is not None:
                return got
        assign[i] = -1
        return None

    return search(0, k)


def model_from_script(h: Digraph, d: Digraph, script) -> ButterflyModel:
    """Turn a delete/contract witness script into a model of ``h`` in ``d``.

    The replayed digraph's vertices (sorted surviving host labels) are matched to
    ``h`` through canonical relabelling.
    """
    from .butterfly import replay_script
    from .digraph import canonical_form

    # state: label -> Branch-like (root, in-edges, out-edges); (a,b) label edge -> path
    branch = {v: Branch(v) for v in range(d.n)}
    paths: dict[Edge, Path] = {e: e for e in d.edges}
    for step in script:
        kind = step[0]
        if kind == "D":
            del paths[(step[1], step[2])]
        elif kind == "DV":
            v = step[1]
            del branch[v]
            for e in [e for e in paths if v in e]:
                del paths[e]
        else:
            _, u, v = step
            p = paths.pop((u, v))
            bu, bv = branch.pop(u), branch[v]
            del branch[v]
            u_out = sum(1 for a, _ in paths if a == u) == 0
            if u_out:
                # u had no other out-edge: hang u's in-branching and p off v's in-branching
                chain = _branch_path(bu.out_edges, bu.root, p[0])
                ins = set(bv.in_edges) | set(bu.in_edges) | set(path_edges(chain)) | set(path_edges(p))
                merged = Branch(bv.root, frozenset(ins), bv.out_edges)
            else:
                chain = _branch_path(bv.in_edges, p[-1], bv.root)
                outs = set(bu.out_edges) | set(bv.out_edges) | set(path_edges(p)) | set(path_edges(chain))
                merged = Branch(bu.root, bu.in_edges, frozenset(outs))
            branch[u] = merged
            new_paths: dict[Edge, Path] = {}
            for (a, b), q in sorted(paths.items()):
                a2 = u if a == v else a
                b2 = u if b == v else b
                if a2 == b2 or (a2, b2) in new_paths:
                    continue
                new_paths[(a2, b2)] = q
            paths = new_paths
    labels = sorted(branch)
    result = replay_script(d, script)
    if result.n != h.n or canonical_form(result) != canonical_form(h):
        raise InvalidModel("script does not produce the pattern")
    mapping = next(
        perm for perm in itertools.permutations(range(h.n)) if result.relabel(perm) == h
    )
    branches: list[Branch | None] = [None] * h.n
    for i, lab in enumerate(labels):
        branches[mapping[i]] = branch[lab]
    idx = {lab: mapping[i] for i, lab in enumerate(labels)}
    model_paths = {(idx[a], idx[b]): q for (a, b), q in paths.items()}
    return trim_model(ButterflyModel(d, h, tuple(branches), model_paths))


def _branch_path(edges: frozenset[Edge], start: int, end: int) -> Path:
    """The unique ``start``-``end`` path inside an arborescence's edge set."""
    succ: dict[int, list[int]] = {}
    for a, b in edges:
        succ.setdefault(a, []).append(b)
    stack = [(start, (start,))]
    while stack:
        x, p = stack.pop()
        if x == end:
            return p
        for y in succ.get(x, []):
            if y not in p:
                stack.append((y, p + (y,)))
    raise InvalidModel(f"no {start}-{end} path in branching")


# -- decoration ----------------------------------------------------------------


@dataclass(frozen=True)
class Arborescence:
    root: int
    vertices: frozenset[int]
    edges: frozenset[Edge]


@dataclass(frozen=True)
class Decoration:
    model: ButterflyModel
    vertices: frozenset[int]
    edges: frozenset[Edge]
    in_tree: tuple[Arborescence, ...]
    out_tree: tuple[Arborescence, ...]
    in_star: tuple[Arborescence, ...]
    out_star: tuple[Arborescence, ...]
    root_path: tuple[Path, ...]
    bridges: Mapping[Edge, Path] = field(default_factory=dict)

    @property
    def pattern(self) -> Digraph:
        return self.model.pattern

    @property
    def host(self) -> Digraph:
        return self.model.host

    def branchset(self, v: int) -> frozenset[int]:
        return self.out_tree[v].vertices | self.in_tree[v].vertices | frozenset(self.root_path[v])

    def bridge_graph_edges(self, u: int, v: int) -> frozenset[Edge]:
        """Edges of S^out_u, S^in_v and every edge from S^out_u into S^in_v."""
        so, si = self.out_star[u], self.in_star[v]
        cross = {(a, b) for a, b in self.edges if a in so.vertices and b in si.vertices}
        return so.edges | si.edges | frozenset(cross)


def _minimal_arborescence(root: int, edges: frozenset[Edge], targets: set[int],
                          inward: bool) -> Arborescence:
    """Smallest sub-arborescence of a branching containing ``targets``."""
    if not targets:
        return Arborescence(root, frozenset({root}), frozenset())
    step: dict[int, int] = {}
    for a, b in edges:
        if inward:
            step[a] = b
        else:
            step[b] = a
    chains = []
    for t in sorted(targets):
        chain = [t]
        while chain[-1] != root:
            chain.append(step[chain[-1]])
        chains.append(chain)
    common = set(chains[0])
    for c in chains[1:]:
        common &= set(c)
    # the meeting point is the first common vertex along any chain
    meet = next(x for x in chains[0] if x in common)
    vs: set[int] = set()
    es: set[Edge] = set()
    for c in chains:
        for x in c:
            vs.add(x)
            if x == meet:
                break
            y = step[x]
            es.add((x, y) if inward else (y, x))
    return Arborescence(meet, frozenset(vs), frozenset(es))


def _grow_star(tree: Arborescence, succ: dict[int, list[int]], pred: dict[int, list[int]],
               inward: bool) -> Arborescence:
    """Maximal extension whose non-root vertices have degree one away from the root."""
    fwd, back = (succ, pred) if inward else (pred, succ)
    vs = set(tree.vertices)
    es = set(tree.edges)
    root = tree.root
    while len(fwd[root]) == 1 and fwd[root][0] not in vs:
        nxt = fwd[root][0]
        vs.add(nxt)
        es.add((root, nxt) if inward else (nxt, root))
        root = nxt
    stack = sorted(vs)
    while stack:
        y = stack.pop()
        for x in back[y]:
            if x not in vs and len(fwd[x]) == 1:
                vs.add(x)
                es.add((x, y) if inward else (y, x))
                stack.append(x)
    return Arborescence(root, frozenset(vs), frozenset(es))


def _order_path(edges: set[Edge]) -> Path:
    if not edges:
        return ()
    heads = {b for _, b in edges}
    succ = dict(edges)
    if len(succ) != len(edges):
        raise InvalidModel("bridge edges branch")
    starts = [a for a, _ in edges if a not in heads]
    if len(starts) != 1:
        raise InvalidModel("bridge edges do not form a path")
    path = [starts[0]]
    while path[-1] in succ:
        path.append(succ[path[-1]])
    if len(path) != len(edges) + 1:
        raise InvalidModel("bridge edges do not form a path")
    return tuple(path)


def _path_of(vertices: frozenset[int], edges: frozenset[Edge]) -> Path:
    if not edges:
        if len(vertices) != 1:
            raise InvalidModel("root path is not a path")
        return (next(iter(vertices)),)
    p = _order_path(set(edges))
    if set(p) != set(vertices):
        raise InvalidModel("root path is not a path")
    return p


def decorate(m: ButterflyModel) -> Decoration:
    rep = validate_model(m)
    if not rep:
        raise InvalidModel(str(rep))
    vs = m.expansion_vertices()
    es = m.expansion_edges()
    succ: dict[int, list[int]] = {x: [] for x in vs}
    pred: dict[int, list[int]] = {x: [] for x in vs}
    for a, b in sorted(es):
        succ[a].append(b)
        pred[b].append(a)
    in_tree, out_tree, in_star, out_star, root_path = [], [], [], [], []
    for b in m.branches:
        bv = b.vertices
        hi_in = {x for x in bv if len(pred[x]) >= 2}
        hi_out = {x for x in bv if len(succ[x]) >= 2}
        t_in = _minimal_arborescence(b.root, b.in_edges, hi_in, inward=True)
        t_out = _minimal_arborescence(b.root, b.out_edges, hi_out, inward=False)
        s_in = _grow_star(t_in, succ, pred, inward=True)
        s_out = _grow_star(t_out, succ, pred, inward=False)
        in_tree.append(t_in)
        out_tree.append(t_out)
        in_star.append(s_in)
        out_star.append(s_out)
        root_path.append(_path_of(s_in.vertices & s_out.vertices, s_in.edges & s_out.edges))
    bridges = {}
    for u, v in m.pattern.sorted_edges():
        so, si = out_star[u].vertices, in_star[v].vertices
        bridges[(u, v)] = _order_path({(a, c) for a, c in es if a in so and c in si})
    return Decoration(
        m, vs, es, tuple(in_tree), tuple(out_tree), tuple(in_star), tuple(out_star),
        tuple(root_path), bridges,
    )


# -- text format --------------------------------------------------------------
#
#   model v1
#   <pattern as a d2c record>
#
#   branch <v> root <r> in <a>><b> ... out <a>><b> ...
#   path <u> <v> : <host vertices>


def format_model(m: ButterflyModel) -> str:
    from .digraph import serialize

    lines = ["model v1", serialize(m.pattern).rstrip("\n"), ""]
    for v, b in enumerate(m.branches):
        words = ["branch", str(v), "root", str(b.root), "in"]
        words += [f"{a}>{c}" for a, c in sorted(b.in_edges)]
        words.append("out")
        words += [f"{a}>{c}" for a, c in sorted(b.out_edges)]
        lines.append(" ".join(words))
    for (u, v), p in sorted(m.paths.items()):
        lines.append(f"path {u} {v} : {' '.join(map(str, p))}")
    return "\n".join(lines) + "\n"


def parse_model(text: str, host: Digraph) -> ButterflyModel:
    from .digraph import parse
    from .errors import ParseError

    lines = text.splitlines()
    if not lines or lines[0].strip() != "model v1":
        raise ParseError("missing 'model v1' header", 1)
    body = [i for i, line in enumerate(lines) if line.startswith(("branch", "path"))]
    first = body[0] if body else len(lines)
    pattern = parse("\n".join(lines[1:first]))
    branches: dict[int, Branch] = {}
    paths: dict[Edge, Path] = {}
    for i in body:
        words = lines[i].split()
        try:
            if words[0] == "branch":
                v, root = int(words[1]), int(words[3])
                cut = words.index("out")
                pairs = [tuple(map(int, w.split(">"))) for w in words[5:cut]]
                outs = [tuple(map(int, w.split(">"))) for w in words[cut + 1:]]
                branches[v] = Branch(root, frozenset(pairs), frozenset(outs))
            else:
                cut = words.index(":")
                paths[(int(words[1]), int(words[2]))] = tuple(int(w) for w in words[cut + 1:])
        except (ValueError, IndexError):
            raise ParseError(f"bad model line {lines[i]!r}", i + 1) from None
    if sorted(branches) != list(range(pattern.n)):
        raise ParseError("model needs one branch line per pattern vertex")
    return ButterflyModel(host, pattern, tuple(branches[v] for v in range(pattern.n)), paths)
