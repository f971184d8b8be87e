from __future__ import annotations

import networkx as nx
from hypothesis import strategies as st

from d2gen.digraph import Digraph


@st.composite
def digraphs(draw, min_n: int = 0, max_n: int = 6) -> Digraph:
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Digraph.from_edges(n, [e for e, keep in zip(pairs, chosen) if keep])


@st.composite
def permutations_of(draw, n: int) -> list[int]:
    return draw(st.permutations(list(range(n))))


def to_nx(d: Digraph) -> nx.DiGraph:
    g = nx.DiGraph()
    g.add_nodes_from(range(d.n))
    g.add_edges_from(d.edges)
    return g


def nx_strongly_k_connected(d: Digraph, k: int) -> bool:
    """Independent oracle: delete every vertex set of size < k and test strong connectivity."""
    import itertools

    if d.n < k + 1:
        return False
    g = to_nx(d)
    for size in range(k):
        for gone in itertools.combinations(range(d.n), size):
            h = g.subgraph(set(range(d.n)) - set(gone))
            if not nx.is_strongly_connected(h):
                return False
    return True
