from __future__ import annotations

from hypothesis import given, settings
from strategies import digraphs

from d2gen.augment import subdivide
from d2gen.butterfly import is_butterfly_minor, minor_search
from d2gen.digraph import Digraph, a4, bidirected_cycle, invert
from d2gen.model import (
    Branch,
    ButterflyModel,
    decorate,
    find_expansion,
    format_model,
    identity_model,
    invert_model,
    model_from_expansion,
    model_from_script,
    parse_model,
    validate_model,
)

C3 = bidirected_cycle(3)


def test_identity_model_valid():
    assert validate_model(identity_model(a4()))


def test_shared_vertex_breaks_disjointness():
    m = identity_model(C3)
    broken = ButterflyModel(
        m.host, m.pattern, (Branch(0, frozenset(), frozenset({(0, 1)})), Branch(1), Branch(2)),
        m.paths,
    )
    rep = validate_model(broken)
    assert not rep and rep.clause == "disjointness"


def test_subdivision_model():
    d, z = subdivide(C3, (0, 1))
    paths = dict(identity_model(C3).paths)
    paths[(0, 1)] = (0, z, 1)
    m = ButterflyModel(d, C3, tuple(Branch(v) for v in range(3)), paths)
    assert validate_model(m)
    dec = decorate(m)
    assert dec.bridges[(0, 1)] == (0, z, 1)
    assert all(len(t.vertices) == 1 for t in dec.in_tree + dec.out_tree)
    assert dec.root_path == ((0,), (1,), (2,))


def test_identity_decoration():
    dec = decorate(identity_model(a4()))
    assert all(len(r) == 1 for r in dec.root_path)
    assert dict(dec.bridges) == {e: e for e in a4().edges}


def test_two_vertex_branch_out_tree():
    # bidirected K4; branch {0,4} of vertex 0 sends (0,1) from the root and (0,2),(0,3) via 4
    k4 = [(u, v) for u in range(4) for v in range(4) if u != v]
    pat = Digraph.from_edges(4, k4)
    j = [e for e in k4 if e[0] != 0] + [(0, 4), (0, 1), (4, 2), (4, 3)]
    m = model_from_expansion(Digraph.from_edges(5, j), pat, j, [{0, 4}, {1}, {2}, {3}])
    assert validate_model(m)
    dec = decorate(m)
    assert dec.out_tree[0].vertices == {0, 4}
    assert dec.out_tree[0].edges == {(0, 4)}
    assert dec.in_tree[0].vertices == {0}
    assert dec.root_path[0] == (0,)
    assert dec.bridges[(0, 2)] == (4, 2)


def test_find_expansion_examples():
    m = find_expansion(a4(), a4())
    assert m is not None and validate_model(m)
    assert find_expansion(C3, bidirected_cycle(4)) is None


@given(digraphs(max_n=4), digraphs(min_n=1, max_n=5))
@settings(max_examples=80, deadline=None)
def test_expansion_iff_minor(h, d):
    m = find_expansion(h, d)
    assert (m is not None) == is_butterfly_minor(h, d)
    if m is not None:
        assert validate_model(m)
        assert validate_model(invert_model(m))
        assert validate_model(model_from_expansion(d, h, m.expansion_edges(),
                                                   [b.vertices for b in m.branches]))


@given(digraphs(max_n=4), digraphs(min_n=1, max_n=5))
@settings(max_examples=60, deadline=None)
def test_model_from_script(h, d):
    res = minor_search(h, d)
    if res.found:
        assert validate_model(model_from_script(h, d, res.script))


def test_format_round_trip():
    d, z = subdivide(C3, (0, 1))
    m = find_expansion(C3, d)
    back = parse_model(format_model(m), d)
    assert back.branches == m.branches
    assert dict(back.paths) == dict(m.paths)
    assert back.pattern == m.pattern


def test_invert_model_hosts():
    m = find_expansion(C3, a4()) or identity_model(a4())
    mi = invert_model(m)
    assert mi.host == invert(m.host)
    assert invert_model(mi).branches == m.branches
