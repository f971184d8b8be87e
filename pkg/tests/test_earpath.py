from __future__ import annotations

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from d2gen.augment import add_chain, apply_augmentation
from d2gen.digraph import Digraph, bidirected_cycle, invert
from d2gen.earpath import (
    Augmenting,
    Bad,
    EarPath,
    Escape,
    Switching,
    check_earpath,
    classify_earpath,
    enumerate_earpaths,
    intersection_path,
    is_blocking_vertex,
    is_laced,
    lace,
    lace_components,
    switch_onto,
    validate_escape,
)
from d2gen.errors import NotAnEarPath, NotOnRootPath, NotSwitching
from d2gen.generate import oracle_enumerate
from d2gen.model import (
    ButterflyModel,
    decorate,
    find_expansion,
    identity_model,
    invert_model,
    model_from_expansion,
    validate_model,
)

C3 = bidirected_cycle(3)
C4 = bidirected_cycle(4)
# C3 with (0,1) subdivided by vertex 3
SUB = [(0, 3), (3, 1), (1, 0), (1, 2), (2, 1), (0, 2), (2, 0)]


def sub_model(extra, n=4):
    d = Digraph.from_edges(n, SUB + extra)
    m = model_from_expansion(d, C3, SUB, [{0}, {1}, {2}])
    return d, m, decorate(m)


def with_host(m: ButterflyModel, d: Digraph) -> ButterflyModel:
    return ButterflyModel(d, m.pattern, m.branches, m.paths)


def brute_earpaths(d: Digraph, m: ButterflyModel) -> set[tuple[int, ...]]:
    jv, je = m.expansion_vertices(), m.expansion_edges()
    g = nx.DiGraph(list(d.edges))
    g.add_nodes_from(range(d.n))
    out = set()
    for s in jv:
        for t in jv:
            if s == t:
                continue
            h = g.subgraph((set(range(d.n)) - jv) | {s, t})
            for p in nx.all_simple_paths(h, s, t):
                if len(p) > 2 or (s, t) not in je:
                    out.add(tuple(p))
    return out


class TestEnumeration:
    def test_single_extra_edge(self):
        d = C4.add_edges([(0, 2)])
        assert enumerate_earpaths(d, with_host(identity_model(C4), d)) == [EarPath((0, 2))]

    def test_outside_path(self):
        # 0 -> 4 -> 5 -> 2 plus a dangling 5 -> 6 that never returns
        d = C4.add_vertices(3).add_edges([(0, 4), (4, 5), (5, 2), (5, 6)])
        got = enumerate_earpaths(d, with_host(identity_model(C4), d))
        assert got == [EarPath((0, 4, 5, 2))]

    def test_chain_augmented_triangle_matches_brute_force(self):
        d = add_chain(C3, (0, 1), 1, 0, 1)
        m = find_expansion(C3, d)
        got = {p.vertices for p in enumerate_earpaths(d, m)}
        assert got == brute_earpaths(d, m)

    @pytest.mark.parametrize("key", sorted(f.key for f in oracle_enumerate(5) if f.n == 5)[::40])
    def test_matches_brute_force_on_corpus(self, key):
        from d2gen.digraph import CanonicalForm

        d = CanonicalForm.from_key(key).to_digraph()
        m = find_expansion(C3, d) or find_expansion(C4, d)
        if m is None:
            pytest.skip("no small cycle minor")
        got = {p.vertices for p in enumerate_earpaths(d, m)}
        assert got == brute_earpaths(d, m)

    def test_inverted_earpaths_are_reversed(self):
        d = add_chain(C3, (0, 1), 1, 0, 2)
        m = find_expansion(C3, d)
        fwd = {p.reversed() for p in enumerate_earpaths(d, m)}
        assert fwd == set(enumerate_earpaths(invert(d), invert_model(m)))

    def test_check_rejects(self):
        d, m, dec = sub_model([(1, 3)])
        with pytest.raises(NotAnEarPath):
            check_earpath(EarPath((0, 3)), dec, d)
        with pytest.raises(NotAnEarPath):
            check_earpath(EarPath((2, 3)), dec, d)


class TestClassify:
    def test_parallel_switching_edge(self):
        d, m, dec = sub_model([(0, 1)])
        assert classify_earpath(EarPath((0, 1)), dec) == Switching((0, 1), True)

    def test_non_parallel_switching(self):
        d, m, dec = sub_model([(3, 2)])
        assert classify_earpath(EarPath((3, 2)), dec) == Switching((0, 2), False)

    def test_cycle_with_root_path_is_bad(self):
        d, m, dec = sub_model([(1, 3)])
        assert classify_earpath(EarPath((1, 3)), dec) == Bad(1)
        # the closed cycle 1 -> 3 -> 1 lies in the in-star of 1
        assert {1, 3} <= dec.in_star[1].vertices

    def test_augmenting(self):
        d = C4.add_vertices(1).add_edges([(0, 4), (4, 2)])
        dec = decorate(with_host(identity_model(C4), d))
        assert classify_earpath(EarPath((0, 4, 2)), dec) == Augmenting("A1", 0, 2)

    def test_exactly_one_class_on_chain_results(self):
        for length in (1, 2, 3):
            d = apply_augmentation(C4, parse_chain(length))
            m = find_expansion(C4, d)
            dec = decorate(m)
            for p in enumerate_earpaths(d, m):
                assert classify_earpath(p, dec).name in ("switching", "bad", "augmenting")


def parse_chain(length: int):
    from d2gen.augment import Chain

    return Chain(0, 1, None, None, "b", "b", length)


class TestLace:
    def test_disjoint(self):
        assert lace((0, 1, 2), (5, 6, 7)) == (5, 6, 7)

    def test_contained(self):
        q = (1, 2, 3)
        assert lace((0, 1, 2, 3, 4), q) == q
        assert lace_components((0, 1, 2, 3, 4), q) == 1

    def test_crossing_figure(self):
        p = (0, 1, 2, 3, 4, 5, 6, 7)
        q = (9, 6, 7, 8, 4, 5, 10, 2, 3, 11, 0, 1, 12)
        got = lace(p, q)
        assert got[0] == q[0] and got[-1] == q[-1]
        assert is_laced(p, got)
        g = nx.DiGraph(list(zip(p, p[1:])) + list(zip(q, q[1:])))
        best = min(lace_components(p, c) for c in nx.all_simple_paths(g, q[0], q[-1]))
        assert lace_components(p, got) == best

    @given(st.permutations(list(range(7))), st.integers(2, 7))
    @settings(max_examples=60)
    def test_minimum_against_networkx(self, order, k):
        p = tuple(range(7))
        q = tuple(order[:k])
        got = lace(p, q)
        g = nx.DiGraph(list(zip(p, p[1:])) + list(zip(q, q[1:])))
        best = min(lace_components(p, c) for c in nx.all_simple_paths(g, q[0], q[-1]))
        assert lace_components(p, got) == best


class TestSwitch:
    def switch_fixture(self):
        js = [(0, 3), (3, 1), (1, 4), (4, 2), (2, 1), (1, 0), (0, 2), (2, 0)]
        d = Digraph.from_edges(5, js + [(0, 1)])
        return d, model_from_expansion(d, C3, js, [{0}, {1}, {2}])

    def test_parallel_edge_shortens_bridge(self):
        d, m = self.switch_fixture()
        new = switch_onto(m, EarPath((0, 1)))
        assert validate_model(new)
        assert new.paths[(0, 1)] == (0, 1)

    def test_round_trip(self):
        d, m = self.switch_fixture()
        new = switch_onto(m, EarPath((0, 1)))
        back = switch_onto(new, EarPath((0, 3, 1)))
        assert back.expansion_vertices() == m.expansion_vertices()

    def test_not_switching(self):
        d, m, dec = sub_model([(1, 3)])
        with pytest.raises(NotSwitching):
            switch_onto(m, EarPath((1, 3)))


class TestBlocking:
    JB = [(0, 1), (1, 2), (2, 3), (3, 4), (3, 5), (4, 0), (5, 0), (4, 5), (5, 4)]

    def decorated(self):
        h = Digraph.from_edges(6, self.JB)
        m = model_from_expansion(h, C3, self.JB, [{0, 1, 2, 3}, {4}, {5}])
        return decorate(m)

    def test_trivial_root_path(self):
        d, m, dec = sub_model([])
        assert is_blocking_vertex(dec, 2, 2)

    def test_figure_instance(self):
        dec = self.decorated()
        assert dec.root_path[0] == (0, 1, 2, 3)
        assert all(is_blocking_vertex(dec, 0, r) for r in range(4))
        host = Digraph.from_edges(6, self.JB + [(1, 3), (0, 3), (4, 3)])
        assert [is_blocking_vertex(dec, 0, r, host) for r in range(4)] == [False, False, False, True]

    def test_not_on_root_path(self):
        with pytest.raises(NotOnRootPath):
            is_blocking_vertex(self.decorated(), 0, 4)


class TestEscape:
    J = [(0, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 1), (1, 0), (1, 2), (2, 1), (0, 2), (2, 0)]

    def instance(self, extra):
        d = Digraph.from_edges(8, self.J + extra)
        return d, model_from_expansion(d, C3, self.J, [{0}, {1}, {2}])

    def test_duration_two(self):
        d, m = self.instance([(1, 6), (7, 4), (5, 0)])
        esc = Escape((0, 1), ((1, 6), (6, 7), (7, 4), (4, 5), (5, 0)))
        assert esc.duration == 2
        dec = decorate(m)
        assert intersection_path(dec, 0, 1) == (3, 4, 5, 6, 7)
        assert validate_escape(esc, dec, d)
        assert Escape.parse(str(esc)) == esc

    def test_rerouted_middle_segment(self):
        d, m = self.instance([(1, 6), (7, 0)])
        esc = Escape((0, 1), ((1, 6), (6, 7), (7, 0), (0,), (0,)))
        rep = validate_escape(esc, decorate(m), d)
        assert not rep and rep.clause == "c"

    def test_zero_duration(self):
        d, m = self.instance([(1, 6)])
        rep = validate_escape(Escape((0, 1), ((1, 6),)), decorate(m), d)
        assert not rep and rep.clause == "duration"

    def test_inversion(self):
        d, m = self.instance([(1, 6), (7, 4), (5, 0)])
        esc = Escape((0, 1), ((1, 6), (6, 7), (7, 4), (4, 5), (5, 0)))
        assert validate_escape(esc.reversed(), decorate(invert_model(m)), invert(d))
