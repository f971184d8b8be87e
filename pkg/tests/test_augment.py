from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from d2gen.augment import (
    Basic,
    Bracelet,
    Chain,
    Collarette,
    SplitSpec,
    add_chain,
    added_vertices,
    apply_augmentation,
    enumerate_augmentations,
    invert_augmentation,
    parse_descriptor,
    split,
    subdivide,
)
from d2gen.butterfly import butterfly_contract, is_butterfly_minor
from d2gen.digraph import (
    Digraph,
    a4,
    bidirected_cycle,
    invert,
    is_isomorphic,
    is_strongly_2_connected,
)
from d2gen.errors import (
    DegreeTooSmall,
    EdgeAbsent,
    NotAVertex,
    PreconditionViolated,
    SimplicityViolation,
)
from d2gen.generate import oracle_enumerate

C3 = bidirected_cycle(3)
K4 = Digraph.from_edges(4, [(u, v) for u in range(4) for v in range(4) if u != v])
ORDER4 = [f.to_digraph() for f in sorted(oracle_enumerate(4)) if f.n == 4]


def low_degree(d: Digraph) -> list[int]:
    return [v for v in d.vertices() if d.out_degree(v) < 2 or d.in_degree(v) < 2]


class TestSplit:
    def test_a4_too_small(self):
        with pytest.raises(DegreeTooSmall):
            split(a4(), SplitSpec(0, "out", (1, 2)))

    def test_out_split_shape(self):
        g, b, e = split(K4, SplitSpec(0, "out", (1, 2)))
        assert (b, e) == (0, 4)
        assert {(0, 4), (4, 1), (4, 2), (0, 3)} <= g.edges
        assert (0, 1) not in g.edges and (0, 2) not in g.edges
        assert is_isomorphic(butterfly_contract(g, (b, e)), K4)

    def test_in_split_contracts_back(self):
        g, b, e = split(K4, SplitSpec(2, "in", (0, 3)))
        assert is_isomorphic(butterfly_contract(g, (e, b)), K4)

    @pytest.mark.parametrize("direction", ["out", "in"])
    def test_only_exposed_vertex_is_low(self, direction):
        g, _, e = split(K4, SplitSpec(1, direction, (0, 2)))
        assert low_degree(g) == [e]

    def test_preconditions(self):
        with pytest.raises(PreconditionViolated):
            split(K4, SplitSpec(0, "out", (0, 1)))
        with pytest.raises(NotAVertex):
            split(K4, SplitSpec(7, "out", (1, 2)))
        with pytest.raises(DegreeTooSmall):
            split(K4, SplitSpec(0, "out", (1, 2, 3)))
        with pytest.raises(ValueError):
            SplitSpec(0, "up", (1, 2))


class TestChain:
    def test_triangle_chain(self):
        g = add_chain(C3, (0, 1), 1, 0, 1)
        assert g.n == 4 and is_strongly_2_connected(g)

    def test_length_four_counts(self):
        g = add_chain(C3, (0, 1), 1, 0, 4)
        assert g.n == C3.n + 4
        assert g.m == C3.m - 1 + 5 + 5

    @given(st.sampled_from(sorted(C3.edges)), st.integers(1, 3))
    def test_recovers_original(self, e, length):
        u, v = e
        g = add_chain(C3, e, v, u, length)
        inner = list(range(C3.n, C3.n + length))
        p = [v, *reversed(inner), u]
        h = g.remove_edges(zip(p, p[1:]))
        # each contraction folds the next subdivision vertex into u; later ones shift down
        while h.n > C3.n:
            h = butterfly_contract(h, (u, C3.n))
        assert h == C3

    def test_errors(self):
        with pytest.raises(EdgeAbsent):
            add_chain(a4(), (0, 3), 1, 0, 1)
        with pytest.raises(PreconditionViolated):
            add_chain(C3, (0, 1), 1, 0, 0)
        with pytest.raises(SimplicityViolation):
            add_chain(C3, (0, 1), 0, 1, 1)

    def test_contains_original_as_minor(self):
        assert is_butterfly_minor(C3, add_chain(C3, (1, 2), 2, 0, 2))


class TestAugmentations:
    def test_basic_on_triangle(self):
        with pytest.raises(PreconditionViolated):
            apply_augmentation(C3, Basic(0, 1))

    def test_collarette(self):
        g = apply_augmentation(C3, Collarette(0, 1, 1))
        assert g.n == 6 and is_strongly_2_connected(g)

    def test_bracelet_on_a4(self):
        a = Bracelet(1, 3, 0, 2, 3, "in")
        g = apply_augmentation(a4(), a)
        assert g.n == 5 and is_strongly_2_connected(g)
        assert (0, 1) not in g.edges
        assert a in [b for b, _ in enumerate_augmentations(a4(), 5)]

    def test_bracelet_precondition(self):
        with pytest.raises(PreconditionViolated):
            apply_augmentation(a4(), Bracelet(1, 0, 3, 2, 3, "in"))

    def test_triangle_enumeration(self):
        assert enumerate_augmentations(C3, 3) == []
        found = enumerate_augmentations(C3, 4)
        assert any(isinstance(a, Chain) and a.length == 1 for a, _ in found)
        assert all(is_strongly_2_connected(g) for _, g in found)

    @pytest.mark.parametrize("d", ORDER4, ids=lambda d: str(d.m))
    def test_order4_properties(self, d):
        for a, g in enumerate_augmentations(d, 6):
            assert is_strongly_2_connected(g)
            assert g.n == d.n + added_vertices(a)
            assert g.m > d.m
            assert parse_descriptor(a.text()) == a
            dual = invert_augmentation(d, a)
            assert is_isomorphic(invert(g), apply_augmentation(invert(d), dual))

    def test_sorted_by_descriptor(self):
        from d2gen.augment import sort_key

        found = [a for a, _ in enumerate_augmentations(K4, 6)]
        assert found == sorted(found, key=sort_key)


class TestDescriptors:
    @pytest.mark.parametrize(
        "text",
        [
            "(basic u=0 v=1)",
            "(basic u=0 v=1 out-split=(0;1,2) in-split=(1;3,4))",
            "(basic-double w=2 out-split=(2;0,1) in-split=(2;3,4))",
            "(chain u=0 v=1 out-split=(0;2,3) carrier=(e(u),b(v)) len=2)",
            "(collarette u=0 v=1 len=1)",
            "(bracelet w=1 x=3 a=0 y=2 b=3 side=in)",
        ],
    )
    def test_round_trip(self, text):
        assert parse_descriptor(text).text() == text

    @pytest.mark.parametrize("text", ["", "(nope)", "(chain u=0)", "(basic u=x v=1)", "basic u=0 v=1"])
    def test_rejects(self, text):
        with pytest.raises((ValueError, PreconditionViolated)):
            parse_descriptor(text)


@given(st.sampled_from(sorted(C3.edges)))
@settings(max_examples=6)
def test_subdivide(e):
    g, z = subdivide(C3, e)
    assert (e[0], z) in g.edges and (z, e[1]) in g.edges and e not in g.edges
