from __future__ import annotations

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from strategies import digraphs, nx_strongly_k_connected, to_nx

from d2gen.digraph import (
    CanonicalForm,
    Digraph,
    a4,
    bidirected_cycle,
    canonical_form,
    directed_cycle,
    directed_path,
    invert,
    is_isomorphic,
    is_strongly_connected,
    is_strongly_k_connected,
    parse,
    parse_many,
    serialize,
    serialize_many,
)
from d2gen.errors import DuplicateEdge, IndexOutOfRange, LoopEdge, MalformedHeader, SizeBoundExceeded


def rec(*lines: str) -> str:
    return "\n".join(lines) + "\n"


class TestParse:
    def test_bidirected_triangle(self):
        d = parse(rec("3 6", "0 1", "1 0", "1 2", "2 1", "2 0", "0 2"))
        assert d == bidirected_cycle(3)

    def test_a4_record(self):
        d = parse(rec("4 8", "0 1", "1 2", "2 3", "3 0", "0 2", "2 0", "1 3", "3 1"))
        assert d == a4()

    def test_loop_rejected(self):
        with pytest.raises(LoopEdge):
            parse(rec("2 1", "0 0"))

    @pytest.mark.parametrize(
        "text, error",
        [
            (rec("2 2", "0 1", "0 1"), DuplicateEdge),
            (rec("2 1", "0 2"), IndexOutOfRange),
            (rec("2 2", "0 1"), MalformedHeader),
            (rec("x y"), MalformedHeader),
            (rec("2 1", "0"), MalformedHeader),
            ("", MalformedHeader),
        ],
    )
    def test_errors(self, text, error):
        with pytest.raises(error):
            parse(text)

    def test_error_carries_line(self):
        with pytest.raises(LoopEdge) as exc:
            parse(rec("# comment", "3 2", "0 1", "2 2"))
        assert exc.value.line == 4

    def test_comments_and_streams(self):
        text = "# corpus\n" + serialize(a4()) + "\n\n" + serialize(bidirected_cycle(3))
        assert parse_many(text) == [a4(), bidirected_cycle(3)]


class TestSerialize:
    def test_empty(self):
        assert serialize(Digraph.from_edges(0, [])) == "0 0\n"

    def test_sorted_lines(self):
        lines = serialize(bidirected_cycle(3)).splitlines()
        assert lines[0] == "3 6"
        assert lines[1:] == sorted(lines[1:], key=lambda s: tuple(map(int, s.split())))

    def test_a4_round_trip(self):
        assert len(serialize(a4()).splitlines()) == 9
        assert parse(serialize(a4())) == a4()

    @given(digraphs())
    def test_round_trip(self, d):
        assert parse(serialize(d)) == d

    @given(st.lists(digraphs(max_n=4), max_size=5))
    def test_stream_round_trip(self, ds):
        assert parse_many(serialize_many(ds)) == ds


class TestConnectivity:
    def test_examples(self):
        assert not is_strongly_connected(directed_path(3))
        assert is_strongly_connected(bidirected_cycle(3))
        assert is_strongly_connected(a4())
        assert is_strongly_k_connected(bidirected_cycle(3), 2)
        assert not is_strongly_k_connected(bidirected_cycle(3), 3)
        assert not is_strongly_k_connected(directed_cycle(3), 2)
        assert is_strongly_k_connected(a4(), 2)

    def test_trivial_orders(self):
        assert is_strongly_connected(Digraph.from_edges(0, []))
        assert is_strongly_connected(Digraph.from_edges(1, []))

    def test_k_must_be_positive(self):
        with pytest.raises(ValueError):
            is_strongly_k_connected(a4(), 0)

    @given(digraphs(min_n=1))
    def test_strong_connectivity_matches_networkx(self, d):
        assert is_strongly_connected(d) == nx.is_strongly_connected(to_nx(d))

    @given(digraphs(min_n=1), st.integers(1, 3))
    @settings(max_examples=150)
    def test_k_connectivity_matches_oracle(self, d, k):
        assert is_strongly_k_connected(d, k) == nx_strongly_k_connected(d, k)


class TestInvert:
    @given(digraphs())
    def test_involution(self, d):
        assert invert(invert(d)) == d

    def test_examples(self):
        assert is_isomorphic(invert(directed_cycle(3)), directed_cycle(3))
        assert canonical_form(invert(a4())) == canonical_form(a4())

    @given(digraphs(min_n=1))
    def test_reverses_every_edge(self, d):
        assert invert(d).edges == {(v, u) for u, v in d.edges}


class TestCanonicalForm:
    @given(digraphs(), st.randoms(use_true_random=False))
    def test_relabel_invariant(self, d, rnd):
        perm = list(range(d.n))
        rnd.shuffle(perm)
        assert canonical_form(d.relabel(perm)) == canonical_form(d)

    @given(digraphs(max_n=5), digraphs(max_n=5))
    @settings(max_examples=150)
    def test_matches_networkx_isomorphism(self, a, b):
        same = canonical_form(a) == canonical_form(b)
        assert same == nx.is_isomorphic(to_nx(a), to_nx(b))

    def test_examples(self):
        assert canonical_form(bidirected_cycle(3)) != canonical_form(directed_cycle(3))
        assert canonical_form(a4()) == canonical_form(invert(a4()))

    @given(digraphs())
    def test_key_round_trip(self, d):
        f = canonical_form(d)
        assert CanonicalForm.from_key(f.key) == f
        assert is_isomorphic(f.to_digraph(), d)

    def test_size_bound(self):
        with pytest.raises(SizeBoundExceeded):
            canonical_form(directed_cycle(12))
