import itertools
import random
from collections import Counter

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from graph_ph.graph import (
    Graph,
    Graph6Error,
    VertexPermutation,
    canonical_form,
    enumerate_connected_cubic,
    enumerate_graphs,
    generate_fixture,
    graph6_size_header,
    is_isomorphic,
    parse_graph6,
    permute,
    read_graph6_file,
    write_graph6,
    write_graph6_file,
)
from oracles import brute_isomorphic
from strategies import graphs, random_graph


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


class TestGraphValue:
    def test_edges_normalised(self):
        g = Graph.from_edges(3, [(2, 0), (1, 2)])
        assert g.sorted_edges == ((0, 2), (1, 2))
        assert g.m == 2
        with pytest.raises(ValueError):
            Graph.from_edges(3, [(2, 0), (0, 2)])

    @pytest.mark.parametrize("edges", [[(0, 0)], [(0, 3)], [(-1, 0)]])
    def test_rejects_bad_edges(self, edges):
        with pytest.raises(ValueError):
            Graph.from_edges(3, edges)

    def test_degrees_and_neighbors(self):
        g = generate_fixture("path", 4)
        assert g.degrees() == [1, 2, 2, 1]
        assert g.neighbors(1) == {0, 2}
        assert g.has_edge(2, 1) and not g.has_edge(0, 3)

    def test_diameter(self):
        assert generate_fixture("path", 5).diameter() == 4
        assert generate_fixture("cycle", 5).diameter() == 2
        assert generate_fixture("two_triangles").diameter() is None

    def test_equality_and_hash(self):
        a = Graph.from_edges(3, [(0, 1)])
        b = Graph.from_edges(3, [(1, 0)])
        assert a == b and hash(a) == hash(b)
        assert a != Graph.from_edges(3, [(1, 2)])


class TestGraph6:
    def test_k14_example(self):
        g = parse_graph6("D?{")
        assert g.n == 5
        assert g.sorted_edges == ((0, 4), (1, 4), (2, 4), (3, 4))

    def test_networkx_decoder_agrees(self):
        fixtures = [generate_fixture(name) for name in ("prism", "rook4x4", "shrikhande", "fig4_example")]
        lines = ["D?{"] + [write_graph6(g) for g in fixtures + enumerate_connected_cubic(10)]
        for line in lines:
            h = nx.from_graph6_bytes(line.encode())
            g = parse_graph6(line)
            assert g.n == h.number_of_nodes()
            assert set(g.sorted_edges) == {(min(e), max(e)) for e in h.edges}

    def test_header_and_whitespace(self):
        assert parse_graph6(">>graph6<<D?{\n") == parse_graph6("D?{")

    def test_small_examples(self):
        assert write_graph6(generate_fixture("complete", 2)) == "A_"
        assert parse_graph6("A_") == generate_fixture("complete", 2)
        assert write_graph6(Graph.from_edges(1, [])) == "@"
        assert parse_graph6("@") == Graph.from_edges(1, [])
        assert parse_graph6("?").n == 0
        with pytest.raises(ValueError):
            write_graph6(Graph.from_edges(0, []))

    @pytest.mark.parametrize("n", [62, 63, 100, 700])
    def test_size_headers_against_networkx(self, n):
        g = Graph.from_edges(n, [(0, 1), (n - 2, n - 1)])
        s = write_graph6(g)
        assert s.encode() == nx.to_graph6_bytes(to_nx(g), header=False).strip()
        assert parse_graph6(s) == g

    @pytest.mark.parametrize(
        "n, header",
        [(0, "?"), (62, "}"), (63, "~??~"), (258047, "~}~~"), (258048, "~~???~??"), (460175067, "~~?ZZZZZ")],
    )
    def test_size_header_bytes(self, n, header):
        from graph_ph.graph import _decode_size

        assert graph6_size_header(n) == header
        assert _decode_size([ord(c) - 63 for c in header]) == (n, len(header))

    def test_exhaustive_roundtrip_small(self):
        for n in range(1, 6):
            pairs = list(itertools.combinations(range(n), 2))
            for mask in range(1 << len(pairs)):
                g = Graph.from_edges(n, [p for i, p in enumerate(pairs) if mask >> i & 1])
                assert parse_graph6(write_graph6(g)) == g

    def test_random_roundtrip_matches_networkx(self):
        rng = random.Random(7)
        for _ in range(1000):
            g = random_graph(rng, rng.randint(1, 8), rng.random())
            s = write_graph6(g)
            assert s.encode() == nx.to_graph6_bytes(to_nx(g), header=False).strip()
            assert parse_graph6(s) == g

    @pytest.mark.parametrize(
        "text, offset",
        [("", 0), ("D?", 2), ("D?{?", 3), ("D\x01{", 1), ("~?", 2), ("~~??", 4), ("B@", 1), (">>graph6<<D?", 12)],
    )
    def test_malformed(self, text, offset):
        with pytest.raises(Graph6Error) as info:
            parse_graph6(text)
        assert info.value.offset == offset

    def test_padding_bits_must_be_zero(self):
        # n=2 has a single bit followed by five padding bits
        assert parse_graph6("A_").m == 1
        with pytest.raises(Graph6Error) as info:
            parse_graph6("A`")
        assert info.value.offset == 1

    def test_file_roundtrip(self, tmp_path):
        gs = [generate_fixture("prism"), generate_fixture("cycle", 7), Graph.from_edges(1, [])]
        path = tmp_path / "x.g6"
        write_graph6_file(path, gs)
        assert read_graph6_file(path) == gs


class TestFixtures:
    @pytest.mark.parametrize(
        "name, params, n, m",
        [
            ("rook4x4", (), 16, 48),
            ("shrikhande", (), 16, 48),
            ("fig4_example", (), 13, 14),
            ("prism", (), 6, 9),
            ("two_triangles", (), 6, 6),
            ("hexagon", (), 6, 6),
            ("cycle", (5,), 5, 5),
            ("complete", (4,), 4, 6),
            ("complete_bipartite", (3, 3), 6, 9),
        ],
    )
    def test_sizes(self, name, params, n, m):
        g = generate_fixture(name, *params)
        assert (g.n, g.m) == (n, m)

    @pytest.mark.parametrize("name", ["rook4x4", "shrikhande"])
    def test_strongly_regular_16_6_2_2(self, name):
        g = generate_fixture(name)
        assert set(g.degrees()) == {6}
        for u, v in itertools.combinations(range(16), 2):
            common = len(g.neighbors(u) & g.neighbors(v))
            assert common == 2

    def test_rook_and_shrikhande_not_isomorphic(self):
        assert not nx.is_isomorphic(to_nx(generate_fixture("rook4x4")), to_nx(generate_fixture("shrikhande")))
        assert not is_isomorphic(generate_fixture("rook4x4"), generate_fixture("shrikhande"))

    def test_unknown_fixture(self):
        with pytest.raises(ValueError):
            generate_fixture("petersen")


class TestPermute:
    @settings(max_examples=200, deadline=None)
    @given(st.data())
    def test_invariants(self, data):
        g = data.draw(graphs(max_n=8))
        perm = data.draw(st.permutations(range(g.n)))
        h = permute(g, perm)
        assert (h.n, h.m) == (g.n, g.m)
        assert sorted(h.degrees()) == sorted(g.degrees())
        assert all(h.degree(perm[v]) == g.degree(v) for v in range(g.n))
        assert permute(h, VertexPermutation(tuple(perm)).inverse()) == g

    def test_labels_follow_vertices(self):
        g = Graph.from_edges(3, [(0, 1)], vertex_labels=(5, 6, 7))
        h = permute(g, [2, 0, 1])
        assert h.vertex_labels == (6, 7, 5)
        assert Counter(h.vertex_labels) == Counter(g.vertex_labels)

    def test_rejects_non_permutation(self):
        with pytest.raises(ValueError):
            permute(generate_fixture("path", 3), [0, 0, 1])


class TestCanonicalForm:
    @settings(max_examples=200, deadline=None)
    @given(st.data())
    def test_invariant_under_permutation(self, data):
        g = data.draw(graphs(max_n=9))
        perm = data.draw(st.permutations(range(g.n)))
        assert canonical_form(permute(g, perm)) == canonical_form(g)

    def test_agrees_with_networkx(self):
        rng = random.Random(3)
        for _ in range(300):
            n = rng.randint(4, 7)
            g, h = random_graph(rng, n, 0.5), random_graph(rng, n, 0.5)
            assert is_isomorphic(g, h) == nx.is_isomorphic(to_nx(g), to_nx(h))

    @pytest.mark.parametrize("n, count", [(1, 1), (2, 2), (3, 4), (4, 11), (5, 34), (6, 156)])
    def test_enumeration_counts(self, n, count):
        assert len(enumerate_graphs(n)) == count

    @pytest.mark.parametrize("n, count", [(4, 6), (5, 21), (6, 112), (7, 853)])
    def test_connected_counts(self, n, count):
        assert len(enumerate_graphs(n, connected=True)) == count


class TestCubic:
    @pytest.mark.parametrize("n, count", [(4, 1), (6, 2), (8, 5), (10, 19)])
    def test_counts(self, n, count):
        gs = enumerate_connected_cubic(n)
        assert len(gs) == count
        for g in gs:
            assert g.n == n and set(g.degrees()) == {3} and g.is_connected()

    def test_n6_is_k33_and_prism(self):
        gs = enumerate_connected_cubic(6)
        forms = {canonical_form(g) for g in gs}
        assert forms == {canonical_form(generate_fixture("complete_bipartite", 3, 3)), canonical_form(generate_fixture("prism"))}

    @pytest.mark.parametrize("n", [4, 6, 8])
    def test_pairwise_non_isomorphic_brute_force(self, n):
        gs = enumerate_connected_cubic(n)
        for g, h in itertools.combinations(gs, 2):
            assert not brute_isomorphic(g, h)

    def test_n10_pairwise_non_isomorphic_networkx(self):
        gs = [to_nx(g) for g in enumerate_connected_cubic(10)]
        for g, h in itertools.combinations(gs, 2):
            assert not nx.is_isomorphic(g, h)

    @pytest.mark.parametrize("n", [3, 5, 12, 2])
    def test_rejects_bad_n(self, n):
        with pytest.raises(ValueError):
            enumerate_connected_cubic(n)
