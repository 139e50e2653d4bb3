import random
from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import all_labelled_graphs, brute_isomorphic, from_networkx, iso_classes, to_networkx
from specdesign.canon import canonical_labeling
from specdesign.designs import fano
from specdesign.exactalg import IntPolynomial, rank
from specdesign.graphs import (FAMILY_NAMES, Graph, Graph6Error, GraphError, canonical_certificate,
                               canonical_graph, disjoint_union, family, family_label,
                               graph6_decode, graph6_encode, graph_isomorphic, incidence_graph,
                               k1, k2)

ATLAS = [from_networkx(h) for h in nx.graph_atlas_g()[1:]]  # orders 1..7, one per class


def graphs(max_n=8):
    def build(n):
        pairs = list(combinations(range(n), 2))
        return st.lists(st.sampled_from(pairs), unique=True).map(
            lambda es: Graph.from_edges(n, es)) if pairs else st.just(Graph(n, (0,) * n))
    return st.integers(1, max_n).flatmap(build)


def shuffled(g: Graph, rng) -> Graph:
    perm = list(range(g.n))
    rng.shuffle(perm)
    return g.relabel(perm)


class TestGraphModel:
    def test_rejects_asymmetric_and_loops(self):
        with pytest.raises(GraphError):
            Graph(2, (0b10, 0))
        with pytest.raises(GraphError):
            Graph(1, (1,))

    def test_bipartition_validated(self):
        with pytest.raises(GraphError):
            Graph.from_edges(2, [(0, 1)], [0, 0])

    def test_json_round_trip(self):
        g = family("H", 3)
        assert Graph.from_json(g.to_json()) == g
        assert Graph.from_json("[[1], [0, 2], [1]]") == Graph.from_edges(3, [(0, 1), (1, 2)])

    def test_json_rejects_one_sided_edge(self):
        with pytest.raises(GraphError):
            Graph.from_json('{"n": 2, "adjacency": [[1], []]}')

    @given(graphs(), graphs())
    def test_union_char_poly_multiplies(self, a, b):
        assert disjoint_union([a, b]).char_poly() == a.char_poly() * b.char_poly()

    def test_bipartite_iff_symmetric_char_poly(self):
        for g in (g for g in ATLAS if g.n <= 6):
            p = g.char_poly()
            assert (p.reflect() == (p if g.n % 2 == 0 else -p)) == nx.is_bipartite(to_networkx(g))


class TestGraph6:
    def test_k2(self):
        assert graph6_encode(k2()) == "A_"

    def test_matches_networkx_on_atlas(self):
        for g in ATLAS:
            ref = nx.to_graph6_bytes(to_networkx(g), header=False).decode().strip()
            assert graph6_encode(g) == ref
            assert graph6_decode(ref) == g

    @pytest.mark.parametrize("n", [62, 63, 70])
    def test_long_order_field(self, n):
        g = family("S", (n - 1) // 2) if n % 2 else Graph.from_edges(n, [(0, n - 1)])
        ref = nx.to_graph6_bytes(to_networkx(g), header=False).decode().strip()
        assert graph6_encode(g) == ref
        assert graph6_decode(ref) == g

    def test_round_trip_s9(self):
        s9 = family("S", 4)
        assert graph6_decode(graph6_encode(s9)) == s9

    def test_header_accepted(self):
        assert graph6_decode(">>graph6<<A_") == k2()

    def test_injective_on_small_catalog(self):
        for n in range(1, 6):
            codes = [graph6_encode(g) for g in all_labelled_graphs(n)]
            assert len(set(codes)) == len(codes)

    @pytest.mark.parametrize("text,offset", [("A!", 1), ("", 0), ("C~~", 2), ("A~", 1),
                                             ("~??", 3), ("  B!", 3)])
    def test_errors_carry_offset(self, text, offset):
        with pytest.raises(Graph6Error) as info:
            graph6_decode(text)
        assert info.value.offset == offset


class TestFamilies:
    @pytest.mark.parametrize("k", range(2, 13))
    def test_s_is_a_subdivided_star(self, k):
        g = family("S", k)
        assert sorted(g.degrees()) == [1] * k + [2] * k + [k]
        assert g.num_edges == g.n - 1 and g.is_connected()

    @pytest.mark.parametrize("k", range(2, 13))
    def test_l_is_regular_bipartite(self, k):
        g = family("L", k)
        assert g.n == 2 * k and set(g.degrees()) == {k - 1} and g.is_bipartite()

    def test_l3_is_c6(self):
        c6 = Graph.from_edges(6, [(i, (i + 1) % 6) for i in range(6)])
        assert graph_isomorphic(family("L", 3), c6)

    @pytest.mark.parametrize("name", ["R", "Q"])
    @pytest.mark.parametrize("k", range(3, 13))
    def test_rq_gram_rank_one(self, name, k):
        N = family(name, k).bipartite_adjacency()
        gram = N @ N.T
        assert rank(gram - type(gram).identity(gram.rows)) == 1

    def test_order_11_graphs(self):
        assert family("G3").n == 11 and family("G4").n == 11
        assert family("G1").n == 10 and family("G2").n == 12

    @pytest.mark.parametrize("name,k", [("R", 2), ("Q", 2), ("S", 1), ("L", 1), ("H", 0)])
    def test_guards(self, name, k):
        with pytest.raises(GraphError, match="k must be"):
            family(name, k)

    def test_labels(self):
        assert family_label("H", 5) == "H_{5,6}"
        assert family_label("S", 8) == "S_{17}"
        assert family_label("G1") == "G1"
        assert set(FAMILY_NAMES) == {"S", "L", "H", "R", "Q", "G1", "G2", "G3", "G4"}

    def test_heawood(self):
        h = incidence_graph(fano())
        assert h.n == 14 and set(h.degrees()) == {3}
        assert nx.girth(to_networkx(h)) == 6


class TestIsomorphism:
    def test_matches_brute_force_up_to_order_5(self):
        for n in range(1, 6):
            labelled = list(all_labelled_graphs(n))
            reps = iso_classes(labelled)
            assert len(reps) == [1, 2, 4, 11, 34][n - 1]
            rng = random.Random(n)
            sample = reps + [shuffled(g, rng) for g in reps]
            for a in sample:
                for b in sample:
                    assert graph_isomorphic(a, b) == brute_isomorphic(a, b)

    def test_matches_networkx_on_atlas(self):
        rng = random.Random(7)
        by_n: dict = {}
        for g in ATLAS:
            by_n.setdefault(g.n, []).append(g)
        for group in by_n.values():
            certs = [canonical_certificate(g) for g in group]
            assert len(set(certs)) == len(certs)
            for g in group:
                assert canonical_certificate(shuffled(g, rng)) == canonical_certificate(g)

    @settings(max_examples=80)
    @given(graphs(9), st.randoms(use_true_random=False))
    def test_certificate_invariant_under_relabelling(self, g, rnd):
        h = shuffled(g, rnd)
        assert canonical_certificate(h) == canonical_certificate(g)
        assert canonical_graph(h) == canonical_graph(g)
        assert graph_isomorphic(g, h)

    @settings(max_examples=50)
    @given(graphs(9), st.randoms(use_true_random=False))
    def test_isomorphic_implies_cospectral(self, g, rnd):
        assert shuffled(g, rnd).char_poly() == g.char_poly()

    def test_generators_are_automorphisms(self):
        g = family("L", 4)
        _, _, gens = canonical_labeling(g.adj)
        assert gens
        for p in gens:
            assert g.relabel(p) == g

    def test_cospectral_non_isomorphic(self):
        # the classic pair: K_{1,4} and C_4 + K_1
        star = Graph.from_edges(5, [(0, i) for i in range(1, 5)])
        c4k1 = disjoint_union([Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)]), k1()])
        assert star.char_poly() == c4k1.char_poly()
        assert not graph_isomorphic(star, c4k1)

    def test_many_repeated_components(self):
        a = disjoint_union([family("L", 5)] + [k2()] * 20 + [k1()])
        b = shuffled(a, random.Random(3))
        assert graph_isomorphic(a, b)
        assert not graph_isomorphic(a, disjoint_union([family("L", 5)] + [k2()] * 19 + [k1()] * 3))

    def test_s5_equals_h23(self):
        assert graph_isomorphic(family("S", 2), family("H", 2))

    def test_p5_char_poly(self):
        x = IntPolynomial.x()
        assert family("S", 2).char_poly() == x ** 5 - 4 * x ** 3 + 3 * x
