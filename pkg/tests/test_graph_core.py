import itertools
import random

import pytest

from eternal_guard.errors import CapabilityError, ConfigError
from eternal_guard.graph_core import (Graph, GuardConfig, Kind, Variant,
                                      complete, connected_graphs, counts_valid,
                                      cycle, iter_weight_vectors,
                                      min_connected_dominating_set,
                                      min_connected_italian_function, path,
                                      pentagon_with_chord,
                                      random_connected_graph, star,
                                      static_number, validate_config)

PLAIN = Variant(Kind.DOMINATION)
ROMAN = Variant(Kind.ROMAN)
ITALIAN = Variant(Kind.ITALIAN)


class TestGraphConstruction:
    def test_from_edges_basics(self):
        g = Graph.from_edges(3, [(0, 1), (1, 2)])
        assert g.neighbors(1) == (0, 2)
        assert g.degree(1) == 2 and g.degree(0) == 1
        assert list(g.edges()) == [(0, 1), (1, 2)]
        assert g.edge_count == 2

    def test_rejects_self_loop(self):
        with pytest.raises(ValueError, match="self-loop"):
            Graph.from_edges(2, [(0, 0)])

    def test_rejects_duplicate_edge(self):
        with pytest.raises(ValueError, match="duplicate"):
            Graph.from_edges(2, [(0, 1), (1, 0)])

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError, match="out of range"):
            Graph.from_edges(2, [(0, 2)])

    def test_rejects_asymmetric_adjacency(self):
        with pytest.raises(ValueError, match="asymmetric"):
            Graph(2, ((1,), ()))

    def test_connectivity(self):
        assert path(5).is_connected()
        assert not Graph.from_edges(4, [(0, 1), (2, 3)]).is_connected()

    def test_bipartition_and_diameter(self):
        sides = cycle(4).bipartition()
        assert sides is not None and set(sides[0]) | set(sides[1]) == {0, 1, 2, 3}
        assert cycle(5).bipartition() is None
        assert path(4).diameter() == 3
        assert complete(5).diameter() == 1


class TestValidateConfig:
    def test_p3_center_dominates(self):
        g = path(3)
        assert validate_config(g, GuardConfig.from_support(3, [1]), PLAIN)

    def test_p3_endpoint_fails(self):
        g = path(3)
        assert not validate_config(g, GuardConfig.from_support(3, [0]), PLAIN)

    def test_pentagon_minimum_pair(self):
        g = pentagon_with_chord()
        assert validate_config(g, GuardConfig.from_support(5, [1, 3]), PLAIN)

    def test_c4_italian_opposite_ones(self):
        assert validate_config(cycle(4), GuardConfig.from_counts((1, 0, 1, 0)),
                               ITALIAN)

    def test_roman_needs_a_two(self):
        g = path(3)
        assert validate_config(g, GuardConfig.from_counts((0, 2, 0)), ROMAN)
        # No zero vertex: the Roman condition is vacuous.
        assert validate_config(g, GuardConfig.from_counts((1, 1, 1)), ROMAN)
        assert not validate_config(g, GuardConfig.from_counts((0, 1, 1)), ROMAN)

    def test_malformed_is_an_error_not_false(self):
        g = path(3)
        with pytest.raises(ConfigError):
            validate_config(g, GuardConfig.from_counts((3, 0, 0)), ROMAN)
        with pytest.raises(ConfigError):
            validate_config(g, GuardConfig.from_counts((0, -1, 0)), PLAIN)
        with pytest.raises(ConfigError):
            validate_config(g, GuardConfig.from_counts((1, 0)), PLAIN)
        with pytest.raises(ConfigError):
            validate_config(g, GuardConfig.from_counts((2, 0, 0)),
                            Variant(Kind.DOMINATION, stacking=False))

    def test_connected_flag(self):
        g = path(4)
        both_ends = GuardConfig.from_support(4, [0, 3])
        assert not validate_config(g, both_ends, Variant(Kind.DOMINATION, connected=True))
        middle = GuardConfig.from_support(4, [1, 2])
        assert validate_config(g, middle, Variant(Kind.DOMINATION, connected=True))

    def test_plain_superset_monotonicity(self):
        g = pentagon_with_chord()
        for size in (1, 2, 3):
            for combo in itertools.combinations(range(5), size):
                if not counts_valid(g, GuardConfig.from_support(5, combo).counts, PLAIN):
                    continue
                for extra in range(5):
                    sup = set(combo) | {extra}
                    assert validate_config(g, GuardConfig.from_support(5, sup), PLAIN)


class TestStaticNumber:
    def test_pentagon_domination_is_two(self):
        w, witness = static_number(pentagon_with_chord(), PLAIN)
        assert w == 2
        assert validate_config(pentagon_with_chord(), witness, PLAIN)

    @pytest.mark.parametrize("n", range(1, 7))
    def test_complete_graphs(self, n):
        w, witness = static_number(complete(n), PLAIN)
        assert w == 1 and witness.counts[0] == 1

    def test_p2_italian(self):
        assert static_number(path(2), ITALIAN)[0] == 2

    def test_witness_is_lexicographic(self):
        # K4 has every singleton dominating; the witness must be vertex 0.
        assert static_number(complete(4), PLAIN)[1].support() == (0,)

    def test_capability_limit(self):
        with pytest.raises(CapabilityError):
            static_number(path(6), PLAIN, max_n=5)

    def test_no_smaller_weight_passes(self):
        # Exhaustive minimality check against independent enumeration.
        rng = random.Random(5)
        graphs = connected_graphs(4) + [random_connected_graph(rng, n)
                                        for n in (6, 7, 8)]
        for g in graphs:
            for variant in (PLAIN, ROMAN, ITALIAN):
                w, witness = static_number(g, variant)
                assert validate_config(g, witness, variant)
                cap = 1 if variant.kind is Kind.DOMINATION else 2
                for smaller in range(1, w):
                    assert not any(
                        counts_valid(g, c, variant)
                        for c in iter_weight_vectors(g.n, smaller, cap))


class TestConnectedDominatingSet:
    def test_p4(self):
        assert min_connected_dominating_set(path(4)) == (1, 2)

    def test_k3_lexicographic(self):
        assert min_connected_dominating_set(complete(3)) == (0,)

    def test_star_center(self):
        assert min_connected_dominating_set(star(4)) == (0,)

    def test_disconnected_rejected(self):
        with pytest.raises(ValueError):
            min_connected_dominating_set(Graph.from_edges(4, [(0, 1), (2, 3)]))

    def test_min_connected_italian(self):
        w, cfg = min_connected_italian_function(path(3))
        assert w == 2 and cfg.counts == (0, 2, 0)


class TestCatalog:
    def test_shapes(self):
        assert path(4).edge_count == 3
        assert cycle(5).edge_count == 5
        assert complete(4).edge_count == 6
        assert star(5).n == 6 and star(5).degree(0) == 5
        g = pentagon_with_chord()
        assert g.n == 5 and g.edge_count == 6 and g.has_edge(0, 3)

    def test_connected_graph_counts(self):
        assert len(connected_graphs(2)) == 1
        assert len(connected_graphs(3)) == 2
        assert len(connected_graphs(4)) == 6

    def test_random_connected_graph_is_connected(self):
        rng = random.Random(77)
        for _ in range(20):
            g = random_connected_graph(rng, rng.randrange(2, 9))
            assert g.is_connected()
