import random

import pytest

from eternal_guard.errors import CapabilityError
from eternal_guard.exact_solver import (count_configs,
                                        enumerate_valid_configs,
                                        eternal_number, oracle_minimax,
                                        safe_family, verify_closure)
from eternal_guard.graph_core import (Kind, Variant, complete,
                                      connected_graphs, cycle,
                                      iter_weight_vectors,
                                      min_connected_dominating_set,
                                      min_connected_italian_function, path,
                                      pentagon_with_chord,
                                      random_connected_graph, star,
                                      static_number)

PLAIN = Variant(Kind.DOMINATION)
ROMAN = Variant(Kind.ROMAN)
ITALIAN = Variant(Kind.ITALIAN)


class TestCountConfigs:
    @pytest.mark.parametrize("n,k,variant", [
        (5, 3, PLAIN), (4, 4, ROMAN), (6, 2, ITALIAN),
        (4, 3, Variant(Kind.DOMINATION, stacking=False)),
    ])
    def test_formula_matches_enumeration(self, n, k, variant):
        cap = variant.count_cap()
        cap = k if cap is None else cap
        brute = sum(1 for _ in iter_weight_vectors(n, k, cap))
        assert count_configs(n, k, variant) == brute


class TestSafeFamily:
    def test_k3_singletons_all_survive(self):
        fam = safe_family(complete(3), PLAIN, 1)
        assert fam.defender_win
        assert [c.counts for c in fam.configs] == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]

    def test_p3_one_guard_loses(self):
        fam = safe_family(path(3), PLAIN, 1)
        assert not fam.defender_win and fam.configs == ()
        assert fam.initial_count == 1  # only the center dominates

    def test_p4_two_guards_include_middle_pair(self):
        fam = safe_family(path(4), PLAIN, 2)
        assert fam.defender_win
        assert (0, 1, 1, 0) in {c.counts for c in fam.configs}

    def test_closure_recheck(self):
        fam = safe_family(cycle(5), PLAIN, 2)
        assert verify_closure(cycle(5), fam)

    def test_budget_error_carries_estimate(self):
        with pytest.raises(CapabilityError) as exc:
            safe_family(path(8), PLAIN, 4, budget=10)
        assert exc.value.estimate == count_configs(8, 4, PLAIN)
        assert exc.value.limit == 10

    def test_all_guarded_config_wins_trivially(self):
        # With every vertex guarded the attacker has no legal move.
        fam = safe_family(path(3), PLAIN, 3)
        assert fam.defender_win
        assert (1, 1, 1) in {c.counts for c in fam.configs}


class TestEternalNumber:
    @pytest.mark.parametrize("n", range(1, 7))
    def test_complete_graphs_need_one_guard(self, n):
        assert eternal_number(complete(n), PLAIN).value == 1

    def test_known_small_values(self):
        assert eternal_number(path(2), PLAIN).value == 1
        assert eternal_number(path(3), PLAIN).value == 2
        assert eternal_number(cycle(4), PLAIN).value == 2
        assert eternal_number(complete(3), ROMAN).value == 2

    def test_scan_records_losing_budgets(self):
        res = eternal_number(path(3), PLAIN)
        assert res.evaluated == {1: False, 2: True}
        assert res.static_weight == 1
        assert res.witness is not None and res.witness.defender_win

    def test_bounded_failure(self):
        res = eternal_number(path(4), PLAIN, k_max=1)
        assert res.value is None and res.bounded_failure
        assert res.k_max == 1

    def test_connected_variant_evaluates_each_k(self):
        res = eternal_number(cycle(5), Variant(Kind.DOMINATION, connected=True),
                             k_max=4)
        assert res.value is not None
        assert set(res.evaluated) == set(range(res.static_weight, 5))
        assert isinstance(res.non_monotone, tuple)

    def test_disconnected_rejected(self):
        from eternal_guard.graph_core import Graph
        with pytest.raises(ValueError):
            eternal_number(Graph.from_edges(4, [(0, 1), (2, 3)]), PLAIN)


class TestOracle:
    def test_examples(self):
        assert oracle_minimax(path(2), PLAIN, 1) is True
        assert oracle_minimax(path(3), PLAIN, 1) is False
        assert oracle_minimax(cycle(4), PLAIN, 2) is True

    def test_cap(self):
        with pytest.raises(CapabilityError):
            oracle_minimax(path(10), PLAIN, 5, cap=100)

    def test_oracle_equivalence_small_graphs(self):
        graphs = (connected_graphs(2) + connected_graphs(3) + connected_graphs(4)
                  + connected_graphs(5))
        for g in graphs:
            for kind in Kind:
                variant = Variant(kind)
                for k in (1, 2, 3):
                    assert (safe_family(g, variant, k).defender_win
                            == oracle_minimax(g, variant, k)), (g.adjacency, kind, k)

    def test_oracle_equivalence_deeper_budgets(self):
        for g in connected_graphs(4):
            for kind in Kind:
                variant = Variant(kind)
                for k in (4, 5):
                    assert (safe_family(g, variant, k).defender_win
                            == oracle_minimax(g, variant, k)), (g.adjacency, kind, k)


class TestBounds:
    def test_sandwich_and_floating_guard_bounds(self):
        rng = random.Random(11)
        graphs = [path(5), cycle(6), star(5), pentagon_with_chord()] + [
            random_connected_graph(rng, n) for n in (5, 6, 7)]
        for g in graphs:
            z = min_connected_dominating_set(g)
            tf = min_connected_italian_function(g)[0]
            for variant, bound in ((PLAIN, len(z) + 1),
                                   (ROMAN, 2 * len(z) + 1),
                                   (ITALIAN, tf + 1)):
                res = eternal_number(g, variant)
                assert res.value is not None
                assert static_number(g, variant)[0] <= res.value <= bound


class TestStackingModes:
    def test_strict_universe_is_subset(self):
        strict = Variant(Kind.DOMINATION, stacking=False)
        loose_cfgs = set(enumerate_valid_configs(path(4), PLAIN, 2))
        strict_cfgs = set(enumerate_valid_configs(path(4), strict, 2))
        assert strict_cfgs <= loose_cfgs
        assert all(max(c) <= 1 for c in strict_cfgs)

    def test_mode_comparison_is_recorded_not_assumed(self):
        # Agreement between multiset and strict-set semantics is measured on a
        # small catalog; the values themselves are whatever the solver says.
        strict = Variant(Kind.DOMINATION, stacking=False)
        observations = {}
        for name, g in [("P4", path(4)), ("C5", cycle(5)), ("star4", star(4)),
                        ("pentagon", pentagon_with_chord())]:
            a = eternal_number(g, PLAIN).value
            b = eternal_number(g, strict).value
            observations[name] = (a, b)
        assert all(v[0] is not None and v[1] is not None
                   for v in observations.values())
        agreements = sum(1 for a, b in observations.values() if a == b)
        print(f"stacking-vs-strict agreement: {agreements}/{len(observations)} "
              f"{observations}")


class TestDeterminism:
    def test_family_is_reproducible(self):
        a = safe_family(cycle(5), PLAIN, 2)
        b = safe_family(cycle(5), PLAIN, 2)
        assert [c.counts for c in a.configs] == [c.counts for c in b.configs]
        assert a.to_dict() == b.to_dict()
