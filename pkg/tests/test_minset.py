import random

import pytest
from hypothesis import given, settings, strategies as st

from lexgraph.grounding import is_feedback_vertex_set, is_grounding_set
from lexgraph.minset import (
    BudgetExceededError,
    enumerate_minsets,
    greedy_fvs,
    pack_disjoint_circuits,
    reduce_graph,
    solve_minset,
    split_minset,
)
from lexgraph.structure import compute_kernel, label_structures

from conftest import mk_graph, random_digraph, w
from oracle import brute_all_min_fvs, brute_min_fvs_size


class TestReduce:
    def test_self_loop_is_forced(self):
        g = mk_graph([("x", "x"), ("x", "y"), ("y", "x")])
        red = reduce_graph(g)
        assert "x" in red.forced

    def test_g3_drops_the_rest(self, g3):
        red = reduce_graph(g3, bypass=False)
        assert w("f") in red.excluded
        assert set(red.graph.vertices) == {w(x) for x in "abcde"}

    def test_acyclic_graph_reduces_to_nothing(self):
        g = mk_graph([("u", "v"), ("v", "x")])
        red = reduce_graph(g)
        assert len(red.graph) == 0
        assert not red.forced

    def test_bypass_preserves_optimum_size(self):
        rng = random.Random(606)
        for _ in range(80):
            g = random_digraph(rng, rng.randint(1, 9), rng.uniform(0.05, 0.45))
            red = reduce_graph(g, bypass=True)
            residual = brute_min_fvs_size(red.graph) if len(red.graph) else 0
            assert len(red.forced) + residual == brute_min_fvs_size(g)

    def test_trim_only_preserves_all_optima(self):
        rng = random.Random(607)
        for _ in range(40):
            g = random_digraph(rng, rng.randint(1, 8), rng.uniform(0.05, 0.45))
            red = reduce_graph(g, bypass=False)
            optima = brute_all_min_fvs(g)
            for optimum in optima:
                assert red.forced <= optimum
                assert not (optimum & red.excluded)


class TestGreedy:
    def test_two_cycle(self):
        g = mk_graph([("a", "b"), ("b", "a")])
        fvs = greedy_fvs(g, seed=0)
        assert len(fvs) == 1
        assert fvs <= {"a", "b"}

    def test_g3_matches_optimum(self, g3):
        fvs = greedy_fvs(g3, seed=0)
        assert len(fvs) == 2
        assert is_feedback_vertex_set(g3, fvs)

    def test_acyclic_graph(self):
        g = mk_graph([("u", "v")])
        assert greedy_fvs(g, seed=0) == set()

    def test_always_valid_and_deterministic(self):
        rng = random.Random(11)
        for _ in range(40):
            g = random_digraph(rng, rng.randint(1, 25), rng.uniform(0.03, 0.3))
            seed = rng.randint(0, 10)
            fvs = greedy_fvs(g, seed)
            assert is_feedback_vertex_set(g, fvs)
            assert greedy_fvs(g, seed) == fvs


class TestPacking:
    def test_g3_two_disjoint_circuits(self, g3):
        assert pack_disjoint_circuits(g3, seed=0) == 2

    def test_single_cycle(self):
        cycle = [("v%d" % i, "v%d" % ((i + 1) % 5)) for i in range(5)]
        assert pack_disjoint_circuits(mk_graph(cycle), seed=0) == 1

    def test_acyclic(self):
        assert pack_disjoint_circuits(mk_graph([("u", "v")]), seed=0) == 0

    def test_is_a_lower_bound(self):
        rng = random.Random(21)
        for _ in range(40):
            g = random_digraph(rng, rng.randint(1, 10), rng.uniform(0.05, 0.4))
            lower = pack_disjoint_circuits(g, seed=rng.randint(0, 5))
            assert lower <= brute_min_fvs_size(g)


class TestSolve:
    def test_two_cycle_exact(self):
        g = mk_graph([("a", "b"), ("b", "a")])
        result = solve_minset(g, budget=10, mode="exact")
        assert result.status == "exact"
        assert len(result.members) == 1
        assert result.lower_bound == 1

    def test_g3_exact_split(self, g3):
        result = solve_minset(g3, budget=10, mode="exact")
        labels = label_structures(g3)
        assert result.status == "exact"
        assert len(result.members) == 2
        core_part, satellite_part = split_minset(result, labels)
        assert len(core_part) == 1
        assert len(satellite_part) == 1

    def test_budget_must_be_positive(self, g3):
        with pytest.raises(ValueError):
            solve_minset(g3, budget=0)
        with pytest.raises(ValueError):
            enumerate_minsets(g3, max_count=1, budget=-1)

    def test_exact_mode_raises_on_tiny_budget(self):
        rng = random.Random(3)
        g = random_digraph(rng, 60, 0.15)
        with pytest.raises(BudgetExceededError):
            solve_minset(g, budget=1e-9, mode="exact")

    def test_auto_mode_degrades_honestly(self):
        rng = random.Random(3)
        g = random_digraph(rng, 60, 0.15)
        result = solve_minset(g, budget=1e-9, mode="auto")
        assert result.status == "heuristic"
        assert is_feedback_vertex_set(g, result.members)
        assert result.lower_bound <= len(result.members)

    def test_matches_brute_force_on_random_graphs(self):
        rng = random.Random(515)
        for _ in range(60):
            g = random_digraph(rng, rng.randint(1, 10), rng.uniform(0.05, 0.5))
            result = solve_minset(g, budget=30, mode="exact")
            assert result.status == "exact"
            assert len(result.members) == brute_min_fvs_size(g)
            assert is_feedback_vertex_set(g, result.members)

    def test_deterministic_for_fixed_seed(self):
        rng = random.Random(929)
        for _ in range(10):
            g = random_digraph(rng, rng.randint(2, 14), rng.uniform(0.1, 0.4))
            first = solve_minset(g, budget=30, mode="exact", seed=7)
            second = solve_minset(g, budget=30, mode="exact", seed=7)
            assert first.members == second.members

    def test_members_within_kernel_and_minimal(self):
        rng = random.Random(333)
        for _ in range(30):
            g = random_digraph(rng, rng.randint(1, 12), rng.uniform(0.05, 0.4))
            result = solve_minset(g, budget=30, mode="exact")
            kernel = compute_kernel(g)
            assert result.members <= kernel
            for member in result.members:
                assert not is_feedback_vertex_set(g, result.members - {member})

    def test_bounds_sandwich(self):
        rng = random.Random(44)
        for _ in range(25):
            g = random_digraph(rng, rng.randint(1, 11), rng.uniform(0.05, 0.4))
            seed = rng.randint(0, 3)
            optimum = brute_min_fvs_size(g)
            assert pack_disjoint_circuits(g, seed) <= optimum
            assert optimum <= len(greedy_fvs(g, seed))


class TestEnumerate:
    def test_two_cycle_both_optima(self):
        g = mk_graph([("a", "b"), ("b", "a")])
        results = enumerate_minsets(g, max_count=2, budget=10)
        assert sorted(sorted(r.members) for r in results) == [["a"], ["b"]]

    def test_g3_all_six(self, g3):
        results = enumerate_minsets(g3, max_count=10, budget=30)
        got = {r.members for r in results}
        assert got == {frozenset(s) for s in brute_all_min_fvs(g3)}
        labels = label_structures(g3)
        for result in results:
            core_part, satellite_part = split_minset(result, labels)
            assert len(core_part) == 1 and len(satellite_part) == 1

    def test_max_count_one(self, g3):
        results = enumerate_minsets(g3, max_count=1, budget=10)
        assert len(results) == 1
        assert len(results[0].members) == 2

    def test_all_returned_sets_are_optimal_and_distinct(self):
        rng = random.Random(616)
        for _ in range(25):
            g = random_digraph(rng, rng.randint(1, 9), rng.uniform(0.1, 0.5))
            optima = {frozenset(s) for s in brute_all_min_fvs(g)}
            results = enumerate_minsets(g, max_count=200, budget=30)
            assert {r.members for r in results} == optima

    def test_budget_error_before_first_optimum(self):
        rng = random.Random(3)
        g = random_digraph(rng, 60, 0.15)
        with pytest.raises(BudgetExceededError):
            enumerate_minsets(g, max_count=1, budget=1e-9)


class TestSplit:
    def test_g3_example(self, g3):
        labels = label_structures(g3)
        result = solve_minset(g3, budget=10, mode="exact")
        core_part, satellite_part = split_minset(result, labels)
        assert core_part <= labels.core
        assert satellite_part <= labels.satellites
        assert core_part | satellite_part == result.members

    def test_rest_member_is_invariant_violation(self, g3):
        from lexgraph.minset import MinSetResult
        labels = label_structures(g3)
        bogus = MinSetResult(frozenset({w("f"), w("a")}), "exact", 2)
        with pytest.raises(RuntimeError, match="outside the kernel"):
            split_minset(bogus, labels)

    def test_core_only_minset(self):
        g = mk_graph([("a", "b"), ("b", "a")])
        labels = label_structures(g)
        result = solve_minset(g, budget=10, mode="exact")
        core_part, satellite_part = split_minset(result, labels)
        assert satellite_part == frozenset()
        assert len(core_part) == 1


@given(st.integers(min_value=0, max_value=2**31))
@settings(max_examples=30, deadline=None)
def test_exact_solver_property(seed):
    rng = random.Random(seed)
    g = random_digraph(rng, rng.randint(1, 9), rng.uniform(0.0, 0.5))
    result = solve_minset(g, budget=30, mode="exact")
    assert len(result.members) == brute_min_fvs_size(g)
    assert is_feedback_vertex_set(g, result.members)
    assert is_grounding_set(g, result.members)
