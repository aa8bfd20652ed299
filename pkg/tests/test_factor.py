import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from itsblowup import PartitionedGraph, validate, verify_its
from itsblowup.errors import IndivisibleBlock, NoRootedIT, UnequalBlocks
from itsblowup.factor import FactorState, augment, dumps_factor, find_factor
from itsblowup.generators import gen_bounded_degree
from itsblowup.oracle import find_factor as exhaustive_factor


def assert_is_factor(graph, factor, s):
    n = graph.block_sizes()[0]
    assert len(factor) == n // s
    seen = []
    for its in factor:
        assert verify_its(graph, its).accepted
        assert all(len(its.selection[b]) == s for b in range(graph.r))
        seen.extend(its.vertices())
    assert sorted(seen) == sorted(graph.ids)


SWAP = PartitionedGraph([["u1", "u2"], ["w1", "w2"]], [("u2", "w2")])


class TestAugment:
    def test_direct_insertion(self):
        g = PartitionedGraph([["a", "b"], ["c", "d"]])
        log = []
        st1 = augment(FactorState.empty(2), g, log=log)
        assert st1.members == ({0: g.index("a")}, {})
        assert log == [{"vertex": "a", "member": 0, "kind": "insert"}]

    def test_swap_hand_example(self):
        g = PartitionedGraph([["u1", "u2"], ["w1", "w2"]], [("u1", "w1")])
        ix = g.index
        state = FactorState(2, ({0: ix("u2"), 1: ix("w2")}, {0: ix("u1")}))
        # w1 is uncovered; member 1 = {u1} misses block 1 but u1 ~ w1
        log = []
        new = augment(state, g, log=log)
        new.check(g)
        assert new.covered == 4
        assert log[-1]["kind"] == "swap"
        members = {frozenset(g.ids[v] for v in m.values()) for m in new.members}
        assert members == {frozenset({"u1", "w2"}), frozenset({"u2", "w1"})}

    def test_swap_leaving_a_vertex_uncovered_is_logged(self):
        # x1 is the lowest uncovered vertex; member 1 = {y2} blocks it.  The only
        # rooted IT through x1 uses the uncovered y3, so y2 drops out and is reported
        g = PartitionedGraph([["x1", "x2", "x3"], ["y1", "y2", "y3"]], [("x1", "y1"), ("x1", "y2")])
        ix = g.index
        state = FactorState(3, ({0: ix("x2"), 1: ix("y1")}, {1: ix("y2")}, {0: ix("x3")}))
        log = []
        new = augment(state, g, log=log)
        new.check(g)
        assert new.covered == state.covered + 1
        assert log[-1]["uncovered_after_swap"] == ["y2"]
        assert new.members[1] == {0: ix("x1"), 1: ix("y3")}

    def test_no_rooted_it(self):
        g = PartitionedGraph([["u1", "u2"], ["w1", "w2"]], [(u, w) for u in ("u1", "u2") for w in ("w1", "w2")])
        state = FactorState(2, ({0: g.index("u1")}, {0: g.index("u2")}))
        with pytest.raises(NoRootedIT):
            augment(state, g)

    def test_full_state_refused(self):
        g = PartitionedGraph([["a"], ["b"]])
        full = FactorState(1, ({0: 0, 1: 1},))
        with pytest.raises(ValueError):
            augment(full, g)

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 10**6))
    def test_coverage_strictly_grows(self, seed):
        rng = random.Random(seed)
        delta = rng.choice([1, 2])
        g = gen_bounded_degree(rng.randint(2, 4), 3 * delta, delta, seed)
        state = FactorState.empty(g.block_sizes()[0])
        while state.covered < g.n_vertices:
            before = state.covered
            state = augment(state, g)
            state.check(g)
            assert state.covered > before


class TestFindFactor:
    def test_swap_instance(self):
        res = find_factor(SWAP, 1)
        assert_is_factor(SWAP, res.factor, 1)
        assert sorted(tuple(its.vertices()) for its in res.factor) == [("u1", "w2"), ("u2", "w1")]
        assert json.loads(dumps_factor(res.factor, 2)) == [its.to_json_obj(2) for its in res.factor]

    def test_known_swap_answer(self):
        g = PartitionedGraph([["u1", "u2"], ["w1", "w2"]], [("u1", "w1")])
        res = find_factor(g, 1)
        assert sorted(tuple(its.vertices()) for its in res.factor) == [("u1", "w2"), ("u2", "w1")]

    def test_complete_bipartite_fails_with_flags(self):
        g = PartitionedGraph([["u1", "u2"], ["w1", "w2"]], [(u, w) for u in ("u1", "u2") for w in ("w1", "w2")])
        res = find_factor(g, 1)
        assert res.factor is None
        assert res.reason
        assert res.hypotheses == {
            "size_at_least_3s2_delta": False,
            "size_above_2s2_delta_small_local_degree": False,
            "reduction_3_delta_thick": False,
        }
        assert res.to_json_obj(2)["factor"] is None

    def test_exhaustive_agrees(self):
        g = PartitionedGraph([["u1", "u2"], ["w1", "w2"]], [("u1", "w1"), ("u2", "w2")])
        assert_is_factor(g, find_factor(g, 1, strategy="exhaustive").factor, 1)
        assert find_factor(g, 1).factor is not None

    def test_size_two_factor_lifts_groups(self):
        g = PartitionedGraph([list("abcd"), list("efgh")], [("a", "e")])
        res = find_factor(g, 2)
        assert_is_factor(g, res.factor, 2)

    def test_custom_grouping(self):
        g = PartitionedGraph([list("abcd"), list("efgh")], [("a", "e"), ("b", "f")])
        res = find_factor(g, 2, grouping=[[["a", "c"], ["b", "d"]], [["e", "g"], ["f", "h"]]])
        assert_is_factor(g, res.factor, 2)
        cells = {frozenset(sel) for its in res.factor for sel in its.selection.values()}
        assert cells == {frozenset("ac"), frozenset("bd"), frozenset("eg"), frozenset("fh")}

    def test_errors(self):
        with pytest.raises(UnequalBlocks):
            find_factor(PartitionedGraph([["a"], ["b", "c"]]), 1)
        with pytest.raises(IndivisibleBlock):
            find_factor(PartitionedGraph([list("abc"), list("def")]), 2)
        with pytest.raises(ValueError):
            find_factor(SWAP, 1, strategy="guess")

    def test_hypothesis_flags_on_thick_instance(self):
        g = gen_bounded_degree(3, 6, 2, 4)
        res = find_factor(g, 1)
        assert res.hypotheses["size_at_least_3s2_delta"]
        assert res.hypotheses["reduction_3_delta_thick"]
        assert_is_factor(g, res.factor, 1)

    @settings(max_examples=60, deadline=None)
    @given(st.integers(0, 10**6), st.integers(1, 2), st.integers(1, 2), st.integers(2, 4))
    def test_random_thick_instances(self, seed, s, delta, r):
        g = gen_bounded_degree(r, 3 * s * s * delta, delta, seed)
        assert validate(g).max_degree <= delta
        res = find_factor(g, s)
        assert_is_factor(g, res.factor, s)

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 10**6))
    def test_never_claims_a_factor_the_oracle_rules_out(self, seed):
        rng = random.Random(seed)
        g = gen_bounded_degree(rng.randint(2, 3), rng.choice([2, 3]), rng.randint(1, 3), seed)
        res = find_factor(g, 1)
        truth = exhaustive_factor(g, 1)
        if res.factor is not None:
            assert_is_factor(g, res.factor, 1)
        if truth is None:
            assert res.factor is None
