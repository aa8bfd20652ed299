import random
import re
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from itsblowup import count_its, dump_instance, find_its, validate
from itsblowup.errors import InfeasibleTarget
from itsblowup.generators import (
    GeneratorSpec,
    add_isolated,
    gen_bounded_degree,
    gen_random,
    gen_szabo_tardos,
    gen_theorem58,
    gen_theorem417,
    gen_theorem418,
)


class TestLabelClasses:
    def test_shape_s2_D2(self):
        g = gen_theorem417(2, 2)
        assert g.block_sizes() == [4, 4, 4]
        assert g.n_edges == 12  # 4 label classes, each a triangle

    @pytest.mark.parametrize("s,D", [(1, 1), (1, 3), (2, 2), (3, 2)])
    def test_profile(self, s, D):
        p = validate(gen_theorem417(s, D))
        assert p.max_block_avg == D
        assert p.local_degree == 1
        assert p.thickness == s * D
        assert p.max_degree == D

    @pytest.mark.parametrize("s,D", [(s, D) for s in (1, 2) for D in (1, 2, 3)])
    def test_sharpness_pair(self, s, D):
        g = gen_theorem417(s, D)
        assert find_its(g, s) is None
        assert find_its(add_isolated(g), s) is not None

    def test_max_degree_variant(self):
        g = gen_theorem418(1, 1)
        assert g.block_sizes() == [1, 1] and g.n_edges == 1
        assert find_its(g, 1) is None
        for delta in (1, 2, 3):
            assert validate(gen_theorem418(2, delta)).max_degree == delta

    def test_bad_parameters(self):
        with pytest.raises(ValueError):
            gen_theorem417(0, 2)


class TestSeparatedBipartiteCopies:
    @pytest.mark.parametrize("delta", [1, 2, 3])
    def test_no_independent_transversal(self, delta):
        assert find_its(gen_szabo_tardos(delta), 1) is None

    @pytest.mark.parametrize("delta", [1, 2, 3, 4])
    def test_profile(self, delta):
        g = gen_szabo_tardos(delta)
        p = validate(g)
        assert g.r == 2 * delta
        assert g.block_sizes() == [2 * delta - 1] * (2 * delta)
        assert p.max_degree == delta and p.thickness == 2 * delta - 1
        assert g.n_edges == (2 * delta - 1) * delta * delta

    @pytest.mark.parametrize("delta", [1, 2, 3, 4])
    def test_blocks_separate_sides(self, delta):
        g = gen_szabo_tardos(delta)
        for block in g.blocks:
            sides = {}
            for v in block:
                copy, side = re.fullmatch(r"c(\d+)([LR])\d+", v).groups()
                sides.setdefault(copy, set()).add(side)
            assert all(len(x) == 1 for x in sides.values())

    def test_one_extra_vertex_admits_a_transversal(self):
        assert find_its(add_isolated(gen_szabo_tardos(3)), 1) is not None


class TestRandom:
    def test_zero_target_is_edgeless(self):
        assert gen_random(4, 5, 0, None, 1).n_edges == 0

    def test_seed_reproduces_bytes(self):
        a = dump_instance(gen_random(5, 6, 3, 2, 42))
        b = dump_instance(gen_random(5, 6, 3, 2, 42))
        assert a == b
        assert a != dump_instance(gen_random(5, 6, 3, 2, 43))

    def test_infeasible(self):
        with pytest.raises(InfeasibleTarget):
            gen_random(2, 4, 2, 1, 0)

    def test_cap_above_block_size(self):
        with pytest.raises(ValueError):
            gen_random(3, 2, 1, 3, 0)

    @settings(max_examples=80, deadline=None)
    @given(st.integers(0, 10**6), st.integers(2, 6), st.integers(1, 8),
           st.fractions(min_value=0, max_value=4, max_denominator=4), st.one_of(st.none(), st.integers(1, 3)))
    def test_profile_respects_caps(self, seed, r, n, D, cap):
        if cap is not None and cap > n:
            cap = n
        c = n if cap is None else cap
        if D > (r - 1) * c:
            return
        g = gen_random(r, n, D, cap, seed)
        p = validate(g)
        assert p.max_block_avg <= D
        assert p.local_degree <= c

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 10**6))
    def test_maximal_under_caps(self, seed):
        rng = random.Random(seed)
        r, n, cap = rng.randint(2, 4), rng.randint(1, 5), rng.randint(1, 2)
        cap = min(cap, n)
        D = rng.randint(0, (r - 1) * cap)
        g = gen_random(r, n, D, cap, seed)
        adj, bof = g.adjacency, g.block_of_index
        sums = [sum(len(adj[v]) for v in blk) for blk in g.block_indices]
        for i in range(g.n_vertices):
            for j in range(i + 1, g.n_vertices):
                bi, bj = bof[i], bof[j]
                if bi == bj or j in adj[i]:
                    continue
                room = sums[bi] + 1 <= D * n and sums[bj] + 1 <= D * n
                local_ok = (sum(1 for w in adj[i] if bof[w] == bj) < cap
                            and sum(1 for w in adj[j] if bof[w] == bi) < cap)
                assert not (room and local_ok), (g.ids[i], g.ids[j])


class TestCountingFamily:
    def test_edgeless_when_cap_below_one(self):
        assert gen_theorem58(3, 3, 2, 0).n_edges == 0

    def test_bad_parameters(self):
        with pytest.raises(ValueError):
            gen_theorem58(3, 1, 2, 0)

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 10**6), st.integers(2, 3), st.integers(1, 5), st.integers(1, 2))
    def test_hypothesis_met_and_bound_holds(self, seed, r, t, s):
        if t < s:
            return
        g = gen_theorem58(r, t, s, seed)
        rep = count_its(g, s, t)
        assert rep.hypothesis_met
        assert rep.exact_count >= rep.bound
        assert rep.bound * 2 ** r == comb(t, s) ** r


class TestBoundedDegree:
    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 10**6), st.integers(2, 5), st.integers(1, 8), st.integers(0, 3))
    def test_max_degree(self, seed, r, n, delta):
        g = gen_bounded_degree(r, n, delta, seed)
        assert validate(g).max_degree <= delta
        assert g.block_sizes() == [n] * r


class TestSpec:
    def test_builds_every_kind(self):
        cases = {
            "theorem417": {"s": 1, "D": 2},
            "theorem418": {"s": 1, "max_degree": 2},
            "szabo_tardos": {"max_degree": 2},
            "random": {"r": 3, "n": 4, "avg_target": 1, "seed": 0},
            "theorem58": {"r": 2, "t": 4, "s": 1, "seed": 0},
            "bounded_degree": {"r": 3, "n": 3, "max_degree": 1, "seed": 0},
        }
        for kind, params in cases.items():
            assert validate(GeneratorSpec(kind, params).build())

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            GeneratorSpec("petersen", {})

    def test_missing_parameter(self):
        with pytest.raises(ValueError):
            GeneratorSpec("theorem417", {"s": 1})
