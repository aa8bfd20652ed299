"""Extremal and random instance generators.

All generators are deterministic: the extremal ones take no seed, the random
ones draw from ``random.Random(seed)`` only.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .errors import InfeasibleTarget
from .graph import PartitionedGraph

__all__ = [
    "GeneratorSpec",
    "gen_theorem417",
    "gen_theorem418",
    "gen_szabo_tardos",
    "gen_random",
    "gen_theorem58",
    "gen_bounded_degree",
    "add_isolated",
]


def gen_theorem417(s: int, D: int) -> PartitionedGraph:
    """D+1 blocks of sD vertices; same label across blocks means adjacent.

    Every label class spans a K_{D+1}, so any choice of s vertices per block
    uses s(D+1) > sD vertices and repeats a label: no ITS of size s.
    """
    if s < 1 or D < 1:
        raise ValueError("s and D must be positive")
    blocks = [[f"{i}:{j}" for j in range(s * D)] for i in range(D + 1)]
    edges = [
        (f"{i}:{j}", f"{k}:{j}")
        for j in range(s * D)
        for i in range(D + 1)
        for k in range(i + 1, D + 1)
    ]
    return PartitionedGraph(blocks, edges)


def gen_theorem418(s: int, max_degree: int) -> PartitionedGraph:
    """Same construction with the maximum degree as the parameter."""
    return gen_theorem417(s, max_degree)


def _split_tree(n_leaves):
    """Balanced full binary tree as nested tuples; leaves are None."""
    if n_leaves == 1:
        return None
    left = (n_leaves + 1) // 2
    return (_split_tree(left), _split_tree(n_leaves - left))


def gen_szabo_tardos(max_degree: int) -> PartitionedGraph:
    """2Δ-1 disjoint copies of K_{Δ,Δ} split into 2Δ blocks of size 2Δ-1 with no IT.

    Each block holds vertices from only one side of any copy.  The blocks
    are the leaves of a balanced binary decision tree whose internal nodes
    are the copies: following a branch means "avoid this side of this
    copy", and the Δ vertices on the avoided side are handed to leaves below
    that branch (deepest branches first).  Any transversal that avoids one
    side of every copy then reaches a leaf whose vertices all lie on avoided
    sides, so every transversal spans an edge.
    """
    d = max_degree
    if d < 1:
        raise ValueError("max degree must be positive")
    n_leaves, need = 2 * d, 2 * d - 1
    tree = _split_tree(n_leaves)

    branches = []  # (depth, copy, side placed below, leaf ids below)
    leaf_counter = [0]
    copy_counter = [0]

    def walk(node, depth):
        if node is None:
            leaf = leaf_counter[0]
            leaf_counter[0] += 1
            return [leaf]
        k = copy_counter[0]
        copy_counter[0] += 1
        left = walk(node[0], depth + 1)
        right = walk(node[1], depth + 1)
        # left branch avoids side R, so it receives R-side vertices; right receives L
        branches.append((depth, k, "R", left))
        branches.append((depth, k, "L", right))
        return left + right

    walk(tree, 0)
    blocks: list[list[str]] = [[] for _ in range(n_leaves)]
    for depth, k, side, leaves in sorted(branches, key=lambda x: (-x[0], x[1], x[2])):
        for m in range(d):
            leaf = max(leaves, key=lambda q: (need - len(blocks[q]), -q))
            if len(blocks[leaf]) >= need:
                raise AssertionError("side assignment overflowed")
            blocks[leaf].append(f"c{k}{side}{m}")
    if any(len(b) != need for b in blocks):
        raise AssertionError("side assignment left a block short")
    edges = [(f"c{k}L{i}", f"c{k}R{j}") for k in range(need) for i in range(d) for j in range(d)]
    return PartitionedGraph(blocks, edges)


def gen_random(r: int, n: int, avg_target, local_cap: int | None, seed: int) -> PartitionedGraph:
    """r blocks of n vertices with random cross edges.

    Cross pairs are visited in a seeded random order and kept unless they
    would push some block's average degree above ``avg_target`` or give a
    vertex more than ``local_cap`` neighbours in one block.  The result is
    maximal under both caps.
    """
    if r < 2 or n < 1:
        raise ValueError("need r >= 2 and n >= 1")
    D = Fraction(avg_target)
    if D < 0:
        raise ValueError("average target must be nonnegative")
    cap = n if local_cap is None else local_cap
    if cap > n:
        raise ValueError("local cap exceeds block size")
    if D > (r - 1) * cap:
        raise InfeasibleTarget(f"average degree {D} impossible with r={r} and local cap {cap}")
    blocks = [[f"v{b}_{k}" for k in range(n)] for b in range(r)]
    sum_cap = (D * n).__floor__()
    rng = random.Random(seed)
    N = r * n
    pairs = [(i, j) for i in range(N) for j in range(i + 1, N) if i // n != j // n]
    rng.shuffle(pairs)
    block_sum = [0] * r
    local: dict[tuple[int, int], int] = {}
    edges = []
    saturated = sum(1 for b in range(r) if block_sum[b] >= sum_cap)
    for i, j in pairs:
        if saturated == r:
            break
        bi, bj = i // n, j // n
        if block_sum[bi] + 1 > sum_cap or block_sum[bj] + 1 > sum_cap:
            continue
        if local.get((i, bj), 0) >= cap or local.get((j, bi), 0) >= cap:
            continue
        edges.append((blocks[bi][i % n], blocks[bj][j % n]))
        local[(i, bj)] = local.get((i, bj), 0) + 1
        local[(j, bi)] = local.get((j, bi), 0) + 1
        for b in (bi, bj):
            block_sum[b] += 1
            if block_sum[b] == sum_cap:
                saturated += 1
    return PartitionedGraph(blocks, edges)


def gen_theorem58(r: int, t: int, s: int, seed: int) -> PartitionedGraph:
    """r blocks of size t, each meeting at most t^2/(4s^2) edges (maximal, seeded)."""
    if r < 2 or t < s or s < 1:
        raise ValueError("need r >= 2 and t >= s >= 1")
    cap = Fraction(t * t, 4 * s * s).__floor__()
    blocks = [[f"v{b}_{k}" for k in range(t)] for b in range(r)]
    rng = random.Random(seed)
    N = r * t
    pairs = [(i, j) for i in range(N) for j in range(i + 1, N) if i // t != j // t]
    rng.shuffle(pairs)
    incident = [0] * r
    edges = []
    for i, j in pairs:
        bi, bj = i // t, j // t
        if incident[bi] < cap and incident[bj] < cap:
            edges.append((blocks[bi][i % t], blocks[bj][j % t]))
            incident[bi] += 1
            incident[bj] += 1
    return PartitionedGraph(blocks, edges)


def gen_bounded_degree(r: int, n: int, max_degree: int, seed: int) -> PartitionedGraph:
    """r blocks of n vertices; seeded cross pairs kept while both ends stay below ``max_degree``."""
    if r < 2 or n < 1 or max_degree < 0:
        raise ValueError("need r >= 2, n >= 1, max_degree >= 0")
    blocks = [[f"v{b}_{k}" for k in range(n)] for b in range(r)]
    rng = random.Random(seed)
    N = r * n
    pairs = [(i, j) for i in range(N) for j in range(i + 1, N) if i // n != j // n]
    rng.shuffle(pairs)
    deg = [0] * N
    edges = []
    for i, j in pairs:
        if deg[i] < max_degree and deg[j] < max_degree:
            edges.append((blocks[i // n][i % n], blocks[j // n][j % n]))
            deg[i] += 1
            deg[j] += 1
    return PartitionedGraph(blocks, edges)


def add_isolated(graph: PartitionedGraph, per_block: int = 1, prefix: str = "iso") -> PartitionedGraph:
    """Copy of ``graph`` with ``per_block`` fresh isolated vertices appended to every block."""
    blocks = graph.blocks
    for b, members in enumerate(blocks):
        members.extend(f"{prefix}{b}_{k}" for k in range(per_block))
    return PartitionedGraph(blocks, graph.edges())


_KINDS = {
    "theorem417": (gen_theorem417, ("s", "D")),
    "theorem418": (gen_theorem418, ("s", "max_degree")),
    "szabo_tardos": (gen_szabo_tardos, ("max_degree",)),
    "random": (gen_random, ("r", "n", "avg_target", "local_cap", "seed")),
    "theorem58": (gen_theorem58, ("r", "t", "s", "seed")),
    "bounded_degree": (gen_bounded_degree, ("r", "n", "max_degree", "seed")),
}


@dataclass(frozen=True)
class GeneratorSpec:
    kind: str
    params: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown generator {self.kind!r}; choose from {sorted(_KINDS)}")
        _, names = _KINDS[self.kind]
        missing = [p for p in names if p not in self.params and not (p == "local_cap")]
        if missing:
            raise ValueError(f"{self.kind} needs parameters {missing}")

    def build(self) -> PartitionedGraph:
        fn, names = _KINDS[self.kind]
        return fn(*(self.params.get(p) for p in names))
