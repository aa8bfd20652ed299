"""Exhaustive reference algorithms.

Every randomized solver in the package is checked against these.  They are
complete at desk scale and never answer "none" on a truncated search: a
search that runs past its node budget raises ``BudgetExceeded`` instead.

Search order: a full selection is compared colexicographically, i.e. the
last block's s-set is the most significant, and inside a block s-sets are
ordered colex over within-block positions.  ``find_its`` returns the first
ITS in this order.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterator, Sequence

from .errors import BlockTooThin, BudgetExceeded, IndivisibleBlock, UnequalBlocks
from .graph import PartitionedGraph, TransversalBlowup

DEFAULT_NODE_BUDGET = 10**8

__all__ = [
    "CountReport",
    "colex_subsets",
    "find_its",
    "find_rooted",
    "count_its",
    "find_factor",
    "iter_its",
    "DEFAULT_NODE_BUDGET",
]


def colex_subsets(items: Sequence, s: int) -> Iterator[tuple]:
    """All s-subsets of ``items`` in colex order of positions."""
    if s == 0:
        yield ()
        return
    for last in range(s - 1, len(items)):
        for head in colex_subsets(items[:last], s - 1):
            yield head + (items[last],)


class _Budget:
    __slots__ = ("left", "limit")

    def __init__(self, limit):
        self.limit = limit
        self.left = limit

    def tick(self):
        self.left -= 1
        if self.left < 0:
            raise BudgetExceeded(f"search exceeded {self.limit} nodes")


def _check_thick(graph, s):
    for b, members in enumerate(graph.block_indices):
        if len(members) < s:
            raise BlockTooThin(b, len(members), s)


def _search(adj, blocks, s, order, budget, allowed=None, root=None) -> Iterator[dict[int, tuple[int, ...]]]:
    """Depth-first enumeration of independent selections.

    ``blocks`` maps block -> member indices, ``order`` is the assignment
    order, ``allowed`` optionally restricts usable vertices and ``root``
    forces one vertex into its block's s-set.
    """
    blocked = {}
    chosen: dict[int, tuple[int, ...]] = {}
    depth_limit = len(order)

    def rec(depth):
        if depth == depth_limit:
            yield dict(chosen)
            return
        b = order[depth]
        avail = [i for i in blocks[b] if not blocked.get(i) and (allowed is None or i in allowed)]
        if len(avail) < s:
            return
        for subset in colex_subsets(avail, s):
            if root is not None and root in blocks[b] and root not in subset:
                continue
            budget.tick()
            for z in subset:
                for w in adj[z]:
                    blocked[w] = blocked.get(w, 0) + 1
            chosen[b] = subset
            yield from rec(depth + 1)
            del chosen[b]
            for z in subset:
                for w in adj[z]:
                    blocked[w] -= 1

    yield from rec(0)


def iter_its(graph: PartitionedGraph, s: int, budget: int = DEFAULT_NODE_BUDGET) -> Iterator[TransversalBlowup]:
    """Every ITS of size s, in the canonical order."""
    _check_thick(graph, s)
    order = list(range(graph.r - 1, -1, -1))
    for sel in _search(graph.adjacency, graph.block_indices, s, order, _Budget(budget)):
        yield TransversalBlowup.from_indices(graph, s, sel)


def find_its(graph: PartitionedGraph, s: int, budget: int = DEFAULT_NODE_BUDGET) -> TransversalBlowup | None:
    """First ITS of size s in the canonical order, or None if there is none."""
    return next(iter_its(graph, s, budget), None)


def find_rooted(graph: PartitionedGraph, vertex: str, s: int = 1, budget: int = DEFAULT_NODE_BUDGET) -> TransversalBlowup | None:
    """First ITS whose s-set in ``vertex``'s block contains ``vertex``."""
    root = graph.index(vertex)
    _check_thick(graph, s)
    order = list(range(graph.r - 1, -1, -1))
    sel = next(_search(graph.adjacency, graph.block_indices, s, order, _Budget(budget), root=root), None)
    return None if sel is None else TransversalBlowup.from_indices(graph, s, sel)


@dataclass(frozen=True)
class CountReport:
    s: int
    t: int
    r: int
    exact_count: int
    bound: Fraction
    hypothesis_met: bool

    def to_json_obj(self) -> dict:
        return {
            "s": self.s,
            "t": self.t,
            "r": self.r,
            "exact_count": self.exact_count,
            "bound": str(self.bound),
            "hypothesis_met": self.hypothesis_met,
        }


def counting_bound(r: int, t: int, s: int) -> Fraction:
    """Guaranteed number of ITSs, C(t, s)^r / 2^r."""
    return Fraction(comb(t, s) ** r, 2**r)


def counting_hypothesis(graph: PartitionedGraph, t: int, s: int) -> bool:
    """Each block has at least t vertices and meets at most t|V_i|/(4s^2) edges."""
    adj = graph.adjacency
    for members in graph.block_indices:
        if len(members) < t:
            return False
        incident = sum(len(adj[i]) for i in members)  # no intra-block edges
        if Fraction(incident) > Fraction(t * len(members), 4 * s * s):
            return False
    return True


def count_its(graph: PartitionedGraph, s: int, t: int, budget: int = DEFAULT_NODE_BUDGET) -> CountReport:
    """Exact number of ITSs of size s, with the counting bound for parameter t."""
    _check_thick(graph, s)
    adj, blocks = graph.adjacency, graph.block_indices
    order = sorted(range(graph.r), key=lambda b: (len(blocks[b]), b))
    budget_ = _Budget(budget)
    blocked: dict[int, int] = {}
    last = len(order) - 1

    def rec(depth) -> int:
        b = order[depth]
        avail = [i for i in blocks[b] if not blocked.get(i)]
        if depth == last:
            budget_.tick()
            return comb(len(avail), s)
        total = 0
        for subset in colex_subsets(avail, s):
            budget_.tick()
            for z in subset:
                for w in adj[z]:
                    blocked[w] = blocked.get(w, 0) + 1
            total += rec(depth + 1)
            for z in subset:
                for w in adj[z]:
                    blocked[w] -= 1
        return total

    exact = rec(0) if order else 1
    return CountReport(
        s=s,
        t=t,
        r=graph.r,
        exact_count=exact,
        bound=counting_bound(graph.r, t, s),
        hypothesis_met=counting_hypothesis(graph, t, s),
    )


def find_factor(graph: PartitionedGraph, s: int, budget: int = DEFAULT_NODE_BUDGET) -> list[TransversalBlowup] | None:
    """Exhaustive search for |V_i|/s disjoint ITSs covering every vertex.

    Intended for tiny instances.  Each new member is rooted at the lowest
    uncovered vertex of block 0, which removes member-order symmetry.
    """
    sizes = graph.block_sizes()
    if len(set(sizes)) != 1:
        raise UnequalBlocks(f"block sizes differ: {sizes}")
    for b, n in enumerate(sizes):
        if n % s:
            raise IndivisibleBlock(b, n, s)
    adj, blocks = graph.adjacency, graph.block_indices
    order = list(range(graph.r - 1, -1, -1))
    budget_ = _Budget(budget)
    members: list[dict[int, tuple[int, ...]]] = []

    def rec(uncovered: frozenset[int]):
        if not uncovered:
            return True
        root = min(i for i in blocks[0] if i in uncovered)
        for sel in _search(adj, blocks, s, order, budget_, allowed=uncovered, root=root):
            members.append(sel)
            used = {i for subset in sel.values() for i in subset}
            if rec(uncovered - used):
                return True
            members.pop()
        return False

    if not rec(frozenset(range(graph.n_vertices))):
        return None
    return [TransversalBlowup.from_indices(graph, s, sel) for sel in members]
