"""Local-lemma solver: prune blocks, sample s-sets, resample conflicts.

Each block is first pruned to ``a`` vertices by repeatedly deleting a vertex
of largest current degree.  Then one uniform s-set is drawn per block, and
while the union spans an edge, both endpoint blocks of the first such edge
are redrawn.  With a >= 2e s^2 D this terminates quickly in
expectation; the output is always checked, so termination analysis is not
needed for soundness.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from ._exact import ceil_e_times, e_bounds, e_times_lt
from .errors import BlockTooThin, BudgetExceeded
from .graph import DegreeProfile, PartitionedGraph, TransversalBlowup, validate, verify_its

__all__ = ["LllConfig", "LllStats", "Feasibility", "default_a", "prune", "lll_feasible", "sample_blowup", "solve"]


def default_a(s: int, D) -> int:
    """Exact ceil(2e s^2 D), never below s."""
    return max(s, ceil_e_times(2 * s * s * Fraction(D)))


@dataclass(frozen=True)
class LllConfig:
    a: int | None = None
    max_resamples: int = 10**4
    rng_seed: int = 0

    def __post_init__(self):
        if self.max_resamples < 1:
            raise ValueError("max_resamples must be >= 1")
        if self.a is not None and self.a < 1:
            raise ValueError("a must be positive")


def prune_order(adj, blocks: Sequence[Sequence[int]], alive: set[int], targets: Mapping[int, int]) -> list[int]:
    """Remove vertices from ``alive`` in place and return them in removal order.

    Blocks are processed in increasing index.  Within a block the vertex of
    largest degree in the current alive graph goes first, lowest index on
    ties, and degrees are updated after every removal.
    """
    deg = {v: sum(1 for w in adj[v] if w in alive) for v in alive}
    removed = []
    for b in sorted(targets):
        target = targets[b]
        members = [v for v in blocks[b] if v in alive]
        while len(members) > target:
            v = max(members, key=lambda x: (deg[x], -x))
            members.remove(v)
            alive.discard(v)
            removed.append(v)
            for w in adj[v]:
                if w in alive:
                    deg[w] -= 1
    return removed


def prune(graph: PartitionedGraph, a: int | Sequence[int | None] | Mapping[int, int]) -> PartitionedGraph:
    """Prune every block (or the blocks named in ``a``) down to the target size."""
    if isinstance(a, int):
        targets = {b: a for b in range(graph.r)}
    elif isinstance(a, Mapping):
        targets = dict(a)
    else:
        targets = {b: t for b, t in enumerate(a) if t is not None}
    for b, t in targets.items():
        size = len(graph.block_indices[b])
        if size < t:
            raise BlockTooThin(b, size, t)
        if t < 1:
            raise BlockTooThin(b, 0, 1)
    alive = set(range(graph.n_vertices))
    prune_order(graph.adjacency, graph.block_indices, alive, targets)
    return graph._induced_idx(alive)


@dataclass(frozen=True)
class Feasibility:
    feasible: bool
    margin: Fraction  # certified lower bound on 1 - 2e s^2 D / a
    product_lo: Fraction
    product_hi: Fraction


def lll_feasible(profile: DegreeProfile | Fraction | int, s: int, a: int) -> Feasibility:
    """Decide e * 2aD * s^2 / a^2 < 1, with D the max block average degree."""
    D = profile.max_block_avg if isinstance(profile, DegreeProfile) else Fraction(profile)
    x = Fraction(2 * s * s) * D / a
    lo_e, hi_e = e_bounds(40)
    return Feasibility(
        feasible=e_times_lt(x, 1),
        margin=1 - hi_e * x,
        product_lo=lo_e * x,
        product_hi=hi_e * x,
    )


@dataclass
class LllStats:
    a: int
    resamples: int = 0
    iterations: int = 0
    feasible: bool = True
    margin: Fraction = Fraction(1)
    violated_edge_histogram: dict[str, int] = field(default_factory=dict)
    transcript: list[tuple[str, str]] = field(default_factory=list)

    @property
    def outside_hypothesis(self) -> bool:
        return not self.feasible

    def to_json_obj(self) -> dict:
        return {
            "a": self.a,
            "resamples": self.resamples,
            "iterations": self.iterations,
            "feasible": self.feasible,
            "margin": str(self.margin),
            "violated_edge_histogram": dict(sorted(self.violated_edge_histogram.items())),
            "transcript": [list(e) for e in self.transcript],
        }


def sample_blowup(graph: PartitionedGraph, s: int, rng: random.Random) -> dict[int, tuple[int, ...]]:
    """One uniform s-subset per block, drawn independently, as vertex indices."""
    return {b: tuple(sorted(rng.sample(members, s))) for b, members in enumerate(graph.block_indices)}


def _first_violation(graph, chosen):
    bof = graph.block_of_index
    W = {i for sub in chosen.values() for i in sub}
    best = None
    for u in W:
        for v in graph.adjacency[u]:
            if v in W and bof[u] < bof[v]:
                key = (bof[u], bof[v], u, v)
                if best is None or key < best:
                    best = key
    return best


def solve(graph: PartitionedGraph, s: int, config: LllConfig = LllConfig()) -> tuple[TransversalBlowup, LllStats]:
    """Find an ITS of size s by pruning and resampling.

    Raises ``BudgetExceeded`` (with stats attached) once ``max_resamples``
    resampling steps fail to produce an independent selection.
    """
    profile = validate(graph)
    a = config.a if config.a is not None else default_a(s, profile.max_block_avg)
    if a < s:
        raise BlockTooThin(-1, a, s)
    for b, size in enumerate(graph.block_sizes()):
        if size < a:
            raise BlockTooThin(b, size, a)
    pruned = prune(graph, a)
    feas = lll_feasible(validate(pruned), s, a)
    stats = LllStats(a=a, feasible=feas.feasible, margin=feas.margin)
    rng = random.Random(config.rng_seed)
    blocks = pruned.block_indices
    chosen = sample_blowup(pruned, s, rng)
    ids = pruned.ids
    while True:
        stats.iterations += 1
        bad = _first_violation(pruned, chosen)
        if bad is None:
            break
        if stats.resamples >= config.max_resamples:
            raise BudgetExceeded(f"no independent selection after {stats.resamples} resamples", stats)
        bu, bv, u, v = bad
        key = f"{ids[u]}|{ids[v]}"
        stats.violated_edge_histogram[key] = stats.violated_edge_histogram.get(key, 0) + 1
        stats.transcript.append((ids[u], ids[v]))
        for b in (bu, bv):
            chosen[b] = tuple(sorted(rng.sample(blocks[b], s)))
        stats.resamples += 1
    its = TransversalBlowup.from_indices(pruned, s, chosen)
    report = verify_its(graph, its)
    assert report.accepted, report
    return its, stats
