"""Factors of ITSs by repeated augmentation.

The blocks are first grouped into s-sets (the quotient reduction), so an ITS
factor of the base graph is an IT factor of the reduction.  The IT factor is
grown one vertex at a time.  If the lowest uncovered vertex v cannot simply
join a member I missing its block, a rooted IT through v is found in a
reduced graph where, for each vertex x of I, the blocks lose every member
that holds a neighbour of x.  That IT becomes the new I, and each displaced
vertex of I takes the place its replacement vacated.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Sequence

from . import oracle
from .aux import quotient_aux
from .errors import IndivisibleBlock, NoRootedIT, UnequalBlocks
from .graph import PartitionedGraph, TransversalBlowup, validate, verify_its

__all__ = ["FactorState", "FactorResult", "augment", "find_factor", "factor_to_json"]


@dataclass(frozen=True)
class FactorState:
    """Pairwise-disjoint partial ITs of an s=1 instance.

    ``members[k]`` maps block -> vertex index.  ``target`` is the number of
    members, equal to the common block size.
    """

    target: int
    members: tuple[dict[int, int], ...]

    @classmethod
    def empty(cls, target: int) -> "FactorState":
        return cls(target, tuple({} for _ in range(target)))

    def coverage(self) -> dict[int, int]:
        return {v: k for k, m in enumerate(self.members) for v in m.values()}

    @property
    def covered(self) -> int:
        return sum(len(m) for m in self.members)

    def check(self, graph: PartitionedGraph) -> None:
        """Assert the member invariants: right blocks, independent, disjoint."""
        seen: set[int] = set()
        adj, bof = graph.adjacency, graph.block_of_index
        for m in self.members:
            vs = set(m.values())
            assert all(bof[v] == b for b, v in m.items()), "vertex filed under wrong block"
            assert not any(adj[v] & vs for v in vs), "member not independent"
            assert not (vs & seen), "members overlap"
            seen |= vs


def augment(state: FactorState, graph: PartitionedGraph, budget: int = oracle.DEFAULT_NODE_BUDGET,
            log: list | None = None) -> FactorState:
    """Cover the lowest uncovered vertex; the covered count grows by at least one."""
    cov = state.coverage()
    v = next((i for i in range(graph.n_vertices) if i not in cov), None)
    if v is None:
        raise ValueError("every vertex is already covered")
    adj, blocks, bof = graph.adjacency, graph.block_indices, graph.block_of_index
    home = bof[v]
    k1 = next((k for k, m in enumerate(state.members) if home not in m), None)
    if k1 is None:
        raise ValueError(f"every member already meets block {home}")
    members = [dict(m) for m in state.members]
    I1 = members[k1]

    if not any(w in adj[v] for w in I1.values()):
        I1[home] = v
        if log is not None:
            log.append({"vertex": graph.ids[v], "member": k1, "kind": "insert"})
        new = FactorState(state.target, tuple(members))
        new.check(graph)
        return new

    # reduced blocks: drop members holding a neighbour of I1's vertex there
    keep: set[int] = set()
    for j in range(graph.r):
        vj = I1.get(j)
        Z = {cov[w] for w in adj[vj] if w in cov} if vj is not None else set()
        part = [u for u in blocks[j] if cov.get(u) not in Z]
        if not part:
            raise NoRootedIT(graph.ids[v])
        keep.update(part)
    reduced = graph._induced_idx(keep)
    T = oracle.find_rooted(reduced, graph.ids[v], 1, budget)
    if T is None:
        raise NoRootedIT(graph.ids[v])

    relocated = []
    for j in range(graph.r):
        if j == home:
            continue
        wj = graph.index(T.selection[j][0])
        vj = I1.get(j)
        if wj == vj:
            continue
        c = cov.get(wj)
        if c is not None:
            if vj is not None:
                members[c][j] = vj
            else:
                del members[c][j]
        elif vj is not None:
            relocated.append(graph.ids[vj])
    members[k1] = {j: graph.index(T.selection[j][0]) for j in range(graph.r)}
    if log is not None:
        log.append({"vertex": graph.ids[v], "member": k1, "kind": "swap", "uncovered_after_swap": relocated})
    new = FactorState(state.target, tuple(members))
    new.check(graph)
    assert new.covered > state.covered
    return new


@dataclass
class FactorResult:
    """Outcome of ``find_factor``; ``factor`` is None when the search failed."""

    factor: list[TransversalBlowup] | None
    hypotheses: dict[str, bool]
    log: list[dict] = field(default_factory=list)
    reason: str | None = None

    def to_json_obj(self, r: int) -> dict:
        return {
            "factor": None if self.factor is None else factor_to_json(self.factor, r),
            "hypotheses": self.hypotheses,
            "reason": self.reason,
        }


def factor_to_json(factor: Sequence[TransversalBlowup], r: int) -> list:
    return [its.to_json_obj(r) for its in factor]


def _hypotheses(graph: PartitionedGraph, s: int, aux_graph: PartitionedGraph) -> dict[str, bool]:
    p = validate(graph)
    n = graph.block_sizes()[0] if graph.r else 0
    delta = p.max_degree
    aux_delta = validate(aux_graph).max_degree
    return {
        "size_at_least_3s2_delta": n >= 3 * s * s * delta,
        "size_above_2s2_delta_small_local_degree": n > 2 * s * s * delta and 10 * p.local_degree <= delta,
        "reduction_3_delta_thick": aux_graph.block_sizes()[0] >= 3 * aux_delta if aux_graph.r else True,
    }


def find_factor(graph: PartitionedGraph, s: int, strategy: str = "augment",
                grouping: Sequence[Sequence[Sequence[str]]] | None = None,
                budget: int = oracle.DEFAULT_NODE_BUDGET) -> FactorResult:
    """Partition V(G) into |V_i|/s disjoint ITSs of size s.

    ``strategy="augment"`` runs the augmentation on the quotient reduction
    with ``grouping`` (consecutive chunks by default); ``"exhaustive"`` runs
    the oracle search directly.  A failed rooted-IT search on an instance
    where the reduction is 3Δ-thick would contradict the existence theorem,
    so it is raised; otherwise the failure is returned with the flags.
    """
    sizes = graph.block_sizes()
    if len(set(sizes)) > 1:
        raise UnequalBlocks(f"block sizes differ: {sizes}")
    for b, n in enumerate(sizes):
        if n % s:
            raise IndivisibleBlock(b, n, s)
    aux = quotient_aux(graph, s, grouping)
    flags = _hypotheses(graph, s, aux.graph)
    if strategy == "exhaustive":
        found = oracle.find_factor(graph, s, budget)
        return FactorResult(found, flags, reason=None if found else "no factor exists")
    if strategy != "augment":
        raise ValueError(f"unknown strategy {strategy!r}")

    H = aux.graph
    t = sizes[0] // s if sizes else 0
    state = FactorState.empty(t)
    log: list[dict] = []
    while state.covered < H.n_vertices:
        try:
            state = augment(state, H, budget, log)
        except NoRootedIT as exc:
            if flags["reduction_3_delta_thick"]:
                raise
            return FactorResult(None, flags, log, reason=str(exc))
    factor = [aux.lift([H.ids[m[b]] for b in range(H.r)]) for m in state.members]
    for its in factor:
        assert verify_its(graph, its).accepted
    return FactorResult(factor, flags, log)


def dumps_factor(factor: Sequence[TransversalBlowup], r: int) -> str:
    return json.dumps(factor_to_json(factor, r), ensure_ascii=False) + "\n"
