"""Multipartite graphs, their degree statistics, and the ITS verifier.

Vertices carry opaque string ids.  Internally every vertex also has an
integer index in the global order (block index, position within block), and
all tie-breaking in the package uses that order.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import (
    DanglingEdgeEndpoint,
    DuplicateEdge,
    DuplicateVertex,
    EmptyBlock,
    IntraBlockEdge,
    SelfLoop,
    UnknownVertex,
)

__all__ = [
    "PartitionedGraph",
    "DegreeProfile",
    "TransversalBlowup",
    "VerificationReport",
    "BlockSizeMismatch",
    "EdgeInside",
    "validate",
    "complement",
    "verify_its",
    "has_clique_blowup",
    "load_instance",
    "dump_instance",
]


class PartitionedGraph:
    """An r-partite graph with a fixed ordered partition into blocks.

    The constructor rejects anything that is not a valid partitioned graph:
    empty blocks, repeated vertex ids, loops, repeated edges, edges inside a
    block, and edges naming unknown vertices.  Instances are immutable.
    """

    __slots__ = ("_ids", "_index", "_block_of", "_blocks", "_adj", "_nedges")

    def __init__(self, blocks: Iterable[Iterable[str]], edges: Iterable[Sequence[str]] = ()):
        ids: list[str] = []
        index: dict[str, int] = {}
        block_of: list[int] = []
        block_idx: list[tuple[int, ...]] = []
        for b, block in enumerate(blocks):
            members = []
            for vid in block:
                vid = str(vid)
                if vid in index:
                    raise DuplicateVertex(vid)
                index[vid] = len(ids)
                members.append(len(ids))
                ids.append(vid)
                block_of.append(b)
            if not members:
                raise EmptyBlock(b)
            block_idx.append(tuple(members))

        adj: list[set[int]] = [set() for _ in ids]
        nedges = 0
        for edge in edges:
            u, v = (str(x) for x in edge)
            for w in (u, v):
                if w not in index:
                    raise DanglingEdgeEndpoint(w)
            if u == v:
                raise SelfLoop(u)
            iu, iv = index[u], index[v]
            if block_of[iu] == block_of[iv]:
                raise IntraBlockEdge(u, v)
            if iv in adj[iu]:
                raise DuplicateEdge(u, v)
            adj[iu].add(iv)
            adj[iv].add(iu)
            nedges += 1

        self._ids = tuple(ids)
        self._index = index
        self._block_of = tuple(block_of)
        self._blocks = tuple(block_idx)
        self._adj = tuple(frozenset(a) for a in adj)
        self._nedges = nedges

    @classmethod
    def _from_indices(cls, ids, blocks, adj):
        """Trusted constructor used by reductions that already guarantee validity."""
        g = object.__new__(cls)
        g._ids = tuple(ids)
        g._index = {vid: i for i, vid in enumerate(g._ids)}
        g._blocks = tuple(tuple(b) for b in blocks)
        block_of = [0] * len(g._ids)
        for b, members in enumerate(g._blocks):
            for i in members:
                block_of[i] = b
        g._block_of = tuple(block_of)
        g._adj = tuple(frozenset(a) for a in adj)
        g._nedges = sum(len(a) for a in g._adj) // 2
        return g

    # -- basic accessors -------------------------------------------------
    @property
    def r(self) -> int:
        return len(self._blocks)

    @property
    def n_vertices(self) -> int:
        return len(self._ids)

    @property
    def n_edges(self) -> int:
        return self._nedges

    @property
    def ids(self) -> tuple[str, ...]:
        return self._ids

    @property
    def block_indices(self) -> tuple[tuple[int, ...], ...]:
        return self._blocks

    @property
    def adjacency(self) -> tuple[frozenset[int], ...]:
        return self._adj

    @property
    def block_of_index(self) -> tuple[int, ...]:
        return self._block_of

    @property
    def blocks(self) -> list[list[str]]:
        return [[self._ids[i] for i in b] for b in self._blocks]

    def block_sizes(self) -> list[int]:
        return [len(b) for b in self._blocks]

    def index(self, vid: str) -> int:
        try:
            return self._index[vid]
        except KeyError:
            raise UnknownVertex(vid) from None

    def __contains__(self, vid) -> bool:
        return vid in self._index

    def block_of(self, vid: str) -> int:
        return self._block_of[self.index(vid)]

    def neighbors(self, vid: str) -> list[str]:
        return [self._ids[j] for j in sorted(self._adj[self.index(vid)])]

    def degree(self, vid: str) -> int:
        return len(self._adj[self.index(vid)])

    def adjacent(self, u: str, v: str) -> bool:
        return self.index(v) in self._adj[self.index(u)]

    def edge_indices(self) -> list[tuple[int, int]]:
        """Edges as (i, j) index pairs with i < j, in increasing order."""
        return [(i, j) for i, a in enumerate(self._adj) for j in sorted(a) if i < j]

    def edges(self) -> list[tuple[str, str]]:
        """Edges oriented and sorted lexicographically by id."""
        out = []
        for i, j in self.edge_indices():
            u, v = self._ids[i], self._ids[j]
            out.append((u, v) if u <= v else (v, u))
        out.sort()
        return out

    def induced(self, keep: Iterable[str]) -> "PartitionedGraph":
        """Subgraph induced by ``keep``; blocks keep their order and must stay nonempty."""
        keep_idx = {self.index(v) for v in keep}
        return self._induced_idx(keep_idx)

    def _induced_idx(self, keep_idx) -> "PartitionedGraph":
        new_blocks_old = [[i for i in b if i in keep_idx] for b in self._blocks]
        for b, members in enumerate(new_blocks_old):
            if not members:
                raise EmptyBlock(b)
        remap = {}
        ids = []
        for members in new_blocks_old:
            for i in members:
                remap[i] = len(ids)
                ids.append(self._ids[i])
        blocks = [[remap[i] for i in members] for members in new_blocks_old]
        adj = [set() for _ in ids]
        for old, new in remap.items():
            adj[new] = {remap[j] for j in self._adj[old] if j in remap}
        return PartitionedGraph._from_indices(ids, blocks, adj)

    def __eq__(self, other):
        if not isinstance(other, PartitionedGraph):
            return NotImplemented
        return self._ids == other._ids and self._blocks == other._blocks and self._adj == other._adj

    def __hash__(self):
        return hash((self._ids, self._blocks, self._adj))

    def __repr__(self):
        return f"PartitionedGraph(r={self.r}, sizes={self.block_sizes()}, edges={self.n_edges})"


@dataclass(frozen=True)
class DegreeProfile:
    max_degree: int
    max_block_avg: Fraction
    local_degree: int
    thickness: int
    per_block_avg: tuple[Fraction, ...]


def validate(graph: PartitionedGraph) -> DegreeProfile:
    """Degree statistics of a graph.

    Validity is enforced when the graph is built, so this only has to
    measure: maximum degree, block average degrees and their maximum, the
    local degree (most neighbours any vertex has inside one block) and the
    thickness (smallest block size).
    """
    adj, bof = graph.adjacency, graph.block_of_index
    per_block = []
    for members in graph.block_indices:
        per_block.append(Fraction(sum(len(adj[i]) for i in members), len(members)))
    max_deg = max((len(a) for a in adj), default=0)
    local = 0
    for a in adj:
        counts: dict[int, int] = {}
        for j in a:
            counts[bof[j]] = counts.get(bof[j], 0) + 1
        if counts:
            local = max(local, max(counts.values()))
    return DegreeProfile(
        max_degree=max_deg,
        max_block_avg=max(per_block, default=Fraction(0)),
        local_degree=local,
        thickness=min(graph.block_sizes(), default=0),
        per_block_avg=tuple(per_block),
    )


def complement(graph: PartitionedGraph) -> PartitionedGraph:
    """r-partite complement: same blocks, cross-block edges flipped."""
    n = graph.n_vertices
    bof = graph.block_of_index
    adj = []
    for i in range(n):
        a = graph.adjacency[i]
        adj.append({j for j in range(n) if bof[j] != bof[i] and j not in a})
    return PartitionedGraph._from_indices(graph.ids, graph.block_indices, adj)


@dataclass(frozen=True)
class TransversalBlowup:
    """s vertices chosen from each covered block.

    ``selection`` maps block index to the chosen ids (kept in the graph's
    within-block order when produced by a solver).  A full ITS covers every
    block; a partial one (PITS) covers a subset.
    """

    s: int
    selection: Mapping[int, tuple[str, ...]]

    @property
    def covered_blocks(self) -> frozenset[int]:
        return frozenset(self.selection)

    def vertices(self) -> list[str]:
        return [v for b in sorted(self.selection) for v in self.selection[b]]

    @classmethod
    def from_indices(cls, graph: PartitionedGraph, s: int, chosen: Mapping[int, Iterable[int]]):
        ids = graph.ids
        return cls(s, {b: tuple(ids[i] for i in sorted(idx)) for b, idx in sorted(chosen.items())})

    def to_json_obj(self, r: int | None = None) -> dict:
        if r is None:
            r = max(self.selection, default=-1) + 1
        return {
            "s": self.s,
            "selection": [list(self.selection[b]) if b in self.selection else None for b in range(r)],
        }

    @classmethod
    def from_json_obj(cls, obj) -> "TransversalBlowup":
        sel = {}
        for b, chosen in enumerate(obj["selection"]):
            if chosen is not None:
                sel[b] = tuple(chosen)
        return cls(int(obj["s"]), sel)


@dataclass(frozen=True)
class BlockSizeMismatch:
    block: int
    got: int
    want: int


@dataclass(frozen=True)
class EdgeInside:
    u: str
    v: str


@dataclass(frozen=True)
class WrongBlock:
    vertex: str
    block: int
    actual: int


@dataclass
class VerificationReport:
    accepted: bool
    unknown: list[str] = field(default_factory=list)
    size_mismatches: list[BlockSizeMismatch] = field(default_factory=list)
    wrong_block: list[WrongBlock] = field(default_factory=list)
    edges_inside: list[EdgeInside] = field(default_factory=list)

    def __bool__(self):
        return self.accepted

    def to_json_obj(self) -> dict:
        return {
            "accepted": self.accepted,
            "unknown": self.unknown,
            "size_mismatches": [vars(m) for m in self.size_mismatches],
            "wrong_block": [vars(w) for w in self.wrong_block],
            "edges_inside": [[e.u, e.v] for e in self.edges_inside],
        }


def verify_its(graph: PartitionedGraph, cand: TransversalBlowup, blocks: Iterable[int] | None = None) -> VerificationReport:
    """Check a candidate against the graph and list every violation.

    By default all r blocks must be covered with exactly ``cand.s`` vertices;
    pass ``blocks`` to verify a partial selection over just those blocks.
    """
    want_blocks = range(graph.r) if blocks is None else sorted(blocks)
    report = VerificationReport(accepted=True)
    chosen: list[int] = []
    for b in want_blocks:
        got = cand.selection.get(b, ())
        if len(set(got)) != cand.s:
            report.size_mismatches.append(BlockSizeMismatch(b, len(set(got)), cand.s))
    for b, vids in cand.selection.items():
        for vid in vids:
            if vid not in graph:
                report.unknown.append(vid)
                continue
            i = graph.index(vid)
            if graph.block_of_index[i] != b:
                report.wrong_block.append(WrongBlock(vid, b, graph.block_of_index[i]))
            chosen.append(i)
    chosen_set = set(chosen)
    for i in sorted(chosen_set):
        for j in sorted(graph.adjacency[i]):
            if i < j and j in chosen_set:
                report.edges_inside.append(EdgeInside(graph.ids[i], graph.ids[j]))
    report.accepted = not (report.unknown or report.size_mismatches or report.wrong_block or report.edges_inside)
    return report


def has_clique_blowup(graph: PartitionedGraph, s: int) -> bool:
    """Whether the graph contains K_r(s) respecting the partition.

    Decided by searching for an ITS of size s in the r-partite complement.
    """
    from .oracle import find_its
    from .errors import BlockTooThin

    try:
        return find_its(complement(graph), s) is not None
    except BlockTooThin:
        return False


# -- instance files ------------------------------------------------------

def dump_instance(graph: PartitionedGraph, s: int | None = None) -> str:
    """Canonical JSON text for an instance (blocks as stored, edges sorted)."""
    obj: dict = {}
    if s is not None:
        obj["s"] = s
    obj["blocks"] = graph.blocks
    obj["edges"] = [list(e) for e in graph.edges()]
    return json.dumps(obj, ensure_ascii=False) + "\n"


def load_instance(text: str) -> tuple[PartitionedGraph, int | None]:
    obj = json.loads(text)
    graph = PartitionedGraph(obj["blocks"], obj.get("edges", []))
    return graph, obj.get("s")
