"""Reductions from ITS questions to independent-transversal questions.

``blowup_aux`` turns every s-subset of a block into one vertex; an ITS of
the base graph is then exactly an independent transversal (one vertex per
block) of the reduction.  ``quotient_aux`` does the same for a fixed
grouping of each block into s-sets, which is what the factor solver needs.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Sequence

from .errors import (
    AuxTooLarge,
    BlockTooThin,
    DuplicateVertex,
    GroupSizeMismatch,
    IndivisibleBlock,
    NotIndependent,
    NotTransversal,
    UnknownVertex,
)
from .graph import PartitionedGraph, TransversalBlowup, validate
from .oracle import colex_subsets

DEFAULT_AUX_CAP = 10**6

__all__ = [
    "AuxGraph",
    "blowup_aux",
    "quotient_aux",
    "consecutive_grouping",
    "observation_bounds",
    "DEFAULT_AUX_CAP",
]

_SEP = "+"


@dataclass(frozen=True)
class AuxGraph:
    """A reduction together with the map back to the base graph.

    ``graph`` is itself a PartitionedGraph (aux block i corresponds to base
    block i); ``cells[k]`` is the tuple of base vertex indices represented by
    aux vertex k.  ``kind`` is ``"blowup"`` or ``"quotient"``.
    """

    kind: str
    base: PartitionedGraph
    s: int
    graph: PartitionedGraph
    cells: tuple[tuple[int, ...], ...]

    def cell_ids(self, aux_vertex: str) -> tuple[str, ...]:
        return tuple(self.base.ids[i] for i in self.cells[self.graph.index(aux_vertex)])

    def lift(self, transversal: Iterable[str] | TransversalBlowup) -> TransversalBlowup:
        """Map an independent transversal of the reduction to an ITS of the base."""
        if isinstance(transversal, TransversalBlowup):
            if transversal.s != 1:
                raise NotTransversal("an aux transversal picks one vertex per block")
            picked = [v for b in sorted(transversal.selection) for v in transversal.selection[b]]
        else:
            picked = list(transversal)
        g = self.graph
        idx = []
        for v in picked:
            if v not in g:
                raise UnknownVertex(v)
            idx.append(g.index(v))
        per_block: dict[int, int] = {}
        for i in idx:
            b = g.block_of_index[i]
            if b in per_block:
                raise NotTransversal(f"two aux vertices chosen in block {b}")
            per_block[b] = i
        if len(per_block) != g.r:
            missing = sorted(set(range(g.r)) - set(per_block))
            raise NotTransversal(f"no aux vertex chosen in blocks {missing}")
        chosen = set(idx)
        for i in idx:
            hit = g.adjacency[i] & chosen
            if hit:
                j = min(hit)
                raise NotIndependent(f"aux vertices {g.ids[i]!r} and {g.ids[j]!r} are adjacent")
        return TransversalBlowup.from_indices(self.base, self.s, {b: self.cells[i] for b, i in per_block.items()})

    def unlift(self, its: TransversalBlowup) -> list[str]:
        """The aux transversal whose lift is ``its`` (one aux id per block)."""
        lookup = {frozenset(c): k for k, c in enumerate(self.cells)}
        out = []
        for b in range(self.base.r):
            key = frozenset(self.base.index(v) for v in its.selection[b])
            if key not in lookup:
                raise NotTransversal(f"block {b} selection is not a cell of this reduction")
            out.append(self.graph.ids[lookup[key]])
        return out


def _aux_id(base, cell):
    return _SEP.join(sorted(base.ids[i] for i in cell))


def _build(kind, base, s, cells_per_block):
    cells: list[tuple[int, ...]] = []
    blocks: list[list[int]] = []
    containing: dict[int, list[int]] = {}
    for cell_list in cells_per_block:
        members = []
        for cell in cell_list:
            k = len(cells)
            cells.append(tuple(cell))
            members.append(k)
            for v in cell:
                containing.setdefault(v, []).append(k)
        blocks.append(members)
    # each base edge u-w joins every cell holding u to every cell holding w
    adj: list[set[int]] = [set() for _ in cells]
    for u, w in base.edge_indices():
        cu, cw = containing.get(u, ()), containing.get(w, ())
        for a in cu:
            adj[a].update(cw)
        for b in cw:
            adj[b].update(cu)
    ids = [_aux_id(base, c) for c in cells]
    if len(set(ids)) != len(ids):
        raise DuplicateVertex("aux ids collide; base ids must not contain " + repr(_SEP))
    g = PartitionedGraph._from_indices(ids, blocks, adj)
    return AuxGraph(kind, base, s, g, tuple(cells))


def blowup_aux(graph: PartitionedGraph, s: int, cap: int = DEFAULT_AUX_CAP) -> AuxGraph:
    """One aux vertex per s-subset of each block, colex-ordered."""
    if s < 1:
        raise ValueError("s must be positive")
    total = 0
    for b, members in enumerate(graph.block_indices):
        if len(members) < s:
            raise BlockTooThin(b, len(members), s)
        total += comb(len(members), s)
    if total > cap:
        raise AuxTooLarge(f"reduction would have {total} vertices (cap {cap})")
    return _build("blowup", graph, s, [list(colex_subsets(m, s)) for m in graph.block_indices])


def consecutive_grouping(graph: PartitionedGraph, s: int) -> list[list[list[str]]]:
    """Split each block into consecutive chunks of s ids."""
    out = []
    for b, members in enumerate(graph.blocks):
        if len(members) % s:
            raise IndivisibleBlock(b, len(members), s)
        out.append([members[k:k + s] for k in range(0, len(members), s)])
    return out


def quotient_aux(graph: PartitionedGraph, s: int, grouping: Sequence[Sequence[Sequence[str]]] | None = None) -> AuxGraph:
    """One aux vertex per prescribed s-group; every block must split into the same number of groups."""
    if grouping is None:
        grouping = consecutive_grouping(graph, s)
    if len(grouping) != graph.r:
        raise GroupSizeMismatch(f"grouping has {len(grouping)} blocks, graph has {graph.r}")
    sizes = graph.block_sizes()
    for b, n in enumerate(sizes):
        if n % s:
            raise IndivisibleBlock(b, n, s)
    if len(set(sizes)) != 1:
        raise GroupSizeMismatch(f"blocks must all have t*s vertices, got sizes {sizes}")
    cells_per_block = []
    for b, groups in enumerate(grouping):
        seen: set[int] = set()
        cells = []
        for group in groups:
            if len(group) != s:
                raise GroupSizeMismatch(f"group {list(group)} in block {b} has size {len(group)} != {s}")
            idx = [graph.index(v) for v in group]
            for i in idx:
                if graph.block_of_index[i] != b:
                    raise GroupSizeMismatch(f"vertex {graph.ids[i]!r} grouped into block {b}")
                if i in seen:
                    raise GroupSizeMismatch(f"vertex {graph.ids[i]!r} grouped twice")
                seen.add(i)
            cells.append(tuple(sorted(idx)))
        if len(seen) != sizes[b]:
            raise GroupSizeMismatch(f"grouping of block {b} does not cover it")
        cells_per_block.append(cells)
    return _build("quotient", graph, s, cells_per_block)


def observation_bounds(aux: AuxGraph) -> dict[str, tuple[Fraction, Fraction]]:
    """The four size/degree bounds relating a reduction to its base.

    Returns name -> (value on the reduction, bound); every value must be
    <= its bound, except ``block_sizes`` which must hold with equality.
    For the blow-up with unequal blocks the largest block size plays the
    role of the common block size, which keeps all bounds valid.
    """
    base_p = validate(aux.base)
    aux_p = validate(aux.graph)
    s = aux.s
    if aux.kind == "blowup":
        ell = max(aux.base.block_sizes())
        factor = s * comb(ell - 1, s - 1)
        want_sizes = tuple(comb(n, s) for n in aux.base.block_sizes())
    else:
        factor = s
        t = aux.base.block_sizes()[0] // s
        want_sizes = (t,) * aux.base.r
    got_sizes = tuple(aux.graph.block_sizes())
    return {
        "block_sizes": (got_sizes, want_sizes),
        "max_degree": (Fraction(aux_p.max_degree), Fraction(factor * base_p.max_degree)),
        "local_degree": (Fraction(aux_p.local_degree), Fraction(factor * base_p.local_degree)),
        "max_block_avg": (aux_p.max_block_avg, factor * base_p.max_block_avg),
    }


def observation_violations(aux: AuxGraph) -> list[str]:
    out = []
    for name, (got, bound) in observation_bounds(aux).items():
        ok = got == bound if name == "block_sizes" else got <= bound
        if not ok:
            out.append(f"{name}: {got} vs {bound}")
    return out
