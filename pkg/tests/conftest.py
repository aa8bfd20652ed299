import itertools
import random
from decimal import Decimal, localcontext
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import strategies as st

from itsblowup import PartitionedGraph

GOLDEN = Path(__file__).parent / "golden"


def random_graph(rng: random.Random, sizes, density: float) -> PartitionedGraph:
    """Blocks named by position, each cross pair kept with probability ``density``."""
    blocks = [[f"b{i}v{k}" for k in range(n)] for i, n in enumerate(sizes)]
    flat = [(i, v) for i, b in enumerate(blocks) for v in b]
    edges = [(u, v) for (i, u), (j, v) in itertools.combinations(flat, 2) if i != j and rng.random() < density]
    return PartitionedGraph(blocks, edges)


@st.composite
def partitioned_graphs(draw, max_r=4, max_size=4, min_size=1, min_r=1):
    r = draw(st.integers(min_r, max_r))
    sizes = draw(st.lists(st.integers(min_size, max_size), min_size=r, max_size=r))
    blocks = [[f"b{i}v{k}" for k in range(n)] for i, n in enumerate(sizes)]
    flat = [(i, v) for i, b in enumerate(blocks) for v in b]
    pairs = [(u, v) for (i, u), (j, v) in itertools.combinations(flat, 2) if i != j]
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return PartitionedGraph(blocks, [p for p, k in zip(pairs, keep) if k])


def brute_force_its(graph: PartitionedGraph, s: int) -> set[frozenset[str]]:
    """Every ITS of size s as a vertex set, by plain product enumeration."""
    edges = {frozenset(e) for e in graph.edges()}
    found = set()
    for pick in itertools.product(*(itertools.combinations(b, s) for b in graph.blocks)):
        chosen = [v for part in pick for v in part]
        if not any(frozenset(p) in edges for p in itertools.combinations(chosen, 2)):
            found.add(frozenset(chosen))
    return found


def brute_force_clique_blowup(graph: PartitionedGraph, s: int) -> bool:
    """K_r(s) search directly in the graph: s vertices per block, all cross pairs adjacent."""
    edges = {frozenset(e) for e in graph.edges()}
    blocks = graph.blocks
    if any(len(b) < s for b in blocks):
        return False
    for pick in itertools.product(*(itertools.combinations(b, s) for b in blocks)):
        ok = all(
            frozenset((u, v)) in edges
            for i, j in itertools.combinations(range(len(pick)), 2)
            for u in pick[i]
            for v in pick[j]
        )
        if ok:
            return True
    return False


@pytest.fixture
def golden_dir():
    return GOLDEN


def e_decimal():
    with localcontext() as ctx:
        ctx.prec = 80
        return Decimal(1).exp()


def dec(x):
    return Decimal(x.numerator) / Decimal(x.denominator)


def handoff_holds(s, eps, p, t):
    """S(t+1) >= 2e s^2 D(t+1), compared in logarithms at 80 digits."""
    with localcontext() as ctx:
        ctx.prec = 80
        q = dec(1 - p + eps * p / (2 * s)) / dec(1 - p + eps * p / (4 * s))
        lhs = dec(Fraction(s) + eps).ln() + t * q.ln()
        rhs = (2 * s * s * e_decimal()).ln()
        return lhs >= rhs
