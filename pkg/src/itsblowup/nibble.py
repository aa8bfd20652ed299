"""Semi-random (nibble) construction of an ITS.

Each round prunes every surviving block to the scheduled size, draws one
uniform s-set per block, activates blocks with probability p, greedily keeps
the activated s-sets that are mutually non-adjacent, deletes the kept blocks
together with every vertex adjacent to a kept s-set, and checks that the
survivors still match the schedule.  After the last round the residual
graph is thick enough for the local-lemma solver, whose ITS is merged with
the partial ITS collected along the way.
"""
from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from . import lll
from ._exact import e_lt_ratio
from .errors import BudgetExceeded, HypothesisViolated, RetriesExhausted, ScheduleDiverged, ThinnedOut
from .graph import PartitionedGraph, TransversalBlowup, validate, verify_its

__all__ = [
    "NibbleSchedule",
    "NibbleConfig",
    "NibbleRoundState",
    "NibbleResult",
    "truncate",
    "build_schedule",
    "asymptotic_parameters",
    "initial_state",
    "run_round",
    "solve",
]

DEFAULT_P = Fraction(3, 20)


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(str(x)) if isinstance(x, float) else Fraction(x)


# -- preprocessing ---------------------------------------------------------

def truncate(graph: PartitionedGraph, s: int, eps, D) -> tuple[PartitionedGraph, Fraction]:
    """Drop every vertex of degree >= 16sD/eps and inflate D accordingly.

    Returns the induced graph and D' = D / (1 - eps/(16s)).  The output
    satisfies |W_i| >= (s + eps/4) D', block averages <= D' and maximum
    degree <= 16sD'/eps; these are checked before returning.
    """
    eps, D = _frac(eps), _frac(D)
    if not 0 < eps < 16 * s:
        raise HypothesisViolated("eps range", f"need 0 < eps < 16s, got {eps}")
    prof = validate(graph)
    if prof.max_block_avg > D:
        raise HypothesisViolated("block average", f"{prof.max_block_avg} > {D}")
    if prof.thickness < (s + eps / 2) * D:
        raise HypothesisViolated("thickness", f"{prof.thickness} < {(s + eps / 2) * D}")
    threshold = 16 * s * D / eps
    adj = graph.adjacency
    keep = {i for i in range(graph.n_vertices) if len(adj[i]) < threshold}
    out = graph._induced_idx(keep)
    D2 = D / (1 - eps / (16 * s))
    p2 = validate(out)
    if p2.thickness < (s + eps / 4) * D2:
        raise HypothesisViolated("output thickness", f"{p2.thickness} < {(s + eps / 4) * D2}")
    if p2.max_block_avg > D2:
        raise HypothesisViolated("output block average", f"{p2.max_block_avg} > {D2}")
    if p2.max_degree > 16 * s * D2 / eps:
        raise HypothesisViolated("output max degree")
    return out, D2


# -- schedule --------------------------------------------------------------

@dataclass(frozen=True)
class NibbleSchedule:
    """Target thickness S(t) and block-average bound D(t), exact, for t >= 1.

    S(t) = (s+eps) D m_S^(t-1) and D(t) = D m_D^(t-1) with
    m_S = 1 - p + eps p/(2s) and m_D = 1 - p + eps p/(4s); values are
    computed on demand since t_star can run to thousands for small p.
    """

    s: int
    eps: Fraction
    D: Fraction
    p: Fraction
    t_star: int

    @property
    def m_S(self) -> Fraction:
        return 1 - self.p + self.eps * self.p / (2 * self.s)

    @property
    def m_D(self) -> Fraction:
        return 1 - self.p + self.eps * self.p / (4 * self.s)

    def S_at(self, t: int) -> Fraction:
        return (self.s + self.eps) * self.D * self.m_S ** (t - 1)

    def D_at(self, t: int) -> Fraction:
        return self.D * self.m_D ** (t - 1)

    @property
    def S(self) -> tuple[Fraction, ...]:
        """S(1..t_star+1)."""
        return tuple(self.S_at(t) for t in range(1, self.t_star + 2))

    @property
    def Dseq(self) -> tuple[Fraction, ...]:
        return tuple(self.D_at(t) for t in range(1, self.t_star + 2))

    def handoff_ok(self, t: int) -> bool:
        """S(t+1) >= 2e s^2 D(t+1), decided exactly.

        Equivalent to (s+eps) (m_S/m_D)^t > 2e s^2, which stays in integers.
        """
        q = self.m_S / self.m_D
        c = self.s + self.eps
        num = c.numerator * q.numerator ** t
        den = 2 * self.s * self.s * c.denominator * q.denominator ** t
        return e_lt_ratio(num, den)


def asymptotic_parameters(s: int, eps, D) -> tuple[Fraction, int]:
    """p = 1/log^3 D and t* = ceil(8s log(2es)/(eps p)); only meaningful for large D."""
    D = float(D)
    if D <= math.e:
        raise ValueError("p = 1/log^3 D needs D > e")
    p = Fraction(1 / math.log(D) ** 3).limit_denominator(10**9)
    return p, _asymptotic_tstar(s, _frac(eps), p)


def _asymptotic_tstar(s, eps, p) -> int:
    return max(1, math.ceil(8 * s * math.log(2 * math.e * s) / (float(eps) * float(p))))


def build_schedule(s: int, eps, D, p=None, tstar: int | str | None = None) -> NibbleSchedule:
    """Exact schedule; t_star defaults to the first round meeting the handoff condition.

    ``tstar`` may be an int or ``"asymptotic"``; it is kept when it already meets
    S(t*+1) >= 2e s^2 D(t*+1), otherwise the smallest t that does is used.
    The condition is monotone in t (S shrinks more slowly than D), so the
    smallest t is found by doubling and then bisection.
    """
    eps, D = _frac(eps), _frac(D)
    p = DEFAULT_P if p is None else _frac(p)
    if not 0 < p < 1:
        raise ValueError("p must lie in (0, 1)")
    if eps <= 0 or D <= 0 or s < 1:
        raise ValueError("need eps > 0, D > 0, s >= 1")
    limit = 10 * _asymptotic_tstar(s, eps, p)
    if tstar == "asymptotic":
        tstar = _asymptotic_tstar(s, eps, p)
    probe = NibbleSchedule(s, eps, D, p, 1)
    if isinstance(tstar, int):
        if tstar < 1:
            raise ValueError("t_star must be positive")
        if probe.handoff_ok(tstar):
            return NibbleSchedule(s, eps, D, p, tstar)
    hi = 1
    while not probe.handoff_ok(hi):
        if hi >= limit:
            raise ScheduleDiverged(f"no t <= {limit} meets the handoff condition")
        hi = min(2 * hi, limit)
    lo = hi // 2 + 1 if hi > 1 else 1
    while lo < hi:
        mid = (lo + hi) // 2
        if probe.handoff_ok(mid):
            hi = mid
        else:
            lo = mid + 1
    return NibbleSchedule(s, eps, D, p, lo)


# -- rounds ----------------------------------------------------------------

@dataclass
class NibbleRoundState:
    """Where the procedure stands at the start of round ``t``.

    ``alive`` holds surviving vertex indices of the original graph and
    ``active`` the surviving block indices I(t).  ``partial`` is the
    accumulated partial ITS (block -> vertex indices).  The remaining fields
    describe the round that produced this state.
    """

    t: int
    alive: frozenset[int]
    active: tuple[int, ...]
    partial: dict[int, tuple[int, ...]]
    selected: dict[int, tuple[int, ...]] = field(default_factory=dict)  # T
    activated: tuple[int, ...] = ()  # J
    accepted: tuple[int, ...] = ()  # J'
    deleted: tuple[int, ...] = ()
    artificially_deleted: tuple[int, ...] = ()
    pruned: tuple[int, ...] = ()
    retention: dict[int, float] = field(default_factory=dict)  # p_v


def initial_state(graph: PartitionedGraph) -> NibbleRoundState:
    return NibbleRoundState(t=1, alive=frozenset(range(graph.n_vertices)), active=tuple(range(graph.r)), partial={})


def _natural_survival(graph, alive, v, active, p, s, sizes):
    """Survival estimate assuming every activated block is kept."""
    bof = graph.block_of_index
    counts: dict[int, int] = {}
    for w in graph.adjacency[v]:
        if w in alive:
            counts[bof[w]] = counts.get(bof[w], 0) + 1
    est = 1.0
    for b, c in counts.items():
        n = sizes[b]
        hit = 1 - comb(n - c, s) / comb(n, s)
        est *= 1 - float(p) * hit
    return est


def run_round(state: NibbleRoundState, graph: PartitionedGraph, schedule: NibbleSchedule,
              rng: random.Random, artificial_deletion: bool = False) -> NibbleRoundState:
    """One round: prune, sample, activate, keep a maximal independent part, delete."""
    s, t, p = schedule.s, state.t, schedule.p
    adj, blocks = graph.adjacency, graph.block_indices
    alive = set(state.alive)
    S_t = schedule.S_at(t)

    # A0
    target = max(s, math.ceil(S_t))
    pruned = lll.prune_order(adj, blocks, alive, {b: target for b in state.active})
    members = {b: [v for v in blocks[b] if v in alive] for b in state.active}
    for b, m in members.items():
        if len(m) < s:
            raise ThinnedOut(b, len(m))

    # A1
    T = {b: tuple(sorted(rng.sample(members[b], s))) for b in state.active}
    retention = {}
    for b in state.active:
        for v in members[b]:
            d = sum(1 for w in adj[v] if w in alive)
            retention[v] = float(1 - d * p * s / S_t)

    # A2
    pf = float(p)
    J = tuple(b for b in state.active if rng.random() < pf)
    accepted: list[int] = []
    taken: set[int] = set()
    for b in J:
        if not any(w in taken for v in T[b] for w in adj[v]):
            accepted.append(b)
            taken.update(T[b])

    # A3
    acc = set(accepted)
    for b in accepted:
        alive.difference_update(members[b])
    remaining = [b for b in state.active if b not in acc]
    deleted = sorted(w for v in taken for w in adj[v] if w in alive)
    deleted = sorted(set(deleted))
    alive.difference_update(deleted)

    artificial = []
    if artificial_deletion:
        sizes = {b: len(members[b]) for b in state.active}
        before = set(state.alive) - set(pruned)
        for b in remaining:
            for v in members[b]:
                if v not in alive:
                    continue
                est = _natural_survival(graph, before, v, state.active, p, s, sizes)
                extra = max(0.0, 1 - max(retention[v], 0.0) / est) if est > 0 else 1.0
                if rng.random() < extra:
                    artificial.append(v)
        alive.difference_update(artificial)

    for b in remaining:
        left = sum(1 for v in members[b] if v in alive)
        if left < s:
            raise ThinnedOut(b, left)

    partial = dict(state.partial)
    for b in accepted:
        partial[b] = T[b]
    return NibbleRoundState(
        t=t + 1,
        alive=frozenset(alive),
        active=tuple(remaining),
        partial=partial,
        selected=T,
        activated=J,
        accepted=tuple(accepted),
        deleted=tuple(deleted),
        artificially_deleted=tuple(artificial),
        pruned=tuple(pruned),
        retention=retention,
    )


def schedule_violations(state: NibbleRoundState, graph: PartitionedGraph, schedule: NibbleSchedule) -> list[str]:
    """Blocks breaking the thickness (G1) or average-degree (G2) targets for round state.t."""
    t = state.t
    S_next, D_next = schedule.S_at(t), schedule.D_at(t)
    adj = graph.adjacency
    alive = state.alive
    out = []
    for b in state.active:
        m = [v for v in graph.block_indices[b] if v in alive]
        if len(m) < S_next:
            out.append(f"G1 block {b}: {len(m)} < {float(S_next):.3f}")
        deg = sum(1 for v in m for w in adj[v] if w in alive)
        if Fraction(deg, len(m)) > D_next:
            out.append(f"G2 block {b}: {deg}/{len(m)} > {float(D_next):.3f}")
    return out


# -- driver ----------------------------------------------------------------

@dataclass(frozen=True)
class NibbleConfig:
    D: Fraction | None = None
    p: Fraction | None = None
    tstar: int | str | None = None
    max_round_attempts: int = 50
    artificial_deletion: bool = False
    strict: bool = False
    lll_max_resamples: int = 10**4
    seed: int = 0
    restarts: int = 4


@dataclass
class NibbleResult:
    its: TransversalBlowup
    log: list[dict]
    schedule: NibbleSchedule | None
    lll_stats: lll.LllStats | None
    local_degree_ok: bool
    restarts: int = 0

    @property
    def rounds(self) -> int:
        return len(self.log)

    def log_jsonl(self) -> str:
        return "".join(json.dumps(rec, sort_keys=True) + "\n" for rec in self.log)


def _round_rng(seed, t, attempt):
    return random.Random((seed * 1_000_003 + t) * 1_009 + attempt)


def _restart_seed(seed, k):
    return seed + k * 1_000_000_007


def solve(graph: PartitionedGraph, s: int, eps=1, config: NibbleConfig = NibbleConfig()) -> NibbleResult:
    """Run rounds 1..t_star, then finish the residual graph with the LLL solver.

    A round whose outcome thins a block out or breaks the schedule's
    thickness/average targets is rerun with a fresh seed, up to
    ``max_round_attempts`` attempts.  If none meets the targets, the attempt
    with the fewest violations is kept and they are logged; with ``strict``
    set, ``RetriesExhausted`` is raised instead.  A round in which every
    attempt thins a block out always raises.

    A run that fails (a round gives up, or the terminal LLL runs out of
    resamples) is repeated from scratch with a derived seed, up to
    ``config.restarts`` more times; the last failure is raised.
    """
    eps = _frac(eps)
    prof = validate(graph)
    D = prof.max_block_avg if config.D is None else _frac(config.D)
    if prof.max_block_avg > D:
        raise HypothesisViolated("block average", f"{prof.max_block_avg} > {D}")
    if prof.thickness < (s + eps / 4) * D:
        raise HypothesisViolated("thickness", f"{prof.thickness} < {(s + eps / 4) * D}")
    local_ok = D > 0 and prof.local_degree <= float(D) ** 0.2
    schedule = build_schedule(s, eps, D, config.p, config.tstar) if D > 0 and graph.n_edges else None
    for k in range(config.restarts + 1):
        try:
            res = _run(graph, s, schedule, config, _restart_seed(config.seed, k))
        except (RetriesExhausted, BudgetExceeded):
            if k == config.restarts:
                raise
            continue
        res.local_degree_ok = local_ok
        res.restarts = k
        return res


def _run(graph, s, schedule, config, seed) -> NibbleResult:
    state = initial_state(graph)
    log: list[dict] = []
    if schedule is not None:
        while state.t <= schedule.t_star and state.active:
            t = state.t
            problems: list[str] = []
            nxt = None
            attempts = 0
            for attempt in range(config.max_round_attempts):
                attempts = attempt + 1
                rng = _round_rng(seed, t, attempt)
                try:
                    cand = run_round(state, graph, schedule, rng, config.artificial_deletion)
                except ThinnedOut:
                    continue
                found = schedule_violations(cand, graph, schedule)
                if nxt is None or len(found) < len(problems):
                    nxt, problems = cand, found
                if not problems:
                    break
            if nxt is None or (problems and config.strict):
                raise RetriesExhausted(t, attempts, log)
            log.append({
                "t": t,
                "active_blocks": len(state.active),
                "S": round(float(schedule.S_at(t)), 6),
                "Dseq": round(float(schedule.D_at(t)), 6),
                "activated": len(nxt.activated),
                "accepted": len(nxt.accepted),
                "activated_blocks": list(nxt.activated),
                "accepted_blocks": list(nxt.accepted),
                "deletions": len(nxt.deleted) + len(nxt.artificially_deleted),
                "pruned": len(nxt.pruned),
                "retries": attempts - 1,
                "violations": problems,
            })
            state = nxt

    # terminal handoff
    selection = {b: sel for b, sel in state.partial.items()}
    stats = None
    if state.active:
        keep = [v for b in state.active for v in graph.block_indices[b] if v in state.alive]
        blocks_left = [[graph.ids[v] for v in graph.block_indices[b] if v in state.alive] for b in state.active]
        keep_set = set(keep)
        edges = [(graph.ids[u], graph.ids[v]) for u, v in graph.edge_indices() if u in keep_set and v in keep_set]
        residual = PartitionedGraph(blocks_left, edges)
        rp = validate(residual)
        a = max(s, min(lll.default_a(s, rp.max_block_avg), rp.thickness))
        its_res, stats = lll.solve(residual, s, lll.LllConfig(a=a, max_resamples=config.lll_max_resamples,
                                                             rng_seed=seed))
        for k, b in enumerate(state.active):
            selection[b] = tuple(graph.index(v) for v in its_res.selection[k])
    its = TransversalBlowup.from_indices(graph, s, selection)
    report = verify_its(graph, its)
    assert report.accepted, report
    return NibbleResult(its=its, log=log, schedule=schedule, lll_stats=stats, local_degree_ok=False)
