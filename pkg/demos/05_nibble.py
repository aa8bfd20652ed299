"""Nibble solver: shrink thickness and degree on a schedule, then finish with the local lemma."""
# %%
import random

from itsblowup import gen_random, verify_its
from itsblowup.nibble import NibbleConfig, build_schedule, initial_state, run_round, solve

sch = build_schedule(2, 1, 4)  # s, eps, D; p defaults to 3/20
print(sch.t_star, float(sch.m_S), float(sch.m_D))
for t in (1, 2, sch.t_star + 1):
    print(t, float(sch.S_at(t)), float(sch.D_at(t)))
print(sch.handoff_ok(sch.t_star), sch.handoff_ok(sch.t_star - 1))

# %% one round by hand
g = gen_random(8, 12, 4, 1, 3)
state = run_round(initial_state(g), g, sch, random.Random(0))
print("activated", state.activated, "accepted", state.accepted)
print("deleted", [g.ids[v] for v in state.deleted])

# %% the whole procedure, with its round log
res = solve(g, 2, 1, NibbleConfig(seed=5))
print(verify_its(g, res.its).accepted, res.rounds, "rounds", res.restarts, "restarts")
print(res.log_jsonl().splitlines()[0])
