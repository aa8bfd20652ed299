"""Local-lemma solver: prune every block to a, sample s per block, resample violated edges."""
# %%
from fractions import Fraction

from itsblowup import gen_random, validate, verify_its
from itsblowup.lll import LllConfig, default_a, lll_feasible, solve

for s, D in [(1, 1), (2, 1), (1, 3)]:
    print(s, D, default_a(s, D))  # ceil(2 e s^2 D), computed exactly

# %% the feasibility test is exact around the threshold
print(lll_feasible(Fraction(1), 1, 5).feasible, lll_feasible(Fraction(1), 1, 6).feasible)

# %% a run on a random instance
g = gen_random(6, default_a(2, 2), 2, None, 7)
print(validate(g))
its, stats = solve(g, 2, LllConfig(rng_seed=1))
print(verify_its(g, its).accepted, stats.resamples, stats.violated_edge_histogram)

# %% below the threshold it may still work, but nothing is promised
its, stats = solve(g, 2, LllConfig(a=8, rng_seed=1))
print(stats.feasible, stats.resamples, verify_its(g, its).accepted)
