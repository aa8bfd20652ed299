"""Partitioning every vertex into disjoint ITSs by augmentation."""
# %%
from itsblowup import PartitionedGraph, find_factor, gen_bounded_degree, validate

g = PartitionedGraph([["u1", "u2"], ["w1", "w2"]], [("u1", "w1")])
res = find_factor(g, 1)
print([its.vertices() for its in res.factor])
for step in res.log:
    print(step)  # inserts, and the swap that moves u1 over

# %% blocks of 3 s^2 Delta with max degree Delta: these always factor
g = gen_bounded_degree(4, 24, 2, 11)
print(validate(g).max_degree, g.block_sizes())
res = find_factor(g, 2)
print(len(res.factor), "ITSs of size 2", res.hypotheses)

# %% a failure comes back with the reason and the hypothesis flags
k22 = PartitionedGraph([["u1", "u2"], ["w1", "w2"]], [(u, w) for u in ("u1", "u2") for w in ("w1", "w2")])
print(find_factor(k22, 1).to_json_obj(2))
