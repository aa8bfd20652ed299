"""Exhaustive search: first ITS, enumeration, counting, and instances with none."""
# %%
from itsblowup import PartitionedGraph, add_isolated, count_its, find_its, gen_szabo_tardos, gen_theorem417, iter_its

path = PartitionedGraph([["u1", "u2"], ["w1", "w2"]], [("u1", "w1")])
print(find_its(path, 1).to_json_obj(2))  # colex order, last block most significant
print([t.vertices() for t in iter_its(path, 1)])

# %% exact counts and the counting bound (rational, exact)
edgeless = PartitionedGraph([list("abcd"), list("efgh")])
print(count_its(edgeless, 1, 4).to_json_obj())

# %% label classes: D+1 blocks of sD, no ITS of size s, until one free vertex per block is added
for s, D in [(1, 2), (2, 2), (2, 3)]:
    g = gen_theorem417(s, D)
    padded = add_isolated(g)
    print(s, D, find_its(g, s), find_its(padded, s) is not None)

# %% disjoint K_{D,D} copies with blocks separating the sides: no independent transversal
for delta in (1, 2, 3):
    g = gen_szabo_tardos(delta)
    print(delta, g.block_sizes(), find_its(g, 1))
