"""From size-s blow-ups to ordinary transversals: the subset and grouping reductions."""
# %%
from itsblowup import PartitionedGraph, blowup_aux, count_its, find_its, iter_its, observation_bounds, quotient_aux

g = PartitionedGraph([list("abcd"), list("efgh")], [("a", "e"), ("b", "f"), ("c", "e")])

# %% every s-subset of a block becomes one vertex
aux = blowup_aux(g, 2)
print(aux.graph.block_sizes(), aux.graph.n_edges)
print(aux.graph.blocks[0])  # ids join the members with "+"

# ITs of the reduction are exactly the ITSs of g
print(count_its(aux.graph, 1, 1).exact_count, count_its(g, 2, 1).exact_count)
first = next(iter_its(aux.graph, 1))
print(first.vertices(), "->", aux.lift(first).to_json_obj(2))

# %% size and degree bounds relating the reduction to its base
for name, (got, bound) in observation_bounds(aux).items():
    print(f"{name:15s} {got} vs {bound}")

# %% grouping consecutive s-chunks instead: smaller, but only sufficient
q = quotient_aux(g, 2)
print(q.graph.blocks, q.graph.edges())
it = find_its(q.graph, 1)
print(q.lift(it).to_json_obj(2) if it else "no IT of the grouping")
