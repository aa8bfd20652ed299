"""Instances, degree profiles, verification and the complement duality."""
# %%
from itsblowup import (PartitionedGraph, TransversalBlowup, complement, dump_instance, has_clique_blowup,
                       load_instance, validate, verify_its)

g = PartitionedGraph(
    [["u1", "u2", "u3"], ["w1", "w2", "w3"], ["x1", "x2", "x3"]],
    [("u1", "w1"), ("u1", "x1"), ("w2", "x2"), ("u3", "w3")],
)
print(validate(g))  # max degree, block averages, local degree, thickness

# %% candidate ITSs of size 2 and what the verifier says about them
cand = TransversalBlowup(2, {0: ("u1", "u2"), 1: ("w2", "w3"), 2: ("x1", "x3")})
print(verify_its(g, cand).to_json_obj())  # u1 ~ x1

cand = TransversalBlowup(2, {0: ("u2", "u3"), 1: ("w2", "w3"), 2: ("x2", "x3")})
print(verify_its(g, cand).to_json_obj())  # u3 ~ w3 and w2 ~ x2

cand = TransversalBlowup(2, {0: ("u2", "u3"), 1: ("w1", "w2"), 2: ("x1", "x3")})
print(verify_its(g, cand).accepted)

# %% ITS in G  <=>  K_r(s) in the r-partite complement
h = complement(g)
print(h.n_edges, "cross edges in the complement")
print(has_clique_blowup(h, 2))

# %% one JSON format for every tool
text = dump_instance(g, s=2)
back, s = load_instance(text)
print(back == g, s)
