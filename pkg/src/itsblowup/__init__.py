"""Independent transversal blow-ups: exact search, reductions and randomized solvers.

An ITS of size s in a multipartite graph picks s vertices from every block so
that the union is independent.  The package offers an exhaustive oracle, the
blow-up and quotient reductions to ordinary independent transversals, a
local-lemma solver, a nibble solver, a factor finder and instance generators.
"""
from .errors import *  # noqa: F401,F403
from .graph import (
    DegreeProfile,
    PartitionedGraph,
    TransversalBlowup,
    VerificationReport,
    complement,
    dump_instance,
    has_clique_blowup,
    load_instance,
    validate,
    verify_its,
)
from .oracle import CountReport, count_its, find_factor as find_factor_exhaustive, find_its, find_rooted, iter_its
from .aux import AuxGraph, blowup_aux, observation_bounds, quotient_aux
from .factor import FactorResult, FactorState, augment, find_factor
from .generators import (
    GeneratorSpec,
    add_isolated,
    gen_bounded_degree,
    gen_random,
    gen_szabo_tardos,
    gen_theorem58,
    gen_theorem417,
    gen_theorem418,
)
from . import lll, nibble

__version__ = "0.1.0"
