"""Exact desk-scale simulation of a graph-isomorphism observable on C[(S_n wr S_2)^m].

For graphs G1, G2 on n vertices the hidden subgroup H = Aut(G1 + G2) lies in
S_n wr S_2.  Tensor products of m coset states of H are measured against the
projector onto the span of all k-vectors, k ranging over the involutive
swaps (g, g^-1, 1); isomorphic inputs give outcome 1 with certainty and
nonisomorphic ones with probability at most n!/2^m.
"""
from .errors import (GraphFormatError, InvalidArgumentError, ResourceLimitError,
                     TheoremViolationError)
from .gprime import generate_closure, gprime_predicate, verify_characterization
from .graphs import (Connectivity, Graph, GraphPair, HiddenSubgroup, automorphisms,
                     build_hidden_subgroup, contains_involutive_swap, isomorphisms, normalize_pair,
                     parse_graph, read_graph)
from .group import (GroupIndexer, WreathElement, compose, embed_s2n, indexer, inverse,
                    involutive_swaps)
from .kernels import BACKEND as KERNEL_BACKEND
from .observable import (Decision, DecisionReport, ObservableSpec, decide, outcome_distribution,
                         prepare_psi, sample_coset_reps)
from .projector import (ProjectionMethod, ProjectionReport, compute_p1, p1_dense,
                        p1_exact_rational, p1_least_squares, union_bound_check)
from .states import (KVectorId, SpaceConfig, SparseState, apply_right_mult, coset_state,
                     enumerate_k_vectors, k_vector, swap_expectation, swap_projector_apply,
                     tensor_product, uniform_superposition)

__version__ = "0.1.0"
