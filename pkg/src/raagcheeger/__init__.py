"""Exact Cheeger constants for finite simplicial graphs and for the
cup-product pairing triples of their right-angled Artin groups, with
exhaustive oracles that machine-verify the dictionary between the two."""

from .budgets import DEFAULT_BUDGETS, BudgetError, Budgets
from .fields import GF2, GF3, GF5, QQ, Field, FieldError
from .graphs import (
    CheegerUndefinedError,
    GraphCheegerResult,
    GraphError,
    SimplicialGraph,
    boundary,
    cheeger_graph_exact,
    cheeger_of_subset,
    complete,
    cycle,
    edgeless,
    is_connected,
    labeled_graphs,
    margulis_like,
    max_valence,
    path,
    random_regular,
    sample_labeled_graphs,
    spectral_cheeger_bounds,
    star,
)
from .linalg import (
    LinalgError,
    Matrix,
    Subspace,
    enumerate_subspaces,
    enumerate_unordered_bases,
    gaussian_binomial,
    gl_order,
    kernel,
    rref,
    subspace_intersection,
    subspace_sum,
)
from .pairing import (
    CheegerReport,
    PairingError,
    PairingTriple,
    apply_pairing,
    augment_triple,
    cheeger_constant_coordinate,
    cheeger_constant_exhaustive,
    cheeger_of_subspace,
    is_alternating,
    is_pairing_connected_exhaustive,
    orthogonal_complement,
    q_valence_coordinate,
    q_valence_exhaustive,
    random_triple,
    zero_triple,
)
from .raag import RaagTriple, build_triple, max_centralizer_rank, vertex_centralizer_rank
from .family import (
    FamilyEntry,
    FamilyReport,
    VerificationRecord,
    field_invariance_check,
    graph_family_report,
    triple_family_report,
    verify_augmentation,
    verify_main_theorem,
)

__version__ = "0.1.0"
