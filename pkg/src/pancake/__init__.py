"""Pancake-graph distances, diameters, and spanning-tree diameter bounds."""

from .bound import (
    AgreementReport,
    BoundReport,
    MSet,
    analyze_components,
    build_mset_chunked,
    build_mset_exact,
    certify_bound,
    compare_mset_methods,
    compute_dn,
)
from .graph import (
    DistanceField,
    LayerProfile,
    MemoryBudgetError,
    bfs,
    check_classical_bounds,
    eccentricity_of_identity,
    identity_field,
    neighbors,
    verify_hierarchy,
    verify_prop3,
)
from .ham import (
    HamOrder,
    build_ham,
    translate_position_index,
    validate_ham,
    verify_prop2,
)
from .perm import (
    GpStats,
    Perm,
    apply_reversal,
    compose,
    gp_stats,
    identity,
    inverse,
    parse_perm,
    rank,
    unrank,
)
from .sorter import FlipSequence, greedy_sort, verify_flip_sequence
from .table import DIAMETERS

__version__ = "0.1.0"
