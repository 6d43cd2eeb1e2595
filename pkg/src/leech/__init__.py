"""Leech's squarefree sequence: substitution, block matrices, rigidity and
pattern-instance search, with scripted verification reports."""

from .blocks import (
    Flush,
    MatrixDecomposition,
    RigidityReport,
    ShiftPlan,
    block_of,
    desubstitute,
    flush_status,
    is_locally_rigid,
    is_rigid,
    matrices,
    matrix_of_occurrence,
    reduce_fully,
    reduce_instance,
    shift_to_flush,
)
from .pattern import KAPPA1, KAPPA2, KAPPA3, KAPPA4, Assignment, LocalInstance, Pattern, instantiate
from .search import SearchBounds, longest_prefix_factor, rigidity_census, search_instances
from .verify import REPORT_IDS, TheoremReport, verify, verify_all
from .words import (
    IDENTITY,
    LEECH,
    REF,
    ROT,
    FactorSet,
    Morphism,
    apply_morphism,
    certify_squarefree_morphism,
    factor_set,
    find_square,
    is_factor,
    leech_prefix,
    occurrences,
    reflect,
    rotate,
)

__version__ = "0.1.0"
