"""Finite P-graphs, their two path-space presentations and semidirect product groupoids."""

from .degree import (
    INF,
    Degree,
    DegreeClass,
    DegreeError,
    FreeMonoid,
    GridMonoid,
    GridSubmonoid,
    GroupElement,
    IncreasingSequence,
    UnsupportedMonoidError,
    below,
    compose,
    degree_class,
    grid_class,
    grid_class_to_sequence,
    group_compose,
    group_invert,
    leq,
    lub,
    minimal_upper_bounds,
    quotient,
    seq_equivalent,
    seq_precedes,
    sequence_to_grid_class,
)
from .filters import FilterSpace
from .groupoid import (
    Groupoid,
    GroupoidElement,
    check_isomorphism,
    enumerate_groupoid,
    groupoid_axiom_check,
    psi_h,
    tau_equality_check,
)
from .morphisms import MorphismSpace, PathMorphism, check_conjugacy
from .pgraph import (
    Morphism,
    PGraph,
    SkeletonError,
    SkeletonPresentation,
    build_omega,
    build_omega_limit,
    from_skeleton,
    is_finitely_aligned,
    mce,
    validate_category,
    validate_ufp,
)
from .report import Report
from .spaces import CylinderSet, action_axioms_check

__version__ = "0.1.0"
