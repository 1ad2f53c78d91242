"""Fusion systems, Burnside modules and stable classification of p-completed
classifying spaces of finite groups, computed by exhaustive enumeration."""

__version__ = "0.1.0"

from .groups import (
    FiniteGroup,
    Homomorphism,
    Permutation,
    Subgroup,
    all_subgroups,
    automorphism_classes,
    closure,
    conjugate_subgroup,
    homomorphisms,
    isomorphisms_between,
    subgroup_conjugacy_classes,
    sylow_subgroup,
)
from .catalog import builtin_catalog, load_catalog, lookup
from .fusion import (
    FusionSystem,
    build_fusion_system,
    find_fusion_isomorphism,
    fusion_hom_set,
    is_fusion_isomorphism,
)
from .burnside import (
    burnside_basis,
    canonical_class,
    pairs_conjugate,
    realize_biset,
    stable_inclusion_equal,
)
from .repmod import linearize, modules_isomorphic, out_sets_isomorphic, rep_set
from .classify import (
    Verdict,
    alternative_classification,
    condition2_bounded,
    distinguishing_search,
    stable_equivalent_mp,
)
from .settings import Settings, use_settings

__all__ = [
    "FiniteGroup",
    "FusionSystem",
    "Homomorphism",
    "Permutation",
    "Settings",
    "Subgroup",
    "Verdict",
    "all_subgroups",
    "alternative_classification",
    "automorphism_classes",
    "build_fusion_system",
    "builtin_catalog",
    "burnside_basis",
    "canonical_class",
    "closure",
    "condition2_bounded",
    "conjugate_subgroup",
    "distinguishing_search",
    "find_fusion_isomorphism",
    "fusion_hom_set",
    "homomorphisms",
    "is_fusion_isomorphism",
    "isomorphisms_between",
    "load_catalog",
    "linearize",
    "lookup",
    "modules_isomorphic",
    "out_sets_isomorphic",
    "pairs_conjugate",
    "realize_biset",
    "rep_set",
    "stable_equivalent_mp",
    "stable_inclusion_equal",
    "subgroup_conjugacy_classes",
    "sylow_subgroup",
    "use_settings",
]
