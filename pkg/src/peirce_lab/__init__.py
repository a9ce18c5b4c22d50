"""peirce_lab: a computational laboratory for small finite rings.

Represents rings by structure constants, finds idempotents and Peirce
decompositions, classifies not-necessarily-additive self-maps (derivations,
reverse derivations, centralizers), checks annihilation hypothesis sets with
explicit witnesses, and exhaustively enumerates reverse derivable maps.
"""

from .conditions import (
    CONDITION_SETS,
    ConditionItem,
    ConditionReport,
    check_conditions,
    witness_revalidate,
)
from .dsl import DslError, MapExpr, eval_coords, map_expr_to_text, parse_map_expr
from .maps import (
    MAP_CATALOG,
    LawCheck,
    MapClassification,
    MapTable,
    StructureReport,
    additivity_defect,
    build_map,
    catalog_map_expr_text,
    check_additive,
    check_defect_identities,
    check_reverse_law,
    classify_map,
    eval_map_expr,
    is_generalized_derivation,
    is_n_multiplicative,
    load_map,
    verify_reverse_map_structure,
)
from .peirce import (
    PeirceDecomposition,
    find_idempotents,
    is_nontrivial_idempotent,
    peirce_decompose,
    verify_component_products,
)
from .rings import (
    DEFAULT_MAX_RING_SIZE,
    GUARD_ENV_VAR,
    RING_CATALOG,
    AxiomReport,
    Element,
    GuardError,
    Ring,
    SpecError,
    build_ring,
    center,
    construct_catalog_ring,
    load_ring,
    parse_coords,
    scan_guard,
    verify_ring_axioms,
)
from .search import (
    SearchConfig,
    SearchResult,
    SearchStats,
    empirical_theorem_report,
    enumerate_reverse_derivable_maps,
    find_nonadditive_reverse_derivable,
)

__version__ = "0.1.0"
