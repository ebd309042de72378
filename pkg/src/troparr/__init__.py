"""troparr: exact combinatorics of max-plus hyperplane arrangements.

Computes point types, genericity, the type-collection axioms, dual
subdivisions of products of simplices, normalized volumes, refining
triangulations, flips and GKZ vectors, all in exact rational arithmetic.
"""

from .core import (
    DEFAULT_BUDGET,
    Arrangement,
    CellGraph,
    OrderedPartition,
    ProjectivePoint,
    Rational,
    ResourceLimitError,
    TypeVector,
    enumerate_ordered_partitions,
    format_rational,
    normalize,
    parse_rational,
    type_total_size,
)
from .geometry import (
    ApexStatus,
    GenericityReport,
    RealizationResult,
    apex_type,
    enumerate_realizations,
    enumerate_types,
    is_generic,
    perturb,
    realizable,
    refine,
    safe_radius,
    type_of_point,
)
from .axioms import (
    AxiomReport,
    CheckResult,
    ComparabilityGraph,
    check_boundary,
    check_comparability,
    check_elimination,
    check_local_refinement,
    check_surrounding,
    comparability_graph,
    is_acyclic,
    is_tropical_oriented_matroid,
)
from .duality import (
    CorrespondenceVerdict,
    Subdivision,
    arrangement_cell_dim,
    arrangement_heights,
    cell_dim,
    check_correspondence,
    dual_subdivision,
    is_spanning_tree,
    is_triangulation,
    normalized_volume,
    regular_subdivision,
    type_to_graph,
)
from .secondary import (
    GKZVector,
    SecondaryFaceVerdict,
    all_triangulations_regular,
    flip_related,
    gkz_vector,
    refines,
    refining_triangulations,
    secondary_face_check,
)

__all__ = [
    "DEFAULT_BUDGET",
    "Arrangement",
    "ApexStatus",
    "AxiomReport",
    "CellGraph",
    "CheckResult",
    "ComparabilityGraph",
    "CorrespondenceVerdict",
    "GKZVector",
    "GenericityReport",
    "OrderedPartition",
    "ProjectivePoint",
    "Rational",
    "RealizationResult",
    "ResourceLimitError",
    "Subdivision",
    "SecondaryFaceVerdict",
    "TypeVector",
    "all_triangulations_regular",
    "apex_type",
    "arrangement_cell_dim",
    "arrangement_heights",
    "cell_dim",
    "check_boundary",
    "check_comparability",
    "check_correspondence",
    "check_elimination",
    "check_local_refinement",
    "check_surrounding",
    "comparability_graph",
    "dual_subdivision",
    "enumerate_ordered_partitions",
    "enumerate_realizations",
    "enumerate_types",
    "flip_related",
    "format_rational",
    "gkz_vector",
    "is_acyclic",
    "is_generic",
    "is_spanning_tree",
    "is_triangulation",
    "is_tropical_oriented_matroid",
    "normalize",
    "normalized_volume",
    "parse_rational",
    "perturb",
    "realizable",
    "refine",
    "refines",
    "refining_triangulations",
    "regular_subdivision",
    "safe_radius",
    "secondary_face_check",
    "type_of_point",
    "type_to_graph",
    "type_total_size",
]
