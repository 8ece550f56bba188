"""Scalability analysis for unit-norm frames.

Decide whether a frame admits a scaling that makes it Parseval, enumerate
the minimal scalings (vertices of the scaling polytope), and analyze the
structure of scaled frames: factor posets, empty covers, orthogonal
decompositions, and affine-dependence diagnostics.  Exact rational and
float arithmetic lanes share one API.
"""

from .errors import (
    BadDiagonal,
    CapExceeded,
    CoverNotFound,
    DimensionTooSmall,
    EmptySubset,
    FramescaleError,
    NotAScaling,
    NotDisjoint,
    NotPSD,
    NotSpanning,
    NotUnitNorm,
    TooFewVectors,
    TooLarge,
    ValidationError,
    WitnessSearchTooLarge,
)
from .frames import (
    DiagramGramian,
    Frame,
    FrameBounds,
    TightnessResult,
    diagram_gramian,
    diagram_vector,
    frame_bounds,
    frame_from_gram,
    frame_from_vectors,
    is_parseval,
    is_tight,
    load_frame,
    promote_to_rational,
    realize_vectors,
    subframe,
    weighted_operator_deviation,
    with_duplicated_vector,
)
from .numerics import (
    DenseMatrix,
    LinearProgram,
    LPResult,
    ScalarMode,
    SolveResult,
    float_mode,
    linear_solve,
    lp_solve,
    nullspace_basis,
    rank,
    rational_mode,
)
from .scaling import (
    MboundReport,
    MinimalScalingSet,
    ScalingVector,
    brute_force_minimal_scalings,
    build_scalability_system,
    check_mbound,
    convex_decompose,
    enumerate_minimal_scalings,
    is_minimal_scaling,
    is_scalable,
    parse_weights,
    scaling_payload,
    scaling_vector,
    verify_john_decomposition,
    weights_payload,
)
from .structure import (
    AffineDependenceReport,
    EmptyCover,
    FactorPoset,
    OrthogonalPartition,
    ScalingBlock,
    StrictScalingReport,
    affine_dependence_report,
    affine_hull_member,
    ec_pairwise_disjoint,
    empty_cover,
    enumerate_orthogonal_decompositions,
    factor_poset,
    has_orthogonal_split_decomposition,
    is_face_subset,
    is_prime_scaling,
    orthogonal_decompose_scaling,
    poset_to_dot,
    reconstruct_poset,
    relative_interiors_intersect,
    smallest_orthogonal_partition,
    strict_scaling_report,
    witness_guard,
)

__version__ = "0.1.0"
