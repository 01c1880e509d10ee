"""conekit: finite-dimensional convex cone calculus, support certification,
and convex hypersurface tools."""

from .tolerances import DEFAULT_TOL, ToleranceProfile
from .errors import (
    ConekitError,
    DimensionMismatchError,
    IndeterminateResultError,
    InvariantViolationError,
    ParseError,
    PreconditionError,
)
from .linalg import (
    Subspace,
    affine_hull_dim,
    as_matrix,
    as_vector,
    orthogonal_complement,
    orthonormalize,
    project,
    subspaces_equal,
)
from .cone import (
    HalfspaceCone,
    PolyhedralCone,
    StructuredCone,
    cone_member,
    cone_member_batch,
    decompose,
    default_probes,
    delta_construction,
    double_polar_closure_check,
    flatten_structured,
    halfspace_member,
    halfspace_member_batch,
    is_pointed,
    is_proper,
    lineality_space,
    polar,
    polar_generators,
    reconstruct_lineality_check,
    sample_polar_directions,
    structured_member,
    structured_member_batch,
    structured_polar_member,
)
from .support import (
    AnfCoverageReport,
    BodyConvexityReport,
    ConvexBody,
    ProjectionResult,
    SampledSet,
    SupportCertificate,
    anf_membership,
    boundary_indices,
    convexity_check_anf,
    convexity_check_body,
    hull_member,
    hull_member_batch,
    is_anf_witness,
    is_extreme_point,
    normal_cone,
    project_onto_hull,
    sampling_resolution,
    strictly_interior,
    support_certificate,
    tangent_cone,
    translated_normal_cones_disjoint,
)
from .hypersurface import (
    ConvexifyResult,
    RadialMapTable,
    SampledHypersurface,
    SphereSampling,
    affine_extension_check,
    circle_directions,
    convexify,
    direction_of,
    fibonacci_sphere_directions,
    is_convex_hypersurface,
    psi_extend,
    psi_inverse,
    radial_homeo,
    ray_boundary_intersection,
    ray_boundary_intersections,
    sampling_for_dim,
)
from .randgen import GENERATOR_NAME, make_rng, unit_vectors

__version__ = "0.1.0"
