"""Exact synthetic-geometry kernel and verification harness – core package.

Re-exports all public symbols so consumers can do:
    from sdgkernel import Point, Sphere, extrapolate, run_suite
or use the top-level module:
    from sdgverify import run_suite, Scenario
"""

# Errors
from .errors import (  # noqa: F401
    SDGError,
    DomainError,
    NotInvertibleError,
    UsageError,
    NotTouchingError,
    DegenerateConfigurationError,
    ResourceLimitError,
    AssumptionViolationError,
    PostconditionError,
    SceneParseError,
    UnsupportedDimensionError,
)

# Configuration
from .config import Settings, settings  # noqa: F401

# Scalars
from .scalars import (  # noqa: F401
    Scalar,
    ZERO,
    ONE,
    sqrt_depth,
    scalar_add,
    scalar_sub,
    scalar_mul,
    scalar_div,
    scalar_sqrt,
    scalar_sign,
)

# Nilpotent algebra
from .nilalg import (  # noqa: F401
    Batch,
    BatchTable,
    NilElement,
    KLDecomposition,
    fresh_batch,
    nil,
    nil_add,
    nil_sub,
    nil_mul,
    nil_inverse,
    nil_sqrt,
    nil_less,
    nil_abs,
    kl_cancel,
    kl_forces_zero,
)

# Metric geometry
from .geomcore import (  # noqa: F401
    Point,
    Sphere,
    Hyperplane,
    MonadSlice,
    FocusResult,
    zero_vector,
    apart,
    neighbour,
    dist_sq,
    dist,
    membership,
    on_sphere,
    on_hyperplane,
    on_figure,
    generic_vector,
    monad_condition,
    proportional,
    touches,
    generic_slice,
    monad_contained,
    is_focused,
    equidistant_over_slice,
    touching_point_external,
    touching_point_internal,
    foot,
    sphere_hyperplane_at,
    chord_orthogonal,
    sphere_touches_hyperplane_at_foot,
)

# Synthetic operations
from .synthops import (  # noqa: F401
    CONDITIONS,
    POSITIONS,
    ORDER_FIXING_PAIRS,
    Triple,
    Ray,
    CollinearityClosure,
    NonRayWitness,
    triangle_equality,
    collinear_condition,
    collinear,
    collinear_by_touching,
    aligned,
    interpolate,
    extrapolate,
    extrapolation_is_unique,
    interpolation_is_unique,
    extrapolate_source_invariance,
    collinearity_associativity,
    ray_eval,
    ray_compose,
    ray_isometry,
    ray_points_aligned,
    parabola_point,
    non_ray_isometry,
    touching_point,
    touching_centers_aligned,
)

# Contact elements and wavefronts
from .contactwave import (  # noqa: F401
    INSIDE,
    OUTSIDE,
    ContactElement,
    OrientedHypersurface,
    InflationRecord,
    SampleOutcome,
    HuygensRecord,
    contact_from_sphere,
    inside_sphere,
    contact_focused,
    united_position,
    orthogonal,
    orthogonal_iff_contained,
    positive_side,
    same_orientation_class,
    front_step,
    front_step_via_sphere,
    flow_step,
    flow_step_via_sphere,
    contact_ray,
    inflate,
    inflate_preserves_touching,
    external_inflation_touches,
    stereographic_unit_vector,
    sample_sphere,
    sample_hyperplane,
    feet_on_surface,
    fronts_at,
    parallel_surface,
    envelope_outcomes,
    huygens_sphere_envelope,
    orthogonality_transfers,
)

# Harness models
from .models import (  # noqa: F401
    STATUS_PASS,
    STATUS_FAIL,
    STATUS_SKIPPED,
    Scenario,
    VerificationRecord,
    SuiteResult,
)

# Random configurations
from .generators import (  # noqa: F401
    KINDS,
    random_rational,
    random_positive,
    random_point,
    random_unit_vector,
    apart_point,
    orthogonal_offset,
    random_orthogonal,
    touching_spheres,
    collinear_triple,
    random_configuration,
)

# Check registry
from .suites import (  # noqa: F401
    CHECKS,
    Check,
    CheckFailure,
    Trial,
    list_checks,
    resolve_checks,
)

# Scenes
from .schemas import SceneModel, validate_scene  # noqa: F401
from .scene import Scene, build_scene, parse_scene, load_scene  # noqa: F401

# Runner
from .runner import (  # noqa: F401
    SCENE_CHECKS,
    run_trial,
    run_suite,
    run_scene,
)

# Reporting
from .reporting import (  # noqa: F401
    report_lines,
    generate_json_report,
    generate_report,
    write_jsonl,
    read_jsonl,
    write_envelope_csv,
)

# Plotting
from .plotting import OVERLAYS, render_svg, write_svg  # noqa: F401
