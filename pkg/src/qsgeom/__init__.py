"""Numerical geometry of quantum states.

Projective (ray-space) metrics, pointwise configuration-space metrics,
curvature and geodesics on numerically supplied metric fields, Schrödinger
evolution with its dispersion-speed relation, and a catalog of hydrogen-like
worked examples with closed-form coefficient oracles.
"""

from .errors import DomainError, DomainExitError, QsgeomError, StructureError
from .hilbert import (
    GridState,
    StateVector,
    apply_phase,
    inner,
    norm,
    normalize,
    state_from_json,
    state_to_json,
)
from .families import (
    Box,
    Chart,
    FieldFamily,
    ParamPoint,
    RayFamily,
    Stencil,
    covariant_partial_ray,
    gauge_transform,
    partial_field,
    partial_ray,
    reparametrize,
)
from .metrics import (
    ConfigMode,
    MetricMatrix,
    Signature,
    config_metric,
    fs_distance_sq,
    fs_pullback,
    kg_invariant_residual,
    line_element,
    signature,
    transform_metric,
)
from .geometry import (
    ChristoffelAtPoint,
    CurvatureReport,
    GeodesicPath,
    LambdaFit,
    MetricField,
    best_fit_lambda,
    christoffel,
    curvature,
    geodesic_integrate,
    geodesic_residual,
    metric_field_from_ray,
)
from .dynamics import (
    EvolutionTrace,
    Hamiltonian,
    StationaryRay,
    aa_speed_residual,
    energy_dispersion,
    evolve,
    projected_trajectory,
    proper_time,
)
from .catalog import (
    FamilyId,
    GaussianParams,
    HydrogenParams,
    bohr_radius,
    compare,
    gaussian_limit_check,
    make_family,
    oracle_metric,
    standard_grid,
)

__version__ = "0.1.0"
