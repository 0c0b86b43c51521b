"""Exact trochoidal deep-water wave flows over a uniform current.

A family of explicit solutions of the free-surface Euler equations on the
equatorial f-plane, given in Lagrangian form: every particle rides a
trochoid-type path while the wave profile travels rigidly over a uniform
background current.  The package resolves consistent parameter sets,
evaluates the flow map and the derived pressure and vorticity fields,
verifies the governing equations by independent finite differencing, and
classifies the particle paths.
"""

from .analysis import (
    CurrentDirection,
    Orientation,
    PathGeometry,
    PathKind,
    TrajectoryClass,
    TrochoidShape,
    classify_oracle,
    classify_trajectory,
    critical_depth,
    current_direction,
    drift,
    orbit_period,
    reparametrize_tau,
    stagnation_check,
    tau_to_time,
)
from .errors import (
    ConvergenceError,
    DomainError,
    NoSolutionError,
    OutOfDomainError,
    RegimeMismatchError,
    SingularityError,
    WaveError,
)
from .fields import (
    BoundaryResiduals,
    EulerianSample,
    ResidualReport,
    boundary_residuals,
    euler_residual,
    eulerian_state,
    farfield_residual,
    lagrangian_pressure_check,
    pressure,
    pressure_depth_gradient,
    pressure_excess,
    residual_report,
    richardson_orders,
    vorticity,
)
from .kinematics import (
    JacobianSample,
    KinematicState,
    ParticleLabel,
    acceleration,
    invert_map,
    invert_x,
    jacobian,
    orbital_velocity,
    position,
    sample_trajectory,
    state,
    surface_from_labels,
    surface_profile,
    velocity,
)
from .params import (
    ATMOSPHERIC_PRESSURE,
    EARTH_ROTATION_RATE,
    STANDARD_GRAVITY,
    WATER_DENSITY,
    PhysicalConstants,
    Regime,
    RegimeConstants,
    WaveParameters,
    max_geophysical_current,
    regime_constants,
    resolve_classical,
    resolve_geophysical_from_current,
    resolve_geophysical_from_m,
    validate,
)

__version__ = "0.1.0"
