"""Kinematic diagnostics: drift, stagnation, and particle-path geometry.

Rescaling time as tau = sign(m)*k*(m*t - a) (orientation preserving, with
d tau/dt = k*|m| > 0) turns the path of the particle (a, b) into

    x(tau) = a*c/m + U/(k*|m|) * tau + (e**(k*b)/k) * sin(sign(m)*tau),
    z(tau) = b + (e**(k*b)/k) * cos(tau),

the locus of a point at distance e**(k*b)/k from the center of a circle of
radius |U|/(k*|m|) rolling on a horizontal line.  Comparing the two lengths
classifies the path: curtate (smooth), cuspidal, or prolate (self
intersecting), mirrored when U*sign(m) < 0, a circle when U = 0, and a
horizontal line when m = 0.  The comparison happens at the critical depth
b = ln|U/m| / k, one uniform expression covering both rotation regimes.

`classify_oracle` re-derives the same labels purely from sampled path
geometry (drift, radius spread, monotonicity of x, minimum speed) and is
the independent cross-check for `classify_trajectory`.
"""

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DomainError
from .params import Regime, WaveParameters


class PathKind(Enum):
    CIRCLE = "circle"
    HORIZONTAL_LINE = "horizontal_line"
    TROCHOID = "trochoid"
    REFLECTED_TROCHOID = "reflected_trochoid"


class TrochoidShape(Enum):
    CURTATE = "curtate"
    CUSPIDAL = "cuspidal"
    PROLATE = "prolate"


class Orientation(Enum):
    CLOCKWISE = "clockwise"
    COUNTERCLOCKWISE = "counterclockwise"


class CurrentDirection(Enum):
    FAVORABLE = "favorable"
    ADVERSE = "adverse"
    NO_CURRENT = "no_current"
    NO_WAVE = "no_wave"


@dataclass(frozen=True)
class TrajectoryClass:
    """Geometric label of one particle path."""

    kind: PathKind
    shape: TrochoidShape | None = None       # set iff kind is a trochoid
    orientation: Orientation | None = None   # set iff kind is a circle


@dataclass(frozen=True)
class PathGeometry:
    """Quantities behind the classification."""

    rolling_radius: float        # |U| / (k*|m|)
    point_distance: float        # e**(k*b) / k
    critical_depth: float | None  # ln|U/m| / k when both U and m are nonzero


def drift(params: WaveParameters) -> float:
    """Signed horizontal displacement per orbital period, 2*pi*U/(k*|m|).

    Uniform over the particles: independent of both the label abscissa and
    the depth, and directed with the current.
    """
    if params.m == 0.0:
        raise DomainError("drift is undefined for m = 0: particles never leave a crest line")
    return 2.0 * math.pi * params.U / (params.k * abs(params.m))


def orbit_period(params: WaveParameters) -> float:
    """Time between consecutive crest-line passages, 2*pi/(k*|m|)."""
    if params.m == 0.0:
        raise DomainError("the orbital period is undefined for m = 0")
    return 2.0 * math.pi / (params.k * abs(params.m))


def stagnation_check(params: WaveParameters) -> bool:
    """True iff every particle travels horizontally at exactly the wave speed.

    Happens only at m = 0, where (u, w) = (c, 0) with c = U = g/(2*omega);
    for Earth constants this is a formal limit of the family (c is about
    6.7e4 m/s), not an ocean flow.
    """
    return params.m == 0.0


def current_direction(params: WaveParameters) -> CurrentDirection:
    """Relative orientation of the current and the direction of wave travel."""
    if params.U == 0.0:
        return CurrentDirection.NO_CURRENT
    if params.c == 0.0:
        return CurrentDirection.NO_WAVE
    if params.c * params.U > 0.0:
        return CurrentDirection.FAVORABLE
    return CurrentDirection.ADVERSE


def critical_depth(params: WaveParameters) -> float | None:
    """Depth separating looping from undulating particles, ln|U/m| / k.

    Above it (b > b*) the paths are prolate, below it curtate, exactly at
    it cuspidal.  None when U = 0 or m = 0, where no threshold exists.
    The expression is the uniform form of the per-regime thresholds: with
    U = (g - k*m**2 - 2*omega*m)/(2*omega) it reproduces the geophysical
    ln((g - k*m**2 - 2*omega*m)/(+-2*omega*m))/k pair, and in the classical
    regime it equals ln(k*U**2/g)/(2*k).
    """
    if params.m == 0.0 or params.U == 0.0:
        return None
    return math.log(abs(params.U / params.m)) / params.k


def path_geometry(params: WaveParameters, b: float) -> PathGeometry:
    if np.any(b > params.b0):
        raise DomainError(f"label depth must satisfy b <= b0 = {params.b0}")
    rolling = abs(params.U) / (params.k * abs(params.m)) if params.m != 0.0 else math.inf
    return PathGeometry(
        rolling_radius=rolling,
        point_distance=math.exp(params.k * b) / params.k,
        critical_depth=critical_depth(params),
    )


def classify_trajectory(params: WaveParameters, b: float) -> tuple[TrajectoryClass, PathGeometry]:
    """Label the path of a particle at depth b from the closed-form criteria.

    The cuspidal label requires an exact floating-point tie b == b*; callers
    needing tolerance semantics around the tie should consult
    :func:`classify_oracle`.
    """
    geom = path_geometry(params, b)
    m, U = params.m, params.U
    if m == 0.0:
        return TrajectoryClass(PathKind.HORIZONTAL_LINE), geom
    if U == 0.0:
        orient = Orientation.CLOCKWISE if m > 0.0 else Orientation.COUNTERCLOCKWISE
        return TrajectoryClass(PathKind.CIRCLE, orientation=orient), geom
    kind = PathKind.TROCHOID if U * math.copysign(1.0, m) > 0.0 else PathKind.REFLECTED_TROCHOID
    bstar = geom.critical_depth
    if b == bstar:
        shape = TrochoidShape.CUSPIDAL
    elif b > bstar:
        shape = TrochoidShape.PROLATE
    else:
        shape = TrochoidShape.CURTATE
    return TrajectoryClass(kind, shape=shape), geom


def reparametrize_tau(params: WaveParameters, a: float, b: float, tau):
    """Path point (x, z) at rescaled time tau; broadcasts over tau arrays."""
    if params.m == 0.0:
        raise DomainError("the tau parametrization is undefined for m = 0")
    if np.any(np.asarray(b) > params.b0):
        raise DomainError(f"label depth must satisfy b <= b0 = {params.b0}")
    k, m, U = params.k, params.m, params.U
    s = math.copysign(1.0, m)
    r = math.exp(k * b) / k
    tau = np.asarray(tau)
    x = a * params.c / m + U / (k * abs(m)) * tau + r * np.sin(s * tau)
    z = b + r * np.cos(tau)
    return x, z


def tau_to_time(params: WaveParameters, a: float, tau: float) -> float:
    """Invert tau = sign(m)*k*(m*t - a) for the physical time t."""
    if params.m == 0.0:
        raise DomainError("the tau parametrization is undefined for m = 0")
    s = math.copysign(1.0, params.m)
    return (a + s * tau / params.k) / params.m


def classify_oracle(
    params: WaveParameters,
    b: float,
    n_samples: int = 4096,
) -> TrajectoryClass | None:
    """Classify a path from sampled geometry alone; None when ambiguous.

    Over one tau period the oracle measures the drift x(2*pi) - x(0), the
    spread of distances from the bounding-box center (circle test), the
    minimum of dx/dtau against the drift direction (prolate test: x runs
    backwards somewhere), and the minimum speed (cusp test), refining each
    minimum locally.  Reflection is read off the height of the slowest
    point: a plain trochoid is slowest at the bottom of the loop, a
    reflected one at the top.  Within tolerance of a tie the result is None
    rather than a possibly wrong label.
    """
    if params.m == 0.0:
        raise DomainError("the path oracle requires m != 0")
    geom = path_geometry(params, b)
    scale = max(geom.rolling_radius, geom.point_distance)
    taus = np.linspace(0.0, 2.0 * math.pi, n_samples + 1)
    x, z = reparametrize_tau(params, 0.0, b, taus)

    drift_measured = float(x[-1] - x[0])
    center = (float(x.min() + x.max()) / 2.0, float(z.min() + z.max()) / 2.0)
    radii = np.hypot(x - center[0], z - center[1])
    radius_spread = float(radii.max() - radii.min())

    if abs(drift_measured) <= 1e-9 * scale:
        if radius_spread <= 1e-9 * scale:
            signed_area = 0.5 * float(np.sum(x[:-1] * z[1:] - x[1:] * z[:-1]))
            orient = Orientation.COUNTERCLOCKWISE if signed_area > 0.0 else Orientation.CLOCKWISE
            return TrajectoryClass(PathKind.CIRCLE, orientation=orient)
        return None

    s_drift = math.copysign(1.0, drift_measured)
    delta = 1e-6

    def x_rate(tau):
        xp, _ = reparametrize_tau(params, 0.0, b, tau + delta)
        xm, _ = reparametrize_tau(params, 0.0, b, tau - delta)
        return s_drift * float(xp - xm) / (2.0 * delta)

    def speed(tau):
        xp, zp = reparametrize_tau(params, 0.0, b, tau + delta)
        xm, zm = reparametrize_tau(params, 0.0, b, tau - delta)
        return math.hypot(float(xp - xm), float(zp - zm)) / (2.0 * delta)

    rate_coarse = s_drift * (x[2:] - x[:-2]) / (taus[2] - taus[0])
    i_rate = int(np.argmin(rate_coarse)) + 1
    tau_rate, min_rate = _refine_minimum(x_rate, taus[i_rate], taus[1] - taus[0])

    sp_coarse = np.hypot(x[2:] - x[:-2], z[2:] - z[:-2]) / (taus[2] - taus[0])
    i_sp = int(np.argmin(sp_coarse)) + 1
    tau_sp, min_speed = _refine_minimum(speed, taus[i_sp], taus[1] - taus[0])

    _, z_slowest = reparametrize_tau(params, 0.0, b, tau_sp)
    kind = (
        PathKind.REFLECTED_TROCHOID
        if float(z_slowest) > center[1]
        else PathKind.TROCHOID
    )

    tol = 1e-8 * scale
    if min_rate < -tol:
        return TrajectoryClass(kind, shape=TrochoidShape.PROLATE)
    if min_speed <= tol and min_rate >= -tol:
        return TrajectoryClass(kind, shape=TrochoidShape.CUSPIDAL)
    if min_rate > tol:
        return TrajectoryClass(kind, shape=TrochoidShape.CURTATE)
    return None


def _refine_minimum(fn, tau0, width, iters=80):
    """Golden-section refinement of a sampled local minimum."""
    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
    lo, hi = tau0 - 2.0 * width, tau0 + 2.0 * width
    c = hi - inv_phi * (hi - lo)
    d = lo + inv_phi * (hi - lo)
    fc, fd = fn(c), fn(d)
    for _ in range(iters):
        if fc < fd:
            hi, d, fd = d, c, fc
            c = hi - inv_phi * (hi - lo)
            fc = fn(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + inv_phi * (hi - lo)
            fd = fn(d)
    tau = 0.5 * (lo + hi)
    return tau, fn(tau)


def classification_record(params: WaveParameters, b: float) -> dict:
    """Flat mapping of the classification of one depth, for reports."""
    cls, geom = classify_trajectory(params, b)
    record: dict = {
        "b": b,
        "kind": cls.kind.value,
        "subtype": cls.shape.value if cls.shape is not None else None,
        "orientation": cls.orientation.value if cls.orientation is not None else None,
        "rolling_radius": geom.rolling_radius if math.isfinite(geom.rolling_radius) else None,
        "point_distance": geom.point_distance,
        "critical_depth": geom.critical_depth,
    }
    if params.m != 0.0:
        record["drift"] = drift(params)
        record["period"] = orbit_period(params)
    return record
