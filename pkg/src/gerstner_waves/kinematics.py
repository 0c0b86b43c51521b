"""The Lagrangian flow map, its derivatives, its inverse, and the free surface.

Each fluid particle is labeled by a pair (a, b) with b <= b0, and its
position at time t is

    X(t, a, b) = a + U*t - (e**(k*b)/k) * sin(k*(a - m*t)),
    Z(t, a, b) = b + (e**(k*b)/k) * cos(k*(a - m*t)),

with U = c - m.  The label-to-position map is a diffeomorphism onto the
region below the free surface, with Jacobian determinant 1 - e**(2*k*b)
independent of t and a.  Everything here is a pure function of immutable
parameters; array arguments broadcast in the numpy sense.
"""

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import ConvergenceError, DomainError, OutOfDomainError
from .params import WaveParameters


class ParticleLabel(NamedTuple):
    """Lagrangian coordinates of one particle."""

    a: float  # label abscissa, m
    b: float  # label depth, m (b <= b0)


@dataclass(frozen=True)
class KinematicState:
    """Position, velocity and acceleration of a labeled particle at one time."""

    x: float
    z: float
    u: float
    w: float
    ax: float
    az: float


@dataclass(frozen=True)
class JacobianSample:
    """Partial derivatives of the flow map with respect to the labels."""

    xa: float
    xb: float
    za: float
    zb: float
    det: float  # xa*zb - xb*za; equals 1 - e**(2*k*b) identically


def _check_depth(params: WaveParameters, b) -> None:
    if np.any(np.asarray(b) > params.b0):
        raise DomainError(f"label depth must satisfy b <= b0 = {params.b0}")


def position(params: WaveParameters, t, a, b):
    """Particle position (X, Z) at time t; accepts scalars or arrays."""
    _check_depth(params, b)
    k = params.k
    th = k * (np.asarray(a) - params.m * np.asarray(t))
    r = np.exp(k * np.asarray(b)) / k
    x = a + params.U * t - r * np.sin(th)
    z = b + r * np.cos(th)
    return x, z


def velocity(params: WaveParameters, t, a, b):
    """Particle velocity (u, w): the exact time derivative of the position."""
    pu, pw = orbital_velocity(params, t, a, b)
    return params.U + pu, pw


def orbital_velocity(params: WaveParameters, t, a, b):
    """Velocity relative to the background current, (u - U, w).

    The orbital part m*e**(k*b)*(cos, sin)(k*(a - m*t)) is the quantity that
    decays with depth; returning it directly keeps finite differencing of
    the fields free of large-constant roundoff when |U| is large.
    """
    _check_depth(params, b)
    k, m = params.k, params.m
    th = k * (np.asarray(a) - m * np.asarray(t))
    e = np.exp(k * np.asarray(b))
    return m * e * np.cos(th), m * e * np.sin(th)


def acceleration(params: WaveParameters, t, a, b):
    """Particle acceleration (ax, az): the exact second time derivative."""
    _check_depth(params, b)
    k, m = params.k, params.m
    th = k * (np.asarray(a) - m * np.asarray(t))
    e = np.exp(k * np.asarray(b))
    km2 = k * m * m
    return km2 * e * np.sin(th), -km2 * e * np.cos(th)


def state(params: WaveParameters, t: float, a: float, b: float) -> KinematicState:
    """Full kinematic state of one particle at one time."""
    x, z = position(params, t, a, b)
    u, w = velocity(params, t, a, b)
    ax, az = acceleration(params, t, a, b)
    return KinematicState(float(x), float(z), float(u), float(w), float(ax), float(az))


def jacobian(params: WaveParameters, t, a, b) -> JacobianSample:
    """Label-space partials of the flow map and their determinant."""
    _check_depth(params, b)
    k = params.k
    th = k * (np.asarray(a) - params.m * np.asarray(t))
    e = np.exp(k * np.asarray(b))
    ec, es = e * np.cos(th), e * np.sin(th)
    xa = 1.0 - ec
    xb = -es
    za = -es
    zb = 1.0 + ec
    return JacobianSample(xa, xb, za, zb, xa * zb - xb * za)


def invert_x(
    params: WaveParameters,
    t: float,
    x: float,
    b: float,
    tol: float = 1e-13,
    max_iter: int = 100,
) -> float:
    """Solve X(t, a, b) = x for the label abscissa a.

    The map a -> X is strictly increasing (dX/da >= 1 - e**(k*b)), so the
    root is unique.  Newton iteration starts from the far-field guess
    a = x - U*t and is safeguarded by a bisection bracket of half-width
    pi/k around that guess, which always contains the root.  For b = 0 the
    derivative vanishes at isolated crest abscissas and the bracket carries
    the iteration through.
    """
    _check_depth(params, b)
    k, m, U = params.k, params.m, params.U
    ekb = math.exp(k * b)
    rk = ekb / k

    def residual(a):
        th = k * (a - m * t)
        return a + U * t - rk * math.sin(th) - x, 1.0 - ekb * math.cos(th)

    a = x - U * t
    lo = a - math.pi / k
    hi = a + math.pi / k
    # the achievable residual floor scales with every term in the equation,
    # and |U*t| can dwarf |x| for fast geophysical waves
    eps = tol * max(1.0, abs(x), abs(U * t))
    f, df = residual(a)
    for _ in range(max_iter):
        if abs(f) <= eps:
            break
        if f > 0.0:
            hi = a
        else:
            lo = a
        if df > 1e-12:
            cand = a - f / df
        else:
            cand = math.inf  # force bisection at a flat spot
        if not lo < cand < hi:
            cand = 0.5 * (lo + hi)
        a = cand
        f, df = residual(a)
    else:
        raise ConvergenceError(
            f"horizontal inversion did not converge at x = {x}, b = {b}", best=a
        )
    if df > 1e-6:
        a -= f / df  # one polishing step drives the residual to roundoff
    return a


def invert_map(
    params: WaveParameters,
    t: float,
    x: float,
    z: float,
    tol: float = 1e-13,
    max_iter: int = 50,
) -> ParticleLabel:
    """Recover the particle label (a, b) of an interior Eulerian point.

    Newton iteration on both coordinates with the analytic Jacobian; when it
    stalls (the determinant 1 - e**(2*k*b) degenerates towards the surface
    when b0 = 0) the solver falls back to bisection in b, which is
    guaranteed by the strict depth monotonicity of the inverse map.  Points
    on or above the free surface raise :class:`OutOfDomainError`.
    """
    k, m, U, b0 = params.k, params.m, params.U, params.b0
    epsx = tol * max(1.0, abs(x), abs(U * t))
    epsz = tol * max(1.0, abs(z))
    a = x - U * t
    b = min(z, b0)
    for _ in range(max_iter):
        th = k * (a - m * t)
        e = math.exp(k * b)
        sn, cs = math.sin(th), math.cos(th)
        fx = a + U * t - (e / k) * sn - x
        fz = b + (e / k) * cs - z
        xa = 1.0 - e * cs
        xb = -e * sn
        za = xb
        zb = 1.0 + e * cs
        det = xa * zb - xb * za
        if not det > 1e-10:
            break
        da = -(zb * fx - xb * fz) / det
        db = -(xa * fz - za * fx) / det
        # keep the iterate inside the label half-space and step-limited
        da = max(-2.0 * math.pi / k, min(2.0 * math.pi / k, da))
        db = max(-2.0, min(2.0, db))
        a += da
        b = min(b + db, b0)
        if abs(fx) <= epsx and abs(fz) <= epsz:
            # the step just applied was the polishing step
            return ParticleLabel(a, b)
    return _invert_map_bisect(params, t, x, z, tol)


def _invert_map_bisect(params, t, x, z, tol):
    """Bisection in b combined with the horizontal inversion; always resolves."""
    k, b0 = params.k, params.b0

    def depth_residual(b):
        a = invert_x(params, t, x, b, tol=tol)
        _, zz = position(params, t, a, b)
        return float(zz) - z

    hi = b0
    f_hi = depth_residual(hi)
    if f_hi <= 0.0:
        if f_hi == 0.0 and z == b0:
            # deep-surface corner; treat as the boundary label
            return ParticleLabel(invert_x(params, t, x, b0, tol=tol), b0)
        raise OutOfDomainError(f"point (x, z) = ({x}, {z}) is on or above the surface")
    lo = min(z - 1.0 / k, b0 - 1.0 / k)
    f_lo = depth_residual(lo)
    guard = 0
    while f_lo > 0.0:
        lo -= 2.0 / k
        f_lo = depth_residual(lo)
        guard += 1
        if guard > 60:
            raise ConvergenceError("failed to bracket the depth label", best=lo)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        f_mid = depth_residual(mid)
        if f_mid > 0.0:
            hi = mid
        else:
            lo = mid
    b = 0.5 * (lo + hi)
    return ParticleLabel(invert_x(params, t, x, b, tol=tol), b)


def surface_profile(params: WaveParameters, t: float, x):
    """Free-surface elevation eta(t, x); scalar or 1-D array of x.

    The profile travels rigidly, eta(t, x) = eta(0, x - c*t), is periodic
    with wavelength 2*pi/k, and its shape depends only on k and b0.
    """
    if np.ndim(x) == 0:
        return _eta_scalar(params, t, float(x))
    return np.array([_eta_scalar(params, t, float(xi)) for xi in np.asarray(x)])


def _eta_scalar(params, t, x):
    a = invert_x(params, t, x, params.b0)
    _, z = position(params, t, a, params.b0)
    return float(z)


def surface_from_labels(params: WaveParameters, t, a):
    """Exact surface points (X, eta) sampled in label space.

    Preferred over root finding when b0 = 0, where the crests are cusps:
    the cusp abscissas are exactly representable through the labels.
    """
    return position(params, t, np.asarray(a), params.b0)


def sample_trajectory(
    params: WaveParameters,
    a: float,
    b: float,
    t0: float,
    t1: float,
    n: int,
) -> list[tuple[float, KinematicState]]:
    """Uniformly sampled path of one particle: n states on [t0, t1]."""
    if n < 2:
        raise DomainError(f"need at least 2 samples, got {n}")
    if not t1 > t0:
        raise DomainError(f"need t1 > t0, got [{t0}, {t1}]")
    ts = np.linspace(t0, t1, n)
    x, z = position(params, ts, a, b)
    u, w = velocity(params, ts, a, b)
    ax, az = acceleration(params, ts, a, b)
    return [
        (
            float(ts[i]),
            KinematicState(
                float(x[i]), float(z[i]), float(u[i]), float(w[i]),
                float(ax[i]), float(az[i]),
            ),
        )
        for i in range(n)
    ]
