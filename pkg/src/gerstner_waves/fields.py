"""Pressure, vorticity, Eulerian fields, and independent residual verification.

The pressure depends on position only through the depth label,

    P(b) = rho*m*(k*m + 2*omega)/(2*k) * (e**(2*k*b) - e**(2*k*b0))
         + (2*omega*rho*U - rho*g) * (b - b0) + P0,

and the scalar vorticity is gamma(b) = -2*k*m*e**(2*k*b) / (1 - e**(2*k*b)).

The verification machinery reconstructs (u, w, P) at Eulerian points by
inverting the flow map and then checks the momentum equations (with the
Coriolis terms 2*omega*w and -2*omega*u), the divergence, the two boundary
conditions, and the far-field behaviour by finite differencing.  The
differenced fields are evaluated through the inversion route on purpose:
the residual check must not reuse the closed-form identities it verifies.
"""

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import ConvergenceError, DomainError, SingularityError
from .kinematics import (
    acceleration,
    invert_map,
    jacobian,
    orbital_velocity,
    surface_profile,
    velocity,
)
from .params import WaveParameters


@dataclass(frozen=True)
class EulerianSample:
    """Velocity and pressure at a fixed spatial point below the surface."""

    x: float
    z: float
    u: float
    w: float
    p: float


class BoundaryResiduals(NamedTuple):
    dynamic: float    # max |P - P0| on the surface
    kinematic: float  # max |w - (u - c)*eta_x| on the surface
    n_cusp_excluded: int


@dataclass(frozen=True)
class ResidualReport:
    """Named residual maxima of the governing system plus grid metadata."""

    momentum_x: float
    momentum_z: float
    divergence: float
    dynamic_bc: float
    kinematic_bc: float
    farfield: float
    h: float
    t: float
    x_min: float
    x_max: float
    nx: int
    z_min: float
    z_max: float
    nz: int
    n_interior: int
    n_skipped: int
    n_failed: int
    n_surface: int
    n_cusp_excluded: int
    farfield_depth: float
    n_farfield: int
    params: WaveParameters

    def as_dict(self) -> dict:
        return {
            "momentum_x": self.momentum_x,
            "momentum_z": self.momentum_z,
            "divergence": self.divergence,
            "dynamic_bc": self.dynamic_bc,
            "kinematic_bc": self.kinematic_bc,
            "farfield": self.farfield,
            "h": self.h,
            "t": self.t,
            "grid": {
                "x_min": self.x_min,
                "x_max": self.x_max,
                "nx": self.nx,
                "z_min": self.z_min,
                "z_max": self.z_max,
                "nz": self.nz,
            },
            "counts": {
                "interior": self.n_interior,
                "skipped": self.n_skipped,
                "failed": self.n_failed,
                "surface": self.n_surface,
                "cusp_excluded": self.n_cusp_excluded,
                "farfield": self.n_farfield,
            },
            "farfield_depth": self.farfield_depth,
            "params": self.params.as_dict(),
        }


def _check_depth(params, b) -> None:
    if np.any(np.asarray(b) > params.b0):
        raise DomainError(f"label depth must satisfy b <= b0 = {params.b0}")


def pressure_excess(params: WaveParameters, b):
    """P(b) - P0; zero exactly at the surface label b0."""
    _check_depth(params, b)
    k, m, w = params.k, params.m, params.omega
    rho = params.rho
    b = np.asarray(b)
    depth_term = (2.0 * w * rho * params.U - params.g * rho) * (b - params.b0)
    orbital_term = (
        rho * m * (k * m + 2.0 * w) / (2.0 * k)
        * (np.exp(2.0 * k * b) - math.exp(2.0 * k * params.b0))
    )
    return orbital_term + depth_term


def pressure(params: WaveParameters, b):
    """Pressure at depth label b."""
    return params.p0 + pressure_excess(params, b)


def pressure_depth_gradient(params: WaveParameters, b):
    """dP/db = rho*m*(k*m + 2*omega)*e**(2*k*b) + 2*omega*rho*U - rho*g."""
    _check_depth(params, b)
    k, m, w = params.k, params.m, params.omega
    rho = params.rho
    return (
        rho * m * (k * m + 2.0 * w) * np.exp(2.0 * k * np.asarray(b))
        + 2.0 * w * rho * params.U
        - params.g * rho
    )


def vorticity(params: WaveParameters, b: float) -> float:
    """Scalar vorticity u_Z - w_X at depth label b.

    Identically zero when m = 0 (the flow is a uniform stream).  For m != 0
    the formula diverges at b = 0, which is reported as an error rather
    than silently overflowing.
    """
    _check_depth(params, b)
    if params.m == 0.0:
        return 0.0
    if b == 0.0:
        raise SingularityError("vorticity diverges at the label depth b = 0")
    e2 = math.exp(2.0 * params.k * b)
    return -2.0 * params.k * params.m * e2 / (1.0 - e2)


def eulerian_state(params: WaveParameters, t: float, x: float, z: float) -> EulerianSample:
    """Velocity and pressure at an interior Eulerian point.

    Composes the inverse flow map with the label-space velocity and
    pressure; inherits the traveling-wave identity
    (u, w, p)(t, x, z) = (u, w, p)(0, x - c*t, z).
    """
    label = invert_map(params, t, x, z)
    u, w = velocity(params, t, label.a, label.b)
    return EulerianSample(x, z, float(u), float(w), float(pressure(params, label.b)))


def _orbital_sample(params, t, x, z):
    """(u - U, w, P - P0) at an Eulerian point.

    The background constants U and P0 are removed before any differencing:
    they carry no derivative information but would dominate the floating
    point error of the stencils when the current is strong.
    """
    label = invert_map(params, t, x, z)
    pu, pw = orbital_velocity(params, t, label.a, label.b)
    return float(pu), float(pw), float(pressure_excess(params, label.b))


def euler_residual(params: WaveParameters, t: float, x: float, z: float, h: float):
    """Pointwise residuals (momentum_x, momentum_z, divergence).

    All derivatives are centered differences of the reconstructed Eulerian
    fields with step h.  The time derivative is differenced along the
    direction (dt, dx) = (h, c*h) and combined with the advective split
    u_t + u*u_x = D_c u + (u - c)*u_x, which is an algebraic identity for
    any field; stepping time along that direction keeps the truncation
    error bounded when |c| is large (geophysical waves can have |c| of
    order 1e4 m/s).  Requires clearance z <= eta - 2*h.
    """
    if not h > 0.0:
        raise DomainError(f"differencing step h must be positive, got {h}")
    eta = surface_profile(params, t, x)
    if not z <= eta - 2.0 * h:
        raise DomainError(
            f"insufficient surface clearance at (x, z) = ({x}, {z}): "
            f"need z <= {eta - 2.0 * h}"
        )
    c, rho, g = params.c, params.rho, params.g
    two_omega = 2.0 * params.omega

    pu0, pw0, _ = _orbital_sample(params, t, x, z)
    u0 = params.U + pu0
    w0 = pw0

    pu_xp, pw_xp, pe_xp = _orbital_sample(params, t, x + h, z)
    pu_xm, pw_xm, pe_xm = _orbital_sample(params, t, x - h, z)
    u_x = (pu_xp - pu_xm) / (2.0 * h)
    w_x = (pw_xp - pw_xm) / (2.0 * h)
    p_x = (pe_xp - pe_xm) / (2.0 * h)

    pu_zp, pw_zp, pe_zp = _orbital_sample(params, t, x, z + h)
    pu_zm, pw_zm, pe_zm = _orbital_sample(params, t, x, z - h)
    u_z = (pu_zp - pu_zm) / (2.0 * h)
    w_z = (pw_zp - pw_zm) / (2.0 * h)
    p_z = (pe_zp - pe_zm) / (2.0 * h)

    pu_tp, pw_tp, _ = _orbital_sample(params, t + h, x + c * h, z)
    pu_tm, pw_tm, _ = _orbital_sample(params, t - h, x - c * h, z)
    dc_u = (pu_tp - pu_tm) / (2.0 * h)
    dc_w = (pw_tp - pw_tm) / (2.0 * h)

    r_momx = dc_u + (u0 - c) * u_x + w0 * u_z + two_omega * w0 + p_x / rho
    r_momz = dc_w + (u0 - c) * w_x + w0 * w_z - two_omega * u0 + p_z / rho + g
    r_div = u_x + w_z
    return abs(r_momx), abs(r_momz), abs(r_div)


def boundary_residuals(
    params: WaveParameters,
    t: float,
    a_samples,
    min_crest_slope: float = 0.05,
) -> BoundaryResiduals:
    """Maximum boundary-condition residuals over the given surface labels.

    dynamic:   |P(b0) - P0|, identically zero by construction.
    kinematic: |w - (u - c)*eta_x| with the surface slope evaluated in label
               space as eta_x = Z_a / X_a.  When b0 = 0 the crest labels are
               cusps with X_a = 0; labels with X_a below ``min_crest_slope``
               are excluded from the slope evaluation and counted.
    """
    a = np.asarray(a_samples, dtype=float)
    b0 = params.b0
    r_dyn = float(np.max(np.abs(pressure_excess(params, np.full_like(a, b0)))))
    jac = jacobian(params, t, a, np.full_like(a, b0))
    ok = np.asarray(jac.xa) >= min_crest_slope
    n_excluded = int(a.size - np.count_nonzero(ok))
    if not np.any(ok):
        raise DomainError("every supplied surface label is a cusp")
    pu, pw = orbital_velocity(params, t, a[ok], np.full(int(np.count_nonzero(ok)), b0))
    eta_x = np.asarray(jac.za)[ok] / np.asarray(jac.xa)[ok]
    # u - c = (u - U) - m, formed without the large-constant cancellation
    r_kin = float(np.max(np.abs(pw - (pu - params.m) * eta_x)))
    return BoundaryResiduals(r_dyn, r_kin, n_excluded)


def lagrangian_pressure_check(params: WaveParameters, t: float, a: float, b: float):
    """Residuals of the label-space momentum balance.

    r_pa = |rho*(X_tt + 2*omega*Z_t)*X_a + rho*(Z_tt - 2*omega*X_t + g)*Z_a|
    (the pressure has no a-dependence, so this must vanish), and r_pb is the
    same combination in b against the analytic dP/db.  Both are zero
    exactly when the regime's dispersion relation holds, so a perturbed
    parameter set is detected.
    """
    _check_depth(params, b)
    rho, g = params.rho, params.g
    two_omega = 2.0 * params.omega
    u, w = velocity(params, t, a, b)
    ax, az = acceleration(params, t, a, b)
    jac = jacobian(params, t, a, b)
    fx = float(ax) + two_omega * float(w)
    fz = float(az) - two_omega * float(u) + g
    rhs_a = -rho * fx * float(jac.xa) - rho * fz * float(jac.za)
    rhs_b = -rho * fx * float(jac.xb) - rho * fz * float(jac.zb)
    r_pa = abs(rhs_a)
    r_pb = abs(float(pressure_depth_gradient(params, b)) - rhs_b)
    return r_pa, r_pb


def farfield_residual(params: WaveParameters, depth: float, t_samples, a_samples) -> float:
    """max(|u - U|, |w|) over a (t, a) grid at a fixed deep label.

    Bounded by |m|*e**(k*depth), which decays to zero with depth: the flow
    approaches the uniform current (U, 0).
    """
    _check_depth(params, depth)
    tt, aa = np.meshgrid(np.asarray(t_samples), np.asarray(a_samples), indexing="ij")
    pu, pw = orbital_velocity(params, tt, aa, np.full_like(aa, depth))
    return float(max(np.max(np.abs(pu)), np.max(np.abs(pw))))


def residual_report(
    params: WaveParameters,
    t: float = 0.0,
    x_min: float = 0.0,
    x_max: float | None = None,
    nx: int = 12,
    z_min: float = -3.0,
    z_max: float = -1.5,
    nz: int = 8,
    h: float = 1e-3,
    n_surface: int = 256,
    farfield_depth: float = -10.0,
    n_farfield: int = 16,
) -> ResidualReport:
    """Sweep a grid and aggregate every residual of the governing system.

    Interior grid points without the 2*h surface clearance are skipped and
    counted; points where the inversion fails are counted as failed.  The
    aggregation is a plain commutative max, so evaluation order is free.
    """
    if x_max is None:
        x_max = x_min + params.wavelength
    xs = np.linspace(x_min, x_max, nx)
    zs = np.linspace(z_min, z_max, nz)
    r_momx = r_momz = r_div = 0.0
    n_interior = n_skipped = n_failed = 0
    for xi in xs:
        eta = surface_profile(params, t, float(xi))
        for zi in zs:
            if not zi <= eta - 2.0 * h:
                n_skipped += 1
                continue
            try:
                rx, rz, rd = euler_residual(params, t, float(xi), float(zi), h)
            except ConvergenceError:
                n_failed += 1
                continue
            r_momx = max(r_momx, rx)
            r_momz = max(r_momz, rz)
            r_div = max(r_div, rd)
            n_interior += 1

    a_surface = np.linspace(0.0, params.wavelength, n_surface, endpoint=False)
    bres = boundary_residuals(params, t, a_surface)

    t_far = np.linspace(t, t + 1.0, 4)
    a_far = np.linspace(0.0, params.wavelength, n_farfield, endpoint=False)
    r_far = farfield_residual(params, farfield_depth, t_far, a_far)

    return ResidualReport(
        momentum_x=r_momx,
        momentum_z=r_momz,
        divergence=r_div,
        dynamic_bc=bres.dynamic,
        kinematic_bc=bres.kinematic,
        farfield=r_far,
        h=h,
        t=t,
        x_min=float(x_min),
        x_max=float(x_max),
        nx=nx,
        z_min=float(z_min),
        z_max=float(z_max),
        nz=nz,
        n_interior=n_interior,
        n_skipped=n_skipped,
        n_failed=n_failed,
        n_surface=n_surface,
        n_cusp_excluded=bres.n_cusp_excluded,
        farfield_depth=farfield_depth,
        n_farfield=n_farfield,
        params=params,
    )


def richardson_orders(h_values, residuals) -> list[float]:
    """Observed convergence orders log(r_i/r_{i+1}) / log(h_i/h_{i+1})."""
    orders = []
    for i in range(len(h_values) - 1):
        if residuals[i + 1] == 0.0 or residuals[i] == 0.0:
            orders.append(math.inf)
            continue
        orders.append(
            math.log(residuals[i] / residuals[i + 1])
            / math.log(h_values[i] / h_values[i + 1])
        )
    return orders
