"""Parameter sets for trochoidal deep-water waves over a uniform current.

Two regimes are supported.  In the classical regime the background rotation
vanishes (omega = 0), the orbital parameter is pinned by m**2 = g/k and the
wave speed c = U + m is free.  In the geophysical regime (omega > 0) the
parameter m is free and the wave speed is pinned by

    c = (g - k*m**2) / (2*omega),

which also bounds the eastward speed by g/(2*omega) and, through the
quadratic k*m**2 + 2*omega*m + (2*omega*U - g) = 0, bounds the admissible
current by U <= (omega**2 + k*g) / (2*k*omega).

All containers are frozen and every function is pure, so the module is safe
for unrestricted concurrent use.
"""

import math
import sys
from dataclasses import dataclass
from enum import Enum

from .errors import DomainError, NoSolutionError, RegimeMismatchError

#: Rotational speed of the Earth round the polar axis, rad/s.
EARTH_ROTATION_RATE = 7.3e-5
#: Gravitational acceleration at the surface, m/s^2.
STANDARD_GRAVITY = 9.8
#: Density of water, kg/m^3.
WATER_DENSITY = 1000.0
#: Atmospheric pressure, Pa.
ATMOSPHERIC_PRESSURE = 101325.0


class Regime(Enum):
    CLASSICAL = "classical"
    GEOPHYSICAL = "geophysical"


@dataclass(frozen=True)
class PhysicalConstants:
    """Environment constants, SI units throughout."""

    omega: float = EARTH_ROTATION_RATE  # rad/s, >= 0
    g: float = STANDARD_GRAVITY         # m/s^2, > 0
    rho: float = WATER_DENSITY          # kg/m^3, > 0
    p0: float = ATMOSPHERIC_PRESSURE    # Pa


@dataclass(frozen=True)
class WaveParameters:
    """A fully resolved constant set; the single source of truth for all formulas.

    The stored values satisfy U = c - m and the regime's dispersion relation
    k*m**2 + 2*omega*c = g up to roundoff; use :func:`validate` to check a
    hand-built instance.
    """

    constants: PhysicalConstants
    k: float      # wave number, 1/m, > 0
    b0: float     # surface label, m, <= 0
    m: float      # orbital parameter, m/s
    c: float      # wave speed, m/s
    U: float      # uniform current, m/s (U = c - m)
    regime: Regime

    @property
    def omega(self) -> float:
        return self.constants.omega

    @property
    def g(self) -> float:
        return self.constants.g

    @property
    def rho(self) -> float:
        return self.constants.rho

    @property
    def p0(self) -> float:
        return self.constants.p0

    @property
    def wavelength(self) -> float:
        return 2.0 * math.pi / self.k

    def as_dict(self) -> dict:
        """Flat mapping used by reports and the command line echo."""
        return {
            "regime": self.regime.value,
            "omega": self.omega,
            "g": self.g,
            "rho": self.rho,
            "p0": self.p0,
            "k": self.k,
            "b0": self.b0,
            "m": self.m,
            "c": self.c,
            "U": self.U,
        }


@dataclass(frozen=True)
class RegimeConstants:
    """Threshold values of the orbital parameter m for omega >= 0.

    m1 and m2 are the zero-current roots of k*m**2 + 2*omega*m - g = 0;
    m3 and m4 are the roots of k*m**2 + 4*omega*m - g = 0, where the
    critical depth of the trochoid classification crosses the surface.
    For omega > 0 the ordering is m3 < m1 < 0 < m4 < m2.
    """

    m1: float
    m2: float
    m3: float
    m4: float


def _require_positive_k(k: float) -> None:
    if not k > 0.0:
        raise DomainError(f"wave number k must be positive, got {k}")


def _require_surface_label(b0: float) -> None:
    if not b0 <= 0.0:
        raise DomainError(f"surface label b0 must be <= 0, got {b0}")


def regime_constants(constants: PhysicalConstants, k: float) -> RegimeConstants:
    """Closed-form threshold constants m1, m2, m3, m4 for the given k."""
    _require_positive_k(k)
    g, w = constants.g, constants.omega
    s1 = math.sqrt(w * w + g * k)
    s2 = math.sqrt(4.0 * w * w + g * k)
    if w == 0.0:
        # the pairs collapse to +-sqrt(g/k)
        return RegimeConstants(m1=-s1 / k, m2=s1 / k, m3=-s2 / k, m4=s2 / k)
    # positive roots in rationalized form: no cancellation for any omega
    return RegimeConstants(
        m1=-(w + s1) / k,
        m2=g / (s1 + w),
        m3=-(2.0 * w + s2) / k,
        m4=g / (s2 + 2.0 * w),
    )


def max_geophysical_current(constants: PhysicalConstants, k: float) -> float:
    """Largest current for which geophysical parameters exist: (omega**2 + k*g)/(2*k*omega)."""
    _require_positive_k(k)
    w = constants.omega
    if not w > 0.0:
        raise RegimeMismatchError("the current bound requires omega > 0")
    return (w * w + k * constants.g) / (2.0 * k * w)


def resolve_classical(
    constants: PhysicalConstants,
    k: float,
    sign_m: int,
    U: float,
    b0: float = 0.0,
) -> WaveParameters:
    """Build classical (omega = 0) parameters from the current and the sign of m.

    m = sign_m * sqrt(g/k) and c = U + m; the wave speed itself is
    unconstrained in this regime.
    """
    if constants.omega != 0.0:
        raise RegimeMismatchError(
            f"classical parameters require omega = 0, got {constants.omega}"
        )
    _require_positive_k(k)
    _require_surface_label(b0)
    if sign_m not in (1, -1):
        raise DomainError(f"sign_m must be +1 or -1, got {sign_m!r}")
    m = sign_m * math.sqrt(constants.g / k)
    return WaveParameters(constants, k, b0, m, U + m, U, Regime.CLASSICAL)


def resolve_geophysical_from_m(
    constants: PhysicalConstants,
    k: float,
    m: float,
    b0: float = 0.0,
) -> WaveParameters:
    """Build geophysical (omega > 0) parameters from the free parameter m.

    The current is evaluated in the factored form
    U = -k*(m - m1)*(m - m2)/(2*omega), which is algebraically identical to
    (g - k*m**2 - 2*omega*m)/(2*omega) but returns an exact zero at the
    zero-current roots and avoids the catastrophic cancellation the direct
    form suffers when omega is small.
    """
    w = constants.omega
    if not w > 0.0:
        raise RegimeMismatchError(f"geophysical parameters require omega > 0, got {w}")
    _require_positive_k(k)
    _require_surface_label(b0)
    if m == 0.0:
        c = constants.g / (2.0 * w)
        return WaveParameters(constants, k, b0, 0.0, c, c, Regime.GEOPHYSICAL)
    rc = regime_constants(constants, k)
    U = -k * (m - rc.m1) * (m - rc.m2) / (2.0 * w) + 0.0  # +0.0 normalizes -0.0
    return WaveParameters(constants, k, b0, m, m + U, U, Regime.GEOPHYSICAL)


def resolve_geophysical_from_current(
    constants: PhysicalConstants,
    k: float,
    U: float,
    branch: str,
    b0: float = 0.0,
) -> WaveParameters:
    """Build geophysical parameters from the current, selecting a quadratic root.

    m solves k*m**2 + 2*omega*m + (2*omega*U - g) = 0; ``branch`` picks the
    smaller ("lower") or larger ("upper") root.  A negative discriminant
    means the current exceeds the admissible bound and no solution exists;
    equality is accepted and yields the double root m = -omega/k.
    """
    w = constants.omega
    if not w > 0.0:
        raise RegimeMismatchError(f"geophysical parameters require omega > 0, got {w}")
    _require_positive_k(k)
    _require_surface_label(b0)
    if branch not in ("lower", "upper"):
        raise DomainError(f"branch must be 'lower' or 'upper', got {branch!r}")
    if U == 0.0:
        rc = regime_constants(constants, k)
        lower, upper = rc.m1, rc.m2
    else:
        disc = w * w + k * (constants.g - 2.0 * w * U)
        # a current exactly at the bound computes a discriminant a few ulps
        # either side of zero; below roundoff scale the sign is meaningless,
        # so such values collapse to the accepted double root
        tiny = 8.0 * sys.float_info.epsilon * (
            w * w + k * (abs(constants.g) + 2.0 * w * abs(U))
        )
        if disc < -tiny:
            raise NoSolutionError(
                f"current U = {U} exceeds the admissible bound "
                f"{max_geophysical_current(constants, k)}"
            )
        s = math.sqrt(disc) if disc > tiny else 0.0
        if s == 0.0:
            lower = upper = -w / k
        else:
            # stable root pair: the well-conditioned root plus the product identity
            lower = -(w + s) / k
            num = 2.0 * w * U - constants.g
            upper = 0.0 if num == 0.0 else num / (k * lower)
    m = lower if branch == "lower" else upper
    return WaveParameters(constants, k, b0, m, m + U, U, Regime.GEOPHYSICAL)


def validate(params: WaveParameters, rtol: float = 1e-9) -> list[str]:
    """Check every invariant of a parameter set; violations are returned, not raised.

    The returned list is empty exactly when the set is consistent.  Each
    entry starts with a stable short code so callers can match on it.
    """
    issues: list[str] = []
    cst = params.constants
    if not cst.omega >= 0.0:
        issues.append(f"constants: omega must be >= 0, got {cst.omega}")
    if not cst.g > 0.0:
        issues.append(f"constants: g must be > 0, got {cst.g}")
    if not cst.rho > 0.0:
        issues.append(f"constants: rho must be > 0, got {cst.rho}")
    for name in ("k", "b0", "m", "c", "U"):
        if not math.isfinite(getattr(params, name)):
            issues.append(f"finite: {name} must be finite")
    if issues:
        return issues

    if not params.k > 0.0:
        issues.append(f"k-positive: wave number must be > 0, got {params.k}")
    if not params.b0 <= 0.0:
        issues.append(f"b0-sign: surface label must be <= 0, got {params.b0}")

    scale_u = max(1.0, abs(params.c), abs(params.m), abs(params.U))
    if abs(params.c - params.m - params.U) > rtol * scale_u:
        issues.append(
            f"current-identity: U must equal c - m "
            f"(U = {params.U}, c - m = {params.c - params.m})"
        )

    if params.regime is Regime.CLASSICAL and cst.omega != 0.0:
        issues.append(f"regime-omega: classical regime requires omega = 0, got {cst.omega}")
    if params.regime is Regime.GEOPHYSICAL and not cst.omega > 0.0:
        issues.append(f"regime-omega: geophysical regime requires omega > 0, got {cst.omega}")

    km2 = params.k * params.m * params.m
    twc = 2.0 * cst.omega * params.c
    scale_d = max(cst.g, abs(km2), abs(twc))
    if abs(km2 + twc - cst.g) > rtol * scale_d:
        issues.append(
            "dispersion: k*m**2 + 2*omega*c must equal g "
            f"(residual = {km2 + twc - cst.g})"
        )

    if params.regime is Regime.GEOPHYSICAL and cst.omega > 0.0:
        bound = cst.g / (2.0 * cst.omega)
        if params.c > bound * (1.0 + rtol):
            issues.append(
                f"speed-limit: eastward wave speed c = {params.c} exceeds "
                f"g/(2*omega) = {bound}"
            )

    return issues
